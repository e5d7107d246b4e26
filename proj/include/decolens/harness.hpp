#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "decolens/config.hpp"

namespace decolens {

struct ArtifactManifest {
    struct Entry {
        std::string file;  // relative to out_dir
        std::string hash;
    };
    std::vector<Entry> entries;
    std::filesystem::path out_dir;
};

// Executes the configured preset: runs the ensemble (parallel over runs,
// deterministic per-run streams), writes observable series, densities,
// event logs and aggregates, and finishes with manifest.json listing every
// file with its content hash.
ArtifactManifest run_experiment(const ExperimentConfig& cfg);

// Human-readable preset list with parameter blocks (the `presets` CLI
// subcommand).
std::string describe_presets();

}  // namespace decolens
