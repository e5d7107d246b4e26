#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "decolens/decoherence.hpp"

namespace decolens {

enum class Preset {
    Fig1Free,
    Fig2Tracks,
    Fig34DoublePacket,
    Fig5Barrier,
    Fig6PhaseModes,
    Fig7Centered,
    TwoParticleZeno,
    TwoParticleLensing,
    Custom,
};

enum class OutputFormat { Csv, Json };

// Physical parameters of a single-particle experiment. Presets fill these
// with their defaults; config keys override individual fields.
struct PhysicalParams {
    int n = 750;
    double dx = 0.02;
    double x_min = 0.0;
    double tau = 0.0;       // 0 -> dx^2/2
    double k0 = 2.5 * 3.14159265358979323846;
    double sigma = 1.5;
    double x_ini = 7.5;
    double kappa0 = 0.0;    // 0 -> k0/30
    double gamma = 0.0;
    double t_c = 0.0;       // 0 -> 2 tau
    PhaseMode phase_mode = PhaseMode::localizing();
    double beta = 0.5;           // double-packet amplitude split
    double d_sep = 8.0;          // double-packet separation
    double barrier_height = 0.0; // 0 -> k0^2
    double barrier_width = 0.1;
    double theta_collapse = 0.95;
    double duration = 0.4;
};

struct ExperimentConfig {
    Preset preset = Preset::Custom;
    std::uint64_t seed = 1;
    int runs = 1;
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::Csv;
    int max_threads = 0;  // 0 = hardware concurrency; results identical
    PhysicalParams params;
    // keys explicitly set in the config file / CLI, in file order
    std::map<std::string, std::string> overrides;
};

const char* preset_name(Preset p);
std::optional<Preset> preset_from_name(const std::string& name);

// Line-oriented "key = value" parser. '#' starts a comment; blank lines are
// skipped. Unknown keys raise ConfigError with the key and line number.
ExperimentConfig parse_config(const std::string& text);

// Applies preset defaults to cfg.params for every field the config did not
// override explicitly.
void apply_preset_defaults(ExperimentConfig& cfg);

}  // namespace decolens
