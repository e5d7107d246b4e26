#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "decolens/harness.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw decolens::Error("cannot read config file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"decolens - decoherent wavepacket simulation harness"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "execute an experiment config");
    std::string config_path;
    run->add_option("--config", config_path, "config file (key = value lines)")
        ->required();
    std::int64_t seed = -1;
    run->add_option("--seed", seed, "override the RNG seed");
    int runs = 0;
    run->add_option("--runs", runs, "override the ensemble size");
    std::string out_dir;
    run->add_option("--out", out_dir, "override the output directory");
    std::string format;
    run->add_option("--format", format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    auto* presets =
        app.add_subcommand("presets", "list presets with their parameters");

    CLI11_PARSE(app, argc, argv);

    try {
        if (presets->parsed()) {
            std::cout << decolens::describe_presets();
            return 0;
        }
        auto cfg = decolens::parse_config(read_file(config_path));
        if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
        if (runs > 0) cfg.runs = runs;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (format == "csv") cfg.format = decolens::OutputFormat::Csv;
        if (format == "json") cfg.format = decolens::OutputFormat::Json;

        const auto manifest = decolens::run_experiment(cfg);
        std::cout << "wrote " << manifest.entries.size() + 1 << " files to "
                  << manifest.out_dir.string() << "\n";
        return 0;
    } catch (const decolens::ConfigError& e) {
        std::cerr << "config error (line " << e.line << "): " << e.what()
                  << "\n";
        return 2;
    } catch (const decolens::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
