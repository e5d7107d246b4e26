#include "decolens/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace decolens {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

double parse_num(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size())
            throw ConfigError("bad numeric value for " + key, key, line);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("bad numeric value for " + key, key, line);
    }
}

long parse_int(const std::string& v, const std::string& key, int line) {
    try {
        std::size_t pos = 0;
        const long x = std::stol(v, &pos);
        if (pos != v.size())
            throw ConfigError("bad integer value for " + key, key, line);
        return x;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        throw ConfigError("bad integer value for " + key, key, line);
    }
}

PhaseMode parse_phase_mode(const std::string& v, int line) {
    const std::string m = lower(v);
    if (m == "localizing") return PhaseMode::localizing();
    if (m == "delocalizing") return PhaseMode::delocalizing();
    if (m == "neutral") return PhaseMode::neutral();
    if (m.rfind("fixed:", 0) == 0)
        return PhaseMode::fixed(parse_num(m.substr(6), "phase_mode", line));
    throw ConfigError("unknown phase_mode " + v, "phase_mode", line);
}

}  // namespace

const char* preset_name(Preset p) {
    switch (p) {
        case Preset::Fig1Free: return "fig1_free";
        case Preset::Fig2Tracks: return "fig2_tracks";
        case Preset::Fig34DoublePacket: return "fig34_double_packet";
        case Preset::Fig5Barrier: return "fig5_barrier";
        case Preset::Fig6PhaseModes: return "fig6_phase_modes";
        case Preset::Fig7Centered: return "fig7_centered";
        case Preset::TwoParticleZeno: return "two_particle_zeno";
        case Preset::TwoParticleLensing: return "two_particle_lensing";
        case Preset::Custom: return "custom";
    }
    return "custom";
}

std::optional<Preset> preset_from_name(const std::string& name) {
    const std::string m = lower(name);
    if (m == "fig1" || m == "fig1_free") return Preset::Fig1Free;
    if (m == "fig2" || m == "fig2_tracks") return Preset::Fig2Tracks;
    if (m == "fig3" || m == "fig4" || m == "fig34" ||
        m == "fig34_double_packet")
        return Preset::Fig34DoublePacket;
    if (m == "fig5" || m == "fig5_barrier") return Preset::Fig5Barrier;
    if (m == "fig6" || m == "fig6_phase_modes") return Preset::Fig6PhaseModes;
    if (m == "fig7" || m == "fig7_centered") return Preset::Fig7Centered;
    if (m == "two_particle_zeno" || m == "zeno") return Preset::TwoParticleZeno;
    if (m == "two_particle_lensing" || m == "lensing")
        return Preset::TwoParticleLensing;
    if (m == "custom") return Preset::Custom;
    return std::nullopt;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string s = raw;
        if (auto h = s.find('#'); h != std::string::npos) s.resize(h);
        s = trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", trim(s), lineno);
        const std::string key = lower(trim(s.substr(0, eq)));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ConfigError("expected key = value", key, lineno);

        auto& p = cfg.params;
        if (key == "preset") {
            const auto pr = preset_from_name(val);
            if (!pr) throw ConfigError("unknown preset " + val, key, lineno);
            cfg.preset = *pr;
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parse_int(val, key, lineno));
        } else if (key == "runs") {
            const long r = parse_int(val, key, lineno);
            if (r < 1) throw ConfigError("runs must be >= 1", key, lineno);
            cfg.runs = static_cast<int>(r);
        } else if (key == "out_dir") {
            cfg.out_dir = val;
        } else if (key == "format") {
            const std::string f = lower(val);
            if (f == "csv") cfg.format = OutputFormat::Csv;
            else if (f == "json") cfg.format = OutputFormat::Json;
            else throw ConfigError("format must be csv or json", key, lineno);
        } else if (key == "n") {
            p.n = static_cast<int>(parse_int(val, key, lineno));
        } else if (key == "dx") {
            p.dx = parse_num(val, key, lineno);
        } else if (key == "tau") {
            p.tau = parse_num(val, key, lineno);
        } else if (key == "k0") {
            p.k0 = parse_num(val, key, lineno);
        } else if (key == "sigma") {
            p.sigma = parse_num(val, key, lineno);
        } else if (key == "x_ini") {
            p.x_ini = parse_num(val, key, lineno);
        } else if (key == "kappa0") {
            p.kappa0 = parse_num(val, key, lineno);
        } else if (key == "gamma") {
            p.gamma = parse_num(val, key, lineno);
        } else if (key == "t_c") {
            p.t_c = parse_num(val, key, lineno);
        } else if (key == "phase_mode") {
            p.phase_mode = parse_phase_mode(val, lineno);
        } else if (key == "beta") {
            p.beta = parse_num(val, key, lineno);
        } else if (key == "d_sep") {
            p.d_sep = parse_num(val, key, lineno);
        } else if (key == "barrier_height") {
            p.barrier_height = parse_num(val, key, lineno);
        } else if (key == "barrier_width") {
            p.barrier_width = parse_num(val, key, lineno);
        } else if (key == "theta_collapse") {
            p.theta_collapse = parse_num(val, key, lineno);
        } else if (key == "duration") {
            p.duration = parse_num(val, key, lineno);
        } else {
            throw ConfigError("unknown key " + key, key, lineno);
        }
        cfg.overrides[key] = val;
    }
    apply_preset_defaults(cfg);
    return cfg;
}

void apply_preset_defaults(ExperimentConfig& cfg) {
    auto& p = cfg.params;
    const auto overridden = [&](const char* k) {
        return cfg.overrides.count(k) != 0;
    };
    const auto set_d = [&](const char* k, double& field, double v) {
        if (!overridden(k)) field = v;
    };
    const auto set_i = [&](const char* k, int& field, int v) {
        if (!overridden(k)) field = v;
    };

    // shared experiment block
    set_i("n", p.n, 750);
    set_d("dx", p.dx, 0.02);
    set_d("k0", p.k0, 2.5 * kPi);
    set_d("sigma", p.sigma, 1.5);
    set_d("x_ini", p.x_ini, 7.5);
    set_d("duration", p.duration, 0.4);
    if (!overridden("kappa0")) p.kappa0 = p.k0 / 30.0;
    if (!overridden("gamma")) p.gamma = p.kappa0 / 4.0;
    if (!overridden("phase_mode")) p.phase_mode = PhaseMode::localizing();

    switch (cfg.preset) {
        case Preset::Fig1Free:
        case Preset::Fig2Tracks:
        case Preset::Fig6PhaseModes:
        case Preset::Fig7Centered:
        case Preset::Custom:
            break;
        case Preset::Fig34DoublePacket:
            // near-orthogonal humps and the canonical amplitude; see docs
            set_i("n", p.n, 1400);
            set_d("x_ini", p.x_ini, 10.5);
            set_d("d_sep", p.d_sep, 8.0);
            set_d("beta", p.beta, 0.5);
            set_d("gamma", p.gamma, 0.5);
            break;
        case Preset::Fig5Barrier:
            set_i("n", p.n, 2250);
            set_d("duration", p.duration, 1.4);
            set_d("gamma", p.gamma, 0.5);
            if (!overridden("barrier_height")) p.barrier_height = p.k0 * p.k0;
            set_d("barrier_width", p.barrier_width, 0.1);
            break;
        case Preset::TwoParticleZeno:
        case Preset::TwoParticleLensing:
            break;
    }
    if (p.tau <= 0.0) p.tau = p.dx * p.dx / 2.0;
    if (p.t_c <= 0.0) p.t_c = 2.0 * p.tau;
    if (p.barrier_height <= 0.0) p.barrier_height = p.k0 * p.k0;
}

}  // namespace decolens
