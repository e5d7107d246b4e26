#include "decolens/decoherence.hpp"

#include <algorithm>
#include <cmath>

namespace decolens {

PhaseMode PhaseMode::fixed(double phi) {
    if (phi < 0.0 || phi >= 2.0 * M_PI)
        throw Error("PhaseMode::fixed: phi must lie in [0, 2 pi)");
    return {Kind::Fixed, phi};
}

void DecoherenceParams::validate(double tau) const {
    if (!(t_c >= tau)) throw Error("DecoherenceParams: t_c must be >= tau");
    if (!(kappa0 > 0.0)) throw Error("DecoherenceParams: kappa0 must be > 0");
    if (gamma < 0.0) throw Error("DecoherenceParams: gamma must be >= 0");
}

double sample_x0(const std::vector<double>& rho, const GridSpec& grid,
                 RandomStream& rng) {
    const double rho_max = *std::max_element(rho.begin(), rho.end());
    if (!(rho_max > 0.0)) throw SamplingStalled("sample_x0: empty density");
    const double x_lo = grid.x_min;
    const double x_hi = grid.x_max();
    for (long attempt = 0; attempt < 1000000; ++attempt) {
        const double xp = rng.uniform(x_lo, x_hi);
        const double pr = rng.uniform(0.0, rho_max);
        const double fi = (xp - x_lo) / grid.dx;
        int j = static_cast<int>(fi);
        if (j > grid.n - 2) j = grid.n - 2;
        const double fr = fi - j;
        const double rv = rho[j] * (1.0 - fr) + rho[j + 1] * fr;
        if (pr < rv) return xp;
    }
    throw SamplingStalled("sample_x0: 1e6 consecutive rejections");
}

std::pair<double, double> sample_kick(const DecoherenceParams& params,
                                      RandomStream& rng) {
    const double kappa = rng.uniform(-params.kappa0 / 2.0, params.kappa0 / 2.0);
    double phi = 0.0;
    switch (params.phase_mode.kind) {
        case PhaseMode::Kind::Localizing: phi = 0.0; break;
        case PhaseMode::Kind::Delocalizing: phi = M_PI; break;
        case PhaseMode::Kind::Neutral: phi = rng.uniform(0.0, 2.0 * M_PI); break;
        case PhaseMode::Kind::Fixed: phi = params.phase_mode.fixed_phi; break;
    }
    return {kappa, phi};
}

namespace {

// Applies the pointwise multiplier m(x) to a synchronous wavefunction and
// renormalizes.
template <typename MulFn>
void apply_multiplier(WaveFunction& psi, MulFn mul) {
    synchronize(psi);
    for (int i = 0; i < psi.n(); ++i) {
        const std::complex<double> v =
            mul(psi.grid.x(i)) * std::complex<double>(psi.re[i], psi.im[i]);
        psi.re[i] = v.real();
        psi.im[i] = v.imag();
    }
    const double n2 = norm(psi);
    if (n2 < 1e-12)
        throw ZeroResult("event operator annihilated the state");
    const double f = 1.0 / std::sqrt(n2);
    for (double& v : psi.re) v *= f;
    for (double& v : psi.im) v *= f;
}

}  // namespace

void apply_event_full(WaveFunction& psi, double kappa, double phi,
                      double gamma, double x0) {
    const std::complex<double> g = gamma * std::exp(std::complex<double>(0, phi));
    apply_multiplier(psi, [&](double x) {
        return 1.0 + g * std::exp(std::complex<double>(0, kappa * (x - x0)));
    });
}

void apply_event_linearized(WaveFunction& psi, double kappa, double phi,
                            double gamma, double x0) {
    const std::complex<double> g = gamma * std::exp(std::complex<double>(0, phi));
    const std::complex<double> c =
        std::complex<double>(0, 1) * g * kappa / (1.0 + g);
    apply_multiplier(psi, [&](double x) { return 1.0 + c * (x - x0); });
}

std::pair<double, double> equivalent_params(double gamma, double kappa,
                                            double phi) {
    if (!(gamma > 0.0)) throw DomainError("equivalent_params: gamma must be > 0");
    if (phi == 0.0) {
        return {0.5, 3.0 * gamma * kappa / (1.0 + gamma)};
    }
    if (phi == M_PI) {
        if (gamma >= 1.0)
            throw DomainError("equivalent_params: gamma >= 1 with phi = pi");
        return {0.5, gamma * kappa / (1.0 - gamma)};
    }
    throw DomainError("equivalent_params: phi must be 0 or pi");
}

RunResult run_decoherent(const WaveFunction& psi0, const Potential& v,
                         const StepParams& p, const DecoherenceParams& d,
                         double duration, RandomStream& rng,
                         const RunOptions& opts) {
    d.validate(p.tau);
    const long steps_per_interval =
        static_cast<long>(std::llround(d.t_c / p.tau));
    const long n_intervals =
        static_cast<long>(std::floor(duration / d.t_c + 1e-9));

    RunResult res;
    WaveFunction psi = psi0;

    auto record = [&](double t) {
        WaveFunction snap = psi;
        synchronize(snap);
        const auto rho = density(snap);
        const auto [mean, var] = moments(rho, psi.grid);
        res.times.push_back(t);
        res.mean_x.push_back(mean);
        res.var_x.push_back(var);
        res.max_pos.push_back(density_max_position(rho, psi.grid));
        res.max_edge_density =
            std::max({res.max_edge_density, rho[1], rho[psi.n() - 2]});
        if (opts.split_track) {
            double split =
                opts.split_track->first + opts.split_track->second * t;
            split = std::clamp(split, psi.grid.x_min, psi.grid.x_max());
            res.p_left.push_back(
                collapse_state(rho, psi.grid, split).p_left);
        }
    };
    auto snapshot = [&](double t) {
        WaveFunction snap = psi;
        synchronize(snap);
        res.snapshots.emplace_back(t, density(snap));
    };

    record(0.0);
    snapshot(0.0);
    std::size_t next_snap = 0;
    bool warned_recoil = false;

    bootstrap(psi, v, p);
    for (long j = 1; j <= n_intervals; ++j) {
        for (long s = 0; s < steps_per_interval; ++s) step(psi, v, p);
        const double t = static_cast<double>(j) * d.t_c;

        if (d.gamma > 0.0) {
            WaveFunction snap = psi;
            synchronize(snap);
            const auto rho = density(snap);
            if (d.form == EventForm::Linearized && !warned_recoil) {
                // small-transfer condition, instantaneous width
                const double sig = std::sqrt(moments(rho, psi.grid).second);
                if (sig * d.kappa0 >= M_PI / 4.0) {
                    res.warnings.push_back(
                        "linearized form outside the small-transfer regime "
                        "(sigma * kappa0 >= pi/4) at t = " + std::to_string(t));
                    warned_recoil = true;
                }
            }
            const double x0 = sample_x0(rho, psi.grid, rng);
            const auto [kappa, phi] = sample_kick(d, rng);
            psi = std::move(snap);
            if (d.form == EventForm::Full)
                apply_event_full(psi, kappa, phi, d.gamma, x0);
            else
                apply_event_linearized(psi, kappa, phi, d.gamma, x0);
            res.events.push_back({t, x0, kappa, phi});
            bootstrap(psi, v, p);
        }

        if (j % opts.record_stride == 0 || j == n_intervals) record(t);
        while (next_snap < opts.snapshot_times.size() &&
               opts.snapshot_times[next_snap] <= t + d.t_c * 0.5) {
            snapshot(t);
            ++next_snap;
        }
    }
    // trailing propagation when duration is not a multiple of t_c
    const double remainder = duration - static_cast<double>(n_intervals) * d.t_c;
    if (remainder > p.tau * 0.5) {
        const long extra = static_cast<long>(std::llround(remainder / p.tau));
        for (long s = 0; s < extra; ++s) step(psi, v, p);
        record(duration);
    }

    synchronize(psi);
    normalize(psi);
    snapshot(duration);
    if (res.max_edge_density > 1e-6)
        res.warnings.push_back("edge density reached " +
                               std::to_string(res.max_edge_density) +
                               " (wall contamination)");
    res.final_psi = std::move(psi);
    return res;
}

}  // namespace decolens
