#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "decolens/event_record.hpp"
#include "decolens/grid.hpp"
#include "decolens/observables.hpp"
#include "decolens/potential.hpp"
#include "decolens/propagator.hpp"
#include "decolens/rng.hpp"

namespace decolens {

// Relative phase of the scattered component at the event position.
struct PhaseMode {
    enum class Kind { Localizing, Delocalizing, Neutral, Fixed };
    Kind kind = Kind::Localizing;
    double fixed_phi = 0.0;  // only for Kind::Fixed, in [0, 2 pi)

    static PhaseMode localizing() { return {Kind::Localizing, 0.0}; }
    static PhaseMode delocalizing() { return {Kind::Delocalizing, 0.0}; }
    static PhaseMode neutral() { return {Kind::Neutral, 0.0}; }
    static PhaseMode fixed(double phi);
};

enum class EventForm { Full, Linearized };

struct DecoherenceParams {
    double t_c = 0.0;     // period between events, >= tau
    double kappa0 = 0.0;  // momentum transfers uniform on [-kappa0/2, kappa0/2]
    double gamma = 0.0;   // scattering amplitude, >= 0
    PhaseMode phase_mode;
    EventForm form = EventForm::Full;

    void validate(double tau) const;
};

// Rejection sampling from the density: uniform (x_p, p_r) pairs in the
// bounding box, accepting the first with p_r < rho(x_p) (rho linearly
// interpolated between nodes). Throws SamplingStalled after 1e6 rejections.
double sample_x0(const std::vector<double>& rho, const GridSpec& grid,
                 RandomStream& rng);

// kappa uniform on [-kappa0/2, kappa0/2]; phi per the phase mode.
std::pair<double, double> sample_kick(const DecoherenceParams& params,
                                      RandomStream& rng);

// psi <- (1 + gamma e^{i phi} e^{i kappa (x - x0)}) psi, then normalized.
// Throws ZeroResult if the result has vanishing norm (gamma = 1, phi = pi,
// kappa = 0).
void apply_event_full(WaveFunction& psi, double kappa, double phi,
                      double gamma, double x0);

// Recoil-free form: psi <- (1 + i g kappa / (1 + g) (x - x0)) psi with
// g = gamma e^{i phi}, then normalized.
void apply_event_linearized(WaveFunction& psi, double kappa, double phi,
                            double gamma, double x0);

// Parameter equivalence of the recoil-free family: maps (gamma, kappa) at
// phi in {0, pi} onto the canonical amplitude 1/2,
//   kappa_t = 3 gamma kappa / (1 + gamma)   (phi = 0)
//   kappa_t =   gamma kappa / (1 - gamma)   (phi = pi, gamma < 1)
std::pair<double, double> equivalent_params(double gamma, double kappa,
                                            double phi);

struct RunOptions {
    // record observables every this many event intervals (>= 1)
    int record_stride = 1;
    // extra density snapshots at these times (start/final always included)
    std::vector<double> snapshot_times;
    // when set, p_left is recorded against the moving split
    // x = split_origin + split_velocity * t
    std::optional<std::pair<double, double>> split_track;
};

// Coherent propagation over intervals of t_c, with one sampled scattering
// event applied at the end of each full interval. Events with gamma = 0
// leave the state (and its leapfrog levels) untouched, so such a run is
// bit-identical to plain propagate().
RunResult run_decoherent(const WaveFunction& psi0, const Potential& v,
                         const StepParams& p, const DecoherenceParams& d,
                         double duration, RandomStream& rng,
                         const RunOptions& opts = {});

}  // namespace decolens
