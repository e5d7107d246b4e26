#pragma once

#include "decolens/grid.hpp"
#include "decolens/potential.hpp"

namespace decolens {

// Time step for the explicit two-level staggered (leapfrog) scheme.
// alpha = tau / (2 dx^2); the scheme is stable while
// alpha + max(V) tau / 2 <= 1/2, which is enforced at construction.
struct StepParams {
    double tau = 0.0;
    double alpha = 0.0;

    static StepParams make(double tau, const GridSpec& grid,
                           const Potential& v);
    // Default tau = dx^2 / 2, i.e. alpha = 1/4.
    static StepParams default_for(const GridSpec& grid, const Potential& v);
};

// Initializes the staggered levels from a single-level psi: the imaginary
// part is advanced/retarded by tau/2 and the previous real level by tau,
// via explicit Taylor updates of the discrete equations of motion.
// Subsequent step() calls are valid afterwards.
void bootstrap(WaveFunction& psi, const Potential& v, const StepParams& p);

// One leapfrog step of size tau. Requires a bootstrapped state.
// Dirichlet boundary values stay exactly zero.
void step(WaveFunction& psi, const Potential& v, const StepParams& p);

// Repeated step over floor(duration/tau) steps (bootstraps if needed).
// Returns the number of steps actually taken.
long propagate(WaveFunction& psi, const Potential& v, const StepParams& p,
               double duration);

// Collapses the staggered levels to a single synchronous level
// (R(t), (I(t+tau/2)+I(t-tau/2))/2). No-op for unbootstrapped states.
void synchronize(WaveFunction& psi);

// Discrete conserved quadratic form sum(re^2 + im*im_prev) dx of the
// staggered scheme; equals norm() for a synchronous state.
double pseudo_norm(const WaveFunction& psi);

}  // namespace decolens
