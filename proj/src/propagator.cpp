#include "decolens/propagator.hpp"

#include <cmath>

namespace decolens {

namespace {

// L[f] = (1/2) f'' - V f on interior points, Dirichlet walls.
void apply_l(const std::vector<double>& f, const Potential& v, double dx,
             std::vector<double>& out) {
    const int n = static_cast<int>(f.size());
    out.assign(n, 0.0);
    const double inv2 = 0.5 / (dx * dx);
    for (int i = 1; i < n - 1; ++i)
        out[i] = inv2 * (f[i + 1] - 2.0 * f[i] + f[i - 1]) - v.values[i] * f[i];
}

}  // namespace

StepParams StepParams::make(double tau, const GridSpec& grid,
                            const Potential& v) {
    if (!(tau > 0.0)) throw UnstableParameters("tau must be > 0");
    StepParams p;
    p.tau = tau;
    p.alpha = tau / (2.0 * grid.dx * grid.dx);
    if (p.alpha + v.max_value() * tau / 2.0 > 0.5)
        throw UnstableParameters(
            "explicit scheme unstable: alpha + max(V) tau/2 > 1/2");
    return p;
}

StepParams StepParams::default_for(const GridSpec& grid, const Potential& v) {
    return make(grid.dx * grid.dx / 2.0, grid, v);
}

void bootstrap(WaveFunction& psi, const Potential& v, const StepParams& p) {
    const int n = psi.n();
    const double dx = psi.grid.dx;
    const double tau = p.tau;

    std::vector<double> lr, li, llr, lli, tmp;
    apply_l(psi.re, v, dx, lr);
    apply_l(psi.im, v, dx, li);
    apply_l(lr, v, dx, llr);
    apply_l(li, v, dx, lli);

    psi.re_prev.assign(n, 0.0);
    psi.im_prev.assign(n, 0.0);
    std::vector<double> im_fwd(n, 0.0);
    for (int i = 0; i < n; ++i) {
        // I(+-tau/2) and R(-tau) from Taylor expansions of
        // dR/dt = -L[I], dI/dt = +L[R] around t = 0, second order.
        im_fwd[i] = psi.im[i] + 0.5 * tau * lr[i] - tau * tau / 8.0 * lli[i];
        psi.im_prev[i] = psi.im[i] - 0.5 * tau * lr[i] - tau * tau / 8.0 * lli[i];
        psi.re_prev[i] = psi.re[i] + tau * li[i] - 0.5 * tau * tau * llr[i];
    }
    psi.im = std::move(im_fwd);
    psi.has_prev = true;
}

void step(WaveFunction& psi, const Potential& v, const StepParams& p) {
    if (!psi.has_prev)
        throw Error("step: state not bootstrapped (no previous level)");
    const int n = psi.n();
    const double a = p.alpha;
    const double tau = p.tau;

    // R(t+tau) from I(t+tau/2), then I(t+3tau/2) from the new R.
    std::vector<double> rn(n, 0.0);
    for (int i = 1; i < n - 1; ++i)
        rn[i] = psi.re[i] - (a * (psi.im[i + 1] + psi.im[i - 1]) -
                             (2.0 * a + v.values[i] * tau) * psi.im[i]);
    std::vector<double> in(n, 0.0);
    for (int i = 1; i < n - 1; ++i)
        in[i] = psi.im[i] + (a * (rn[i + 1] + rn[i - 1]) -
                             (2.0 * a + v.values[i] * tau) * rn[i]);

    psi.re_prev = std::move(psi.re);
    psi.im_prev = std::move(psi.im);
    psi.re = std::move(rn);
    psi.im = std::move(in);
}

long propagate(WaveFunction& psi, const Potential& v, const StepParams& p,
               double duration) {
    const long steps = static_cast<long>(std::floor(duration / p.tau + 1e-9));
    if (!psi.has_prev && steps > 0) bootstrap(psi, v, p);
    for (long s = 0; s < steps; ++s) step(psi, v, p);
    return steps;
}

void synchronize(WaveFunction& psi) {
    if (!psi.has_prev) return;
    for (int i = 0; i < psi.n(); ++i)
        psi.im[i] = 0.5 * (psi.im[i] + psi.im_prev[i]);
    psi.re_prev.clear();
    psi.im_prev.clear();
    psi.has_prev = false;
}

double pseudo_norm(const WaveFunction& psi) {
    double s = 0.0;
    if (psi.has_prev) {
        for (int i = 0; i < psi.n(); ++i)
            s += psi.re[i] * psi.re[i] + psi.im[i] * psi.im_prev[i];
    } else {
        for (int i = 0; i < psi.n(); ++i)
            s += psi.re[i] * psi.re[i] + psi.im[i] * psi.im[i];
    }
    return s * psi.grid.dx;
}

}  // namespace decolens
