#include "decolens/grid.hpp"

#include <cmath>
#include <limits>

namespace decolens {

void GridSpec::validate() const {
    if (n < 3) throw Error("GridSpec: n must be >= 3");
    if (!(dx > 0.0)) throw Error("GridSpec: dx must be > 0");
    if (!std::isfinite(x_min)) throw Error("GridSpec: x_min not finite");
}

WaveFunction::WaveFunction(const GridSpec& g) : grid(g) {
    grid.validate();
    re.assign(g.n, 0.0);
    im.assign(g.n, 0.0);
}

std::complex<double> WaveFunction::at(int i) const {
    double imag = im[i];
    if (has_prev) imag = 0.5 * (im[i] + im_prev[i]);
    return {re[i], imag};
}

void GaussianSpec::validate(const GridSpec& grid) const {
    if (!(sigma > 3.0 * grid.dx))
        throw Error("GaussianSpec: sigma must exceed 3 dx (unresolvable)");
    if (k0 != 0.0 && 2.0 * M_PI / std::abs(k0) <= 2.0 * grid.dx)
        throw Error("GaussianSpec: carrier wavelength below Nyquist");
}

WaveFunction make_gaussian(const GridSpec& grid, const GaussianSpec& spec) {
    grid.validate();
    spec.validate(grid);
    if (spec.x_center - 4.0 * spec.sigma < grid.x_min ||
        spec.x_center + 4.0 * spec.sigma > grid.x_max())
        throw PacketOutOfDomain("gaussian 4-sigma support exceeds the grid");

    WaveFunction psi(grid);
    for (int i = 1; i < grid.n - 1; ++i) {
        const double u = grid.x(i) - spec.x_center;
        const double env = std::exp(-u * u / (4.0 * spec.sigma * spec.sigma));
        psi.re[i] = env * std::cos(spec.k0 * grid.x(i));
        psi.im[i] = env * std::sin(spec.k0 * grid.x(i));
    }
    normalize(psi);
    return psi;
}

double norm(const WaveFunction& psi) {
    double s = 0.0;
    if (psi.has_prev) {
        for (int i = 0; i < psi.n(); ++i) {
            const double imag = 0.5 * (psi.im[i] + psi.im_prev[i]);
            s += psi.re[i] * psi.re[i] + imag * imag;
        }
    } else {
        for (int i = 0; i < psi.n(); ++i)
            s += psi.re[i] * psi.re[i] + psi.im[i] * psi.im[i];
    }
    return s * psi.grid.dx;
}

void normalize(WaveFunction& psi) {
    const double n2 = norm(psi);
    if (n2 <= 0.0) return;
    // already normalized to machine precision: keep bytes identical so the
    // operation is exactly idempotent
    if (std::abs(n2 - 1.0) <= 8.0 * std::numeric_limits<double>::epsilon())
        return;
    const double f = 1.0 / std::sqrt(n2);
    for (double& v : psi.re) v *= f;
    for (double& v : psi.im) v *= f;
    if (psi.has_prev) {
        for (double& v : psi.re_prev) v *= f;
        for (double& v : psi.im_prev) v *= f;
    }
}

std::vector<double> density(const WaveFunction& psi) {
    std::vector<double> rho(psi.n());
    for (int i = 0; i < psi.n(); ++i) rho[i] = std::norm(psi.at(i));
    return rho;
}

WaveFunction superpose(const WaveFunction& a, std::complex<double> ca,
                       const WaveFunction& b, std::complex<double> cb) {
    if (!(a.grid == b.grid)) throw GridMismatch("superpose: grids differ");
    WaveFunction out(a.grid);
    for (int i = 0; i < a.n(); ++i) {
        const std::complex<double> v = ca * a.at(i) + cb * b.at(i);
        out.re[i] = v.real();
        out.im[i] = v.imag();
    }
    normalize(out);
    return out;
}

}  // namespace decolens
