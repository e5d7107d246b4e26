#pragma once

#include <complex>
#include <vector>

#include "decolens/errors.hpp"

namespace decolens {

// Uniform 1D grid with hard-wall (Dirichlet) boundaries at both ends.
// Lengths are dimensionless (hbar = 1, m = 1 units throughout).
struct GridSpec {
    int n = 0;          // number of points, >= 3
    double dx = 0.0;    // spacing, > 0
    double x_min = 0.0; // left edge

    double x(int i) const { return x_min + i * dx; }
    double x_max() const { return x_min + (n - 1) * dx; }
    double length() const { return (n - 1) * dx; }

    void validate() const;
    bool operator==(const GridSpec& o) const {
        return n == o.n && dx == o.dx && x_min == o.x_min;
    }
};

// Complex amplitudes stored as separate real/imaginary arrays, plus the
// previous staggered leapfrog level once a propagation has been bootstrapped.
// Before bootstrap: re/im hold psi(t) and has_prev is false.
// After stepping:   re = R(t), im = I(t + tau/2), re_prev = R(t - tau),
//                   im_prev = I(t - tau/2).
struct WaveFunction {
    GridSpec grid;
    std::vector<double> re, im;
    std::vector<double> re_prev, im_prev;
    bool has_prev = false;

    explicit WaveFunction(const GridSpec& g);
    WaveFunction() = default;

    int n() const { return grid.n; }
    // Synchronous amplitude at the current time level. On a bootstrapped
    // state the imaginary part is the average of the two staggered I levels
    // (second-order accurate readout).
    std::complex<double> at(int i) const;
    void drop_levels() { has_prev = false; }
};

// Gaussian packet parameters. sigma is the standard deviation of the
// probability density |psi|^2, not of the amplitude.
struct GaussianSpec {
    double sigma = 1.0;
    double k0 = 0.0;
    double x_center = 0.0;

    void validate(const GridSpec& grid) const;
};

// psi(x) ~ exp(-(x - xc)^2 / (4 sigma^2)) exp(i k0 x), L2-normalized on the
// grid with the rectangle rule. Throws PacketOutOfDomain if the 4-sigma
// support does not fit.
WaveFunction make_gaussian(const GridSpec& grid, const GaussianSpec& spec);

// sum (re^2 + im^2) dx over the synchronous amplitudes
double norm(const WaveFunction& psi);

// Rescales so norm() == 1. No-op direction preserved; idempotent.
void normalize(WaveFunction& psi);

std::vector<double> density(const WaveFunction& psi);

// ca * a + cb * b, normalized. Grids must match.
WaveFunction superpose(const WaveFunction& a, std::complex<double> ca,
                       const WaveFunction& b, std::complex<double> cb);

}  // namespace decolens
