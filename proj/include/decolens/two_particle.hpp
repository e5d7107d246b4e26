#pragma once

#include <complex>
#include <vector>

#include "decolens/errors.hpp"
#include "decolens/grid.hpp"

namespace decolens {
namespace two_particle {

using cd = std::complex<double>;

// One Gaussian-product term c * phi_A(r) * phi_B(r'). Carriers are
// referenced to the packet center:
//   phi(r; a, k, s) = (2 pi s^2)^(-1/4) exp(-(r-a)^2/(4 s^2) + i k (r-a)).
// widths may differ per particle once displace() has acted (the two
// particles spread at their own mass-dependent rates).
struct GaussTerm {
    cd c;
    double rA = 0.0, kA = 0.0, sigmaA = 1.0;
    double rB = 0.0, kB = 0.0, sigmaB = 1.0;
    // signed momentum transfer received by A in this term (B gets the
    // opposite); set by scatter_zeno, drives displace()
    double transfer = 0.0;
};

// Vertical-coordinate scattering geometry of a packet pair per particle.
struct ScatterGeometry {
    double d = 1.0;        // packet half-separation
    double s = 0.0;        // pre-collision offset
    double s_t = 0.0;      // post-collision offset (s-tilde)
    double k = 16.0 * 3.14159265358979323846;  // carrier wavenumber
    double k0 = 0.0;       // mean momentum transfer
    double kappa = 0.0;    // transfer spread across the packet pair
    double sigma = 1.0;    // shared initial packet width
    double t_c = 0.0;      // flight time between events (bookkeeping)
    double massA = 1.0;
    double massB = 1.0;

    double k_bar() const { return k + k0; }
    void validate() const;
};

struct TwoParticleState {
    std::vector<GaussTerm> terms;
    ScatterGeometry geometry;
};

// Exact closed-form overlap of two center-referenced Gaussian packets.
cd packet_overlap(double a, double ka, double sa, double b, double kb,
                  double sb);

// <s1|s2> via the closed-form Gaussian overlaps (no quadrature).
cd state_inner(const TwoParticleState& s1, const TwoParticleState& s2);

void state_normalize(TwoParticleState& s);

// Four-term initial state (1 phase*)x(1 phase*) with centers
// r1 = d+s, r2 = -d+s (particle A, carrier +k) and r3 = d-s_t,
// r4 = -d-s_t (particle B, carrier -k); phase = 1 and i are the two
// documented variants, phase = 0 degenerates to a single product.
TwoParticleState build_initial(const ScatterGeometry& geom, cd phase);

// Post-scattering total wavenumber of particle A for packet pair (i, j),
// i in {1,2}, j in {3,4}: k_bar for (1,3) and (2,4), k_bar - kappa for
// (1,4), k_bar + kappa for (2,3). Transfers decrease linearly in the
// vertical separation r_i - r_j.
double transfer_law(const ScatterGeometry& geom, int i, int j);

// Quantum-Zeno scattering map: packet centers move to their post-collision
// values (identical to the initial ones when s = s_t = 0), every carrier
// becomes +/- k_bar, and the deviation of each pair transfer from the mean
// enters as a coefficient phase exp(i delta (rA - rB)) evaluated at the
// packet centers; for the symmetric geometry both cross pairs pick up
// exp(-2 i kappa d). Per-term transfers are recorded for displace().
// Requires a 4-term product-form input (throws NotProductForm).
TwoParticleState scatter_zeno(const TwoParticleState& state);

// Same map with the per-pair wavenumbers kept on the carriers
// (kA = +(k + transfer), kB = -(k + transfer)) instead of homogenized to
// +-k_bar. This is the pre-limit form the flight analysis needs: packets
// that later cross stay distinguishable by momentum.
TwoParticleState scatter_transfer_resolved(const TwoParticleState& state);

// Free flight in the per-particle comoving frames: each term's A center
// moves by transfer * t / massA, the B center by -transfer * t / massB,
// and both widths spread per the free-Gaussian law for their mass.
// Negative t traces trajectories backwards.
TwoParticleState displace(const TwoParticleState& state, double t);

// M[i][j] = psi(x_i, x_j), normalized so sum |M|^2 dx^2 = 1.
// Throws SupportOutOfDomain if any term's 4-sigma support leaves the grid.
std::vector<std::vector<cd>> discretize(const TwoParticleState& state,
                                        const GridSpec& grid);

struct SchmidtDecomposition {
    std::vector<double> weights;               // descending, sum 1
    std::vector<std::vector<cd>> left_fns;     // orthonormal under dx
    std::vector<std::vector<cd>> right_fns;
    std::vector<double> widths_left;           // density stds
    std::vector<double> widths_right;
};

// SVD of M*dx; weights are squared singular values. Components below
// weight_floor (relative) are dropped from the returned lists.
SchmidtDecomposition schmidt_numeric(const std::vector<std::vector<cd>>& M,
                                     const GridSpec& grid,
                                     double weight_floor = 1e-14);

// Closed-form Schmidt pairs for states with an exact 2x2 coefficient
// structure (4 terms sharing two A-functions and two B-functions). For the
// symmetric scattering states the orthonormalized coefficient matrix is
// normal and the decomposition uses its eigenbasis, which is the unique
// position-symmetric choice; otherwise an SVD of the 2x2 is used.
// Returned functions are coefficient pairs over the two packets per side.
struct Schmidt2x2 {
    double weights[2];
    cd left_coeffs[2][2];   // [component][packet]
    cd right_coeffs[2][2];
    // packet basis (center, carrier, width) per side
    double a_center[2], a_k[2], a_sigma[2];
    double b_center[2], b_k[2], b_sigma[2];
};

Schmidt2x2 schmidt_analytic_2x2(const TwoParticleState& state);

// Width (density std) of a two-packet superposition c1 phi1 + c2 phi2,
// computed from closed-form Gaussian moment integrals.
double superposition_width(cd c1, double a1, double k1, double s1, cd c2,
                           double a2, double k2, double s2);

// The single-scattering entangled pair
//   sqrt(1-g) |phi_K>|psi_k> + sqrt(g) |phi_{K-kappa}>|psi_{k+kappa}>
// as a 2-term state (packets centered at 0 with width sigma).
TwoParticleState build_pwd_pair(double g, double K, double k, double kappa,
                                double sigma);

// L2 residual between the normalized input (a 2-term state as above) and
// the normalized localizing/delocalizing expansion (LL' + DD')/2 built
// from the same packets. The expansion is an identity at g = 1/2
// (residual < 1e-10); a nonzero residual otherwise is reported, not an
// error.
double ld_basis_check(const TwoParticleState& state);

struct LensingReport {
    double t_i = 0.0;                 // intersection time of the extreme pair
    int light_particle = 0;           // 0 = A, 1 = B (trajectories used)
    double displacement_light = 0.0;  // max |center shift| at t_i
    double displacement_heavy = 0.0;
    double initial_width_a = 0.0;     // single-particle widths of the input
    double initial_width_b = 0.0;
    TwoParticleState state_at_t_i;
    SchmidtDecomposition schmidt;     // of the displaced state
};

// Solves the linear intersection of the two extreme-transfer trajectories
// of the lighter particle (packets paired with transfers k0 +/- kappa) and
// analyzes the displaced state there on an automatically sized grid.
// Throws NoIntersection for kappa = 0.
LensingReport lensing_analysis(const ScatterGeometry& geom);

}  // namespace two_particle
}  // namespace decolens
