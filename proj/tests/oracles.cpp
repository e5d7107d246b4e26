#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace oracles {

std::vector<cd> exact_propagate(const std::vector<cd>& psi,
                                const GridSpec& grid, const Potential& v,
                                double t) {
    const int ni = grid.n - 2;
    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(ni, ni);
    const double inv = 0.5 / (grid.dx * grid.dx);
    for (int i = 0; i < ni; ++i) {
        H(i, i) = 2.0 * inv + v.values[i + 1];
        if (i > 0) H(i, i - 1) = -inv;
        if (i + 1 < ni) H(i, i + 1) = -inv;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    Eigen::VectorXcd inner(ni);
    for (int i = 0; i < ni; ++i) inner(i) = psi[i + 1];
    const Eigen::VectorXcd coef = es.eigenvectors().transpose() * inner;
    Eigen::VectorXcd evolved(ni);
    for (int i = 0; i < ni; ++i)
        evolved(i) =
            coef(i) * std::exp(cd(0.0, -es.eigenvalues()(i) * t));
    const Eigen::VectorXcd out = es.eigenvectors() * evolved;
    std::vector<cd> res(grid.n, cd(0.0));
    for (int i = 0; i < ni; ++i) res[i + 1] = out(i);
    return res;
}

std::vector<cd> crank_nicolson(const std::vector<cd>& psi,
                               const GridSpec& grid, const Potential& v,
                               double tau, long steps) {
    const int ni = grid.n - 2;
    const cd a = cd(0.0, tau / 2.0);
    const double inv = 0.5 / (grid.dx * grid.dx);
    const cd off = a * (-inv);

    std::vector<cd> diag(ni), cur(ni);
    for (int i = 0; i < ni; ++i) {
        diag[i] = 1.0 + a * (2.0 * inv + v.values[i + 1]);
        cur[i] = psi[i + 1];
    }
    std::vector<cd> cp(ni), dp(ni), rhs(ni);
    for (long s = 0; s < steps; ++s) {
        for (int i = 0; i < ni; ++i) {
            rhs[i] = (2.0 - diag[i]) * cur[i];
            if (i > 0) rhs[i] -= off * cur[i - 1];
            if (i + 1 < ni) rhs[i] -= off * cur[i + 1];
        }
        // Thomas algorithm
        cp[0] = off / diag[0];
        dp[0] = rhs[0] / diag[0];
        for (int i = 1; i < ni; ++i) {
            const cd m = diag[i] - off * cp[i - 1];
            cp[i] = off / m;
            dp[i] = (rhs[i] - off * dp[i - 1]) / m;
        }
        cur[ni - 1] = dp[ni - 1];
        for (int i = ni - 2; i >= 0; --i) cur[i] = dp[i] - cp[i] * cur[i + 1];
    }
    std::vector<cd> out(grid.n, cd(0.0));
    for (int i = 0; i < ni; ++i) out[i + 1] = cur[i];
    return out;
}

std::vector<cd> to_complex(const WaveFunction& psi) {
    std::vector<cd> out(psi.n());
    for (int i = 0; i < psi.n(); ++i) out[i] = psi.at(i);
    return out;
}

double l2_distance(const std::vector<cd>& a, const std::vector<cd>& b,
                   double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return std::sqrt(s * dx);
}

}  // namespace oracles
