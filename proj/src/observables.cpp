#include "decolens/observables.hpp"

#include <algorithm>
#include <cmath>

namespace decolens {

std::pair<double, double> moments(const std::vector<double>& rho,
                                  const GridSpec& grid) {
    double mass = 0.0, mx = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        mass += rho[i];
        mx += rho[i] * grid.x(i);
    }
    mass *= grid.dx;
    mx *= grid.dx;
    if (!(mass > 0.0)) throw EmptyDensity("moments: density has no mass");
    const double mean = mx / mass;
    double var = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        const double u = grid.x(i) - mean;
        var += rho[i] * u * u;
    }
    var = var * grid.dx / mass;
    return {mean, var};
}

double density_max_position(const std::vector<double>& rho,
                            const GridSpec& grid) {
    // ties broken toward the leftmost maximum
    int best = 0;
    for (int i = 1; i < grid.n; ++i)
        if (rho[i] > rho[best]) best = i;
    return grid.x(best);
}

CollapseState collapse_state(const std::vector<double>& rho,
                             const GridSpec& grid, double split,
                             double theta) {
    if (split < grid.x_min || split > grid.x_max())
        throw Error("collapse_state: split outside grid");
    double left = 0.0, total = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        total += rho[i];
        if (grid.x(i) < split) left += rho[i];
    }
    if (!(total > 0.0)) throw EmptyDensity("collapse_state: empty density");
    CollapseState st;
    st.p_left = left / total;
    if (st.p_left > theta)
        st.collapsed = Collapsed::Left;
    else if (st.p_left < 1.0 - theta)
        st.collapsed = Collapsed::Right;
    return st;
}

BarrierClassification classify_barrier(const std::vector<double>& rho,
                                       const GridSpec& grid,
                                       double barrier_right_edge,
                                       double theta) {
    double right = 0.0, total = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        total += rho[i];
        if (grid.x(i) >= barrier_right_edge) right += rho[i];
    }
    BarrierClassification c;
    c.transmitted = total > 0.0 ? right / total : 0.0;
    if (c.transmitted > theta)
        c.outcome = BarrierOutcome::Transmitted;
    else if (c.transmitted < 1.0 - theta)
        c.outcome = BarrierOutcome::Reflected;
    else
        c.outcome = BarrierOutcome::Split;
    return c;
}

EnsembleResult aggregate(std::vector<RunResult> runs) {
    if (runs.empty()) throw Error("aggregate: no runs");
    const GridSpec grid = runs[0].final_psi.grid;
    for (const auto& r : runs)
        if (!(r.final_psi.grid == grid))
            throw GridMismatch("aggregate: runs on different grids");

    const int n = grid.n;
    EnsembleResult out;
    out.mean_density.assign(n, 0.0);
    out.centered_density.assign(n, 0.0);

    // center onto the first run's density maximum, shifting whole cells
    int target = 0;
    {
        const auto rho0 = density(runs[0].final_psi);
        target = static_cast<int>(
            (density_max_position(rho0, grid) - grid.x_min) / grid.dx + 0.5);
    }
    for (const auto& r : runs) {
        const auto rho = density(r.final_psi);
        int peak = 0;
        for (int i = 1; i < n; ++i)
            if (rho[i] > rho[peak]) peak = i;
        const int shift = target - peak;
        for (int i = 0; i < n; ++i) {
            out.mean_density[i] += rho[i];
            const int j = i + shift;
            if (j >= 0 && j < n) out.centered_density[j] += rho[i];
        }
    }
    const double inv = 1.0 / static_cast<double>(runs.size());
    for (double& v : out.mean_density) v *= inv;
    for (double& v : out.centered_density) v *= inv;
    out.runs = std::move(runs);
    return out;
}

}  // namespace decolens
