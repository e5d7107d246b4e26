#include "decolens/potential.hpp"

#include <algorithm>
#include <cmath>

#include "decolens/errors.hpp"

namespace decolens {

Potential Potential::free_space(const GridSpec& grid) {
    Potential v;
    v.kind = Kind::Free;
    v.values.assign(grid.n, 0.0);
    return v;
}

Potential Potential::barrier(const GridSpec& grid, double height, double left,
                             double width) {
    if (!(width > 0.0) || !std::isfinite(height))
        throw Error("Potential::barrier: bad geometry");
    Potential v;
    v.kind = Kind::Barrier;
    v.height = height;
    v.left = left;
    v.width = width;
    v.values.assign(grid.n, 0.0);
    for (int i = 0; i < grid.n; ++i) {
        const double x = grid.x(i);
        if (x >= left && x < left + width) v.values[i] = height;
    }
    return v;
}

Potential Potential::custom(const GridSpec& grid, std::vector<double> values) {
    if (static_cast<int>(values.size()) != grid.n)
        throw Error("Potential::custom: size mismatch");
    for (double x : values)
        if (!std::isfinite(x)) throw Error("Potential::custom: non-finite value");
    Potential v;
    v.kind = Kind::Custom;
    v.values = std::move(values);
    return v;
}

double Potential::max_value() const {
    if (values.empty()) return 0.0;
    return *std::max_element(values.begin(), values.end());
}

}  // namespace decolens
