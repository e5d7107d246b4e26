#pragma once

#include <vector>

#include "decolens/grid.hpp"

namespace decolens {

struct Potential {
    enum class Kind { Free, Barrier, Custom };

    Kind kind = Kind::Free;
    std::vector<double> values;
    // Barrier geometry, meaningful only for Kind::Barrier.
    double height = 0.0;
    double left = 0.0;
    double width = 0.0;

    static Potential free_space(const GridSpec& grid);
    // Rectangular barrier: values = height on [left, left + width), 0 outside.
    static Potential barrier(const GridSpec& grid, double height, double left,
                             double width);
    static Potential custom(const GridSpec& grid, std::vector<double> values);

    double max_value() const;
    double right_edge() const { return left + width; }
};

}  // namespace decolens
