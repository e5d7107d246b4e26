#pragma once

#include <string>
#include <utility>
#include <vector>

#include "decolens/event_record.hpp"
#include "decolens/grid.hpp"

namespace decolens {

// Per-run time series and final state of a (de)coherent run.
struct RunResult {
    std::vector<double> times;
    std::vector<double> mean_x;
    std::vector<double> var_x;
    std::vector<double> max_pos;
    std::vector<double> p_left;  // only when split tracking is enabled
    std::vector<EventRecord> events;
    std::vector<std::pair<double, std::vector<double>>> snapshots;
    WaveFunction final_psi;
    double max_edge_density = 0.0;  // wall-contamination watermark
    std::vector<std::string> warnings;
};

struct EnsembleResult {
    std::vector<RunResult> runs;
    std::vector<double> mean_density;
    std::vector<double> centered_density;  // maxima aligned before averaging
    std::uint64_t seed = 0;
};

// Mean and variance of position under the measure rho dx / sum(rho dx).
// Throws EmptyDensity when the total mass vanishes.
std::pair<double, double> moments(const std::vector<double>& rho,
                                  const GridSpec& grid);

double density_max_position(const std::vector<double>& rho,
                            const GridSpec& grid);

enum class Collapsed { Left, Right, None };

struct CollapseState {
    double p_left = 0.0;
    Collapsed collapsed = Collapsed::None;
};

// Mass fraction left of `split`, classified with threshold theta:
// Left if p_left > theta, Right if p_left < 1 - theta, else None.
CollapseState collapse_state(const std::vector<double>& rho,
                             const GridSpec& grid, double split,
                             double theta = 0.95);

enum class BarrierOutcome { Transmitted, Reflected, Split };

struct BarrierClassification {
    double transmitted = 0.0;  // mass fraction right of the barrier edge
    BarrierOutcome outcome = BarrierOutcome::Split;
};

BarrierClassification classify_barrier(const std::vector<double>& rho,
                                       const GridSpec& grid,
                                       double barrier_right_edge,
                                       double theta = 0.95);

// Ensemble mean density plus the maximum-centered mean (each run's density
// argmax shifted onto the first run's, by whole cells; ties to the left).
EnsembleResult aggregate(std::vector<RunResult> runs);

}  // namespace decolens
