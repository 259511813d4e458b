#pragma once

#include "rdnet/grid.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rdnet {

struct StepDiagnostics {
    double t = 0.0;  // time after the step
    double dt = 0.0;
    double min_c = 0.0;
    double conserved_total = 0.0;
};

/// Sampled states of one run. samples[0] is the initial state; times are
/// strictly increasing and the last sample sits at t_end.
struct Trajectory {
    Grid grid;
    std::vector<State> samples;
    std::vector<StepDiagnostics> diagnostics;
    std::vector<double> conservation_weights;  // weights used for conserved_total

    bool empty() const { return samples.empty(); }
};

/// <w, h^N sum_cells c>, summed species by species in cell order.
double weighted_total(const Grid& grid, const State& s, std::span<const double> w);

} // namespace rdnet
