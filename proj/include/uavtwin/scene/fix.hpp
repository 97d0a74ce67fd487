#pragma once

#include "uavtwin/common/least_squares.hpp"
#include "uavtwin/scene/geometry.hpp"

#include <vector>

namespace uavtwin::scene {

/// Least-squares position estimate shared by the radar and emitter chains.
struct PositionFix {
    Position3 position;
    double residual_norm = 0.0;  // s, RMS delay residual
    int iterations = 0;
    double timestamp = 0.0;      // s
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<double> cost_trace;  // m^2, objective after every accepted step
};

/// Minimizer of `cost` over the grid spanning `min`..`max` at `step`. With an
/// altitude the up coordinate is pinned and only the horizontal plane is
/// scanned.
template <class Cost>
Position3 coarse_grid_minimum(const Cost& cost, const Position3& min, const Position3& max,
                              double step, const double* altitude = nullptr) {
    const auto count = [step](double lo, double hi) {
        return static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
    };
    const long ne = count(min.east, max.east);
    const long nn = count(min.north, max.north);
    const long nu = altitude ? 1 : count(min.up, max.up);
    Position3 best{min.east, min.north, altitude ? *altitude : min.up};
    double best_cost = cost(best);
    for (long i = 0; i < ne; ++i)
        for (long j = 0; j < nn; ++j)
            for (long k = 0; k < nu; ++k) {
                const Position3 p{min.east + static_cast<double>(i) * step,
                                  min.north + static_cast<double>(j) * step,
                                  altitude ? *altitude : min.up + static_cast<double>(k) * step};
                const double c = cost(p);
                if (c < best_cost) {
                    best_cost = c;
                    best = p;
                }
            }
    return best;
}

}  // namespace uavtwin::scene
