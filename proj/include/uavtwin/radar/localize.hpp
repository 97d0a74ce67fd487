#pragma once

#include "uavtwin/common/least_squares.hpp"
#include "uavtwin/scene/fix.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <optional>
#include <vector>

namespace uavtwin::radar {

using scene::PositionFix;

struct RxDelay {
    scene::Position3 position;
    double delay = 0.0;  // s, bistatic tx -> target -> rx
};

struct LocalizeOptions {
    std::optional<double> altitude;  // m, pins the up coordinate
    LsqOptions lsq;
};

/// Least-squares target position from bistatic delays by damped Gauss-Newton
/// on range-sum residuals (metres). Needs >= 3 delays, or >= 2 with a fixed
/// altitude; throws InvalidArgument otherwise. Non-convergence and rank loss
/// are reported through PositionFix::status.
PositionFix localize_bistatic(const scene::Position3& tx, const std::vector<RxDelay>& rx_delays,
                              const scene::Position3& initial_guess,
                              const LocalizeOptions& options = {});

/// Sum of squared range-sum residuals in m^2.
double bistatic_cost(const scene::Position3& tx, const std::vector<RxDelay>& rx_delays,
                     const scene::Position3& p);

/// Best point of the coarse search grid of `volume`.
scene::Position3 bistatic_initial_guess(const scene::Position3& tx,
                                        const std::vector<RxDelay>& rx_delays,
                                        const scene::SearchVolume& volume,
                                        std::optional<double> altitude = std::nullopt);

}  // namespace uavtwin::radar
