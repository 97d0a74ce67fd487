#pragma once

#include "uavtwin/common/least_squares.hpp"
#include "uavtwin/emitter/tdoa.hpp"
#include "uavtwin/scene/fix.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace uavtwin::emitter {

using scene::PositionFix;
using RxPositions = std::map<std::string, scene::Position3>;

struct ReferencedTdoa {
    std::string rx;
    double tdoa = 0.0;  // s, t_rx - t_ref
};

/// Reduces a pairwise set to TDoAs against `reference_rx`. Pairs not touching
/// the reference are dropped; a receiver measured more than once keeps its
/// first entry.
std::vector<ReferencedTdoa> reference_tdoas(const std::vector<TdoaMeasurement>& tdoas,
                                            const std::string& reference_rx);

struct HyperbolicOptions {
    std::optional<double> altitude;  // m, pins the up coordinate
    LsqOptions lsq;
};

/// Least-squares emitter position from TDoAs against the reference receiver
/// (residuals in metres, damped Gauss-Newton). Needs >= 3 independent TDoAs,
/// or >= 2 with an altitude; throws InvalidArgument otherwise or for unknown
/// receiver ids. Rank loss (e.g. collinear receivers) is reported through
/// PositionFix::status.
PositionFix hyperbolic_ls(const std::vector<TdoaMeasurement>& tdoas, const RxPositions& rx_positions,
                          const std::string& reference_rx, const scene::Position3& initial_guess,
                          const HyperbolicOptions& options = {});

/// Sum of squared range-difference residuals in m^2 for referenced TDoAs.
double hyperbolic_cost(const std::vector<ReferencedTdoa>& tdoas, const RxPositions& rx_positions,
                       const std::string& reference_rx, const scene::Position3& p);

}  // namespace uavtwin::emitter
