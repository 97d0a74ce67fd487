#include "uavtwin/radar/localize.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/common/errors.hpp"

#include <cmath>

namespace uavtwin::radar {

using scene::Position3;

double bistatic_cost(const Position3& tx, const std::vector<RxDelay>& rx_delays, const Position3& p) {
    double cost = 0.0;
    for (const auto& m : rx_delays) {
        const double r = kSpeedOfLight * m.delay - (scene::distance(p, tx) + scene::distance(p, m.position));
        cost += r * r;
    }
    return cost;
}

Position3 bistatic_initial_guess(const Position3& tx, const std::vector<RxDelay>& rx_delays,
                                 const scene::SearchVolume& volume, std::optional<double> altitude) {
    const auto cost = [&](const Position3& p) { return bistatic_cost(tx, rx_delays, p); };
    return scene::coarse_grid_minimum(cost, volume.min, volume.max, volume.coarse_step,
                                      altitude ? &*altitude : nullptr);
}

PositionFix localize_bistatic(const Position3& tx, const std::vector<RxDelay>& rx_delays,
                              const Position3& initial_guess, const LocalizeOptions& options) {
    const std::size_t needed = options.altitude ? 2 : 3;
    if (rx_delays.size() < needed)
        throw InvalidArgument("bistatic localization needs " + std::to_string(needed) + " delays");
    const bool pinned = options.altitude.has_value();
    const Eigen::Index dims = pinned ? 2 : 3;

    const auto position_of = [&](const Eigen::VectorXd& x) {
        return Position3{x(0), x(1), pinned ? *options.altitude : x(2)};
    };
    const ResidualFunction fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        const Position3 p = position_of(x);
        r.resize(static_cast<Eigen::Index>(rx_delays.size()));
        J.resize(r.size(), dims);
        const Position3 to_tx = p - tx;
        const double d_tx = to_tx.norm();
        for (std::size_t i = 0; i < rx_delays.size(); ++i) {
            const Position3 to_rx = p - rx_delays[i].position;
            const double d_rx = to_rx.norm();
            const auto row = static_cast<Eigen::Index>(i);
            r(row) = d_tx + d_rx - kSpeedOfLight * rx_delays[i].delay;
            // Unit vectors; a point on a node has no defined gradient, use 0.
            const double a = d_tx > 0.0 ? 1.0 / d_tx : 0.0;
            const double b = d_rx > 0.0 ? 1.0 / d_rx : 0.0;
            J(row, 0) = to_tx.east * a + to_rx.east * b;
            J(row, 1) = to_tx.north * a + to_rx.north * b;
            if (!pinned) J(row, 2) = to_tx.up * a + to_rx.up * b;
        }
    };

    Eigen::VectorXd x0(dims);
    x0(0) = initial_guess.east;
    x0(1) = initial_guess.north;
    if (!pinned) x0(2) = initial_guess.up;
    const auto solved = damped_gauss_newton(fn, x0, options.lsq);

    PositionFix fix;
    fix.position = position_of(solved.params);
    fix.iterations = solved.iterations;
    fix.status = solved.status;
    fix.cost_trace = solved.accepted_costs;
    fix.residual_norm =
        std::sqrt(solved.cost / static_cast<double>(rx_delays.size())) / kSpeedOfLight;
    return fix;
}

}  // namespace uavtwin::radar
