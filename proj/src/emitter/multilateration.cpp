#include "uavtwin/emitter/multilateration.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <cmath>

namespace uavtwin::emitter {

using scene::Position3;

namespace {

const Position3& lookup(const RxPositions& positions, const std::string& id) {
    const auto it = positions.find(id);
    if (it == positions.end()) throw InvalidArgument("unknown receiver '" + id + "'");
    return it->second;
}

}  // namespace

std::vector<ReferencedTdoa> reference_tdoas(const std::vector<TdoaMeasurement>& tdoas,
                                            const std::string& reference_rx) {
    std::vector<ReferencedTdoa> out;
    const auto seen = [&](const std::string& id) {
        return std::any_of(out.begin(), out.end(), [&](const auto& r) { return r.rx == id; });
    };
    for (const auto& m : tdoas) {
        if (m.rx_a == reference_rx && m.rx_b != reference_rx && !seen(m.rx_b))
            out.push_back({m.rx_b, m.tdoa});
        else if (m.rx_b == reference_rx && m.rx_a != reference_rx && !seen(m.rx_a))
            out.push_back({m.rx_a, -m.tdoa});
    }
    return out;
}

double hyperbolic_cost(const std::vector<ReferencedTdoa>& tdoas, const RxPositions& rx_positions,
                       const std::string& reference_rx, const Position3& p) {
    const double d_ref = scene::distance(p, lookup(rx_positions, reference_rx));
    double cost = 0.0;
    for (const auto& m : tdoas) {
        const double r = scene::distance(p, lookup(rx_positions, m.rx)) - d_ref - kSpeedOfLight * m.tdoa;
        cost += r * r;
    }
    return cost;
}

PositionFix hyperbolic_ls(const std::vector<TdoaMeasurement>& tdoas, const RxPositions& rx_positions,
                          const std::string& reference_rx, const Position3& initial_guess,
                          const HyperbolicOptions& options) {
    const auto referenced = reference_tdoas(tdoas, reference_rx);
    const std::size_t needed = options.altitude ? 2 : 3;
    if (referenced.size() < needed)
        throw InvalidArgument("hyperbolic LS needs " + std::to_string(needed) +
                              " TDoAs against the reference receiver");
    const Position3& ref = lookup(rx_positions, reference_rx);
    std::vector<Position3> sites;
    for (const auto& m : referenced) sites.push_back(lookup(rx_positions, m.rx));

    const bool pinned = options.altitude.has_value();
    const Eigen::Index dims = pinned ? 2 : 3;
    const auto position_of = [&](const Eigen::VectorXd& x) {
        return Position3{x(0), x(1), pinned ? *options.altitude : x(2)};
    };
    const ResidualFunction fn = [&](const Eigen::VectorXd& x, Eigen::VectorXd& r, Eigen::MatrixXd& J) {
        const Position3 p = position_of(x);
        const Position3 to_ref = p - ref;
        const double d_ref = to_ref.norm();
        const double a = d_ref > 0.0 ? 1.0 / d_ref : 0.0;
        r.resize(static_cast<Eigen::Index>(referenced.size()));
        J.resize(r.size(), dims);
        for (std::size_t i = 0; i < referenced.size(); ++i) {
            const Position3 to_rx = p - sites[i];
            const double d_rx = to_rx.norm();
            const double b = d_rx > 0.0 ? 1.0 / d_rx : 0.0;
            const auto row = static_cast<Eigen::Index>(i);
            r(row) = d_rx - d_ref - kSpeedOfLight * referenced[i].tdoa;
            J(row, 0) = to_rx.east * b - to_ref.east * a;
            J(row, 1) = to_rx.north * b - to_ref.north * a;
            if (!pinned) J(row, 2) = to_rx.up * b - to_ref.up * a;
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
        std::sqrt(solved.cost / static_cast<double>(referenced.size())) / kSpeedOfLight;
    if (!tdoas.empty()) fix.timestamp = tdoas.front().timestamp;
    return fix;
}

}  // namespace uavtwin::emitter
