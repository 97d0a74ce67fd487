#include "uavtwin/radar/tracker.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/radar/hungarian.hpp"

#include <bit>
#include <limits>

namespace uavtwin::radar {

namespace {

DelayTrack spawn(const DelayDetection& d, int id, const TrackerParams& params) {
    DelayTrack t;
    t.id = id;
    t.state << d.delay, 0.0;
    t.covariance << params.measurement_noise * params.measurement_noise, 0.0, 0.0,
        params.initial_rate_std * params.initial_rate_std;
    t.hits = 1;
    t.history = 1u;
    t.updated = true;
    t.amplitude = d.amplitude;
    t.confirmed = params.confirm_hits <= 1;
    return t;
}

}  // namespace

TrackStepResult track_step(const TrackerState& state, const std::vector<DelayDetection>& detections,
                           double dt, const TrackerParams& params) {
    if (!(dt > 0.0)) throw InvalidArgument("tracker time step must be positive");

    Eigen::Matrix2d F;
    F << 1.0, dt, 0.0, 1.0;
    const double q2 = params.process_noise * params.process_noise;
    Eigen::Matrix2d Q;
    Q << q2 * dt * dt * dt / 3.0, q2 * dt * dt / 2.0, q2 * dt * dt / 2.0, q2 * dt;
    const double R = params.measurement_noise * params.measurement_noise;

    std::vector<DelayTrack> tracks = state.tracks;
    for (auto& t : tracks) {
        t.state = F * t.state;
        t.covariance = F * t.covariance * F.transpose() + Q;
        t.updated = false;
        ++t.age;
        t.history <<= 1;
    }

    Eigen::MatrixXd cost(static_cast<Eigen::Index>(tracks.size()),
                         static_cast<Eigen::Index>(detections.size()));
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        const double s = tracks[i].covariance(0, 0) + R;
        for (std::size_t j = 0; j < detections.size(); ++j) {
            const double y = detections[j].delay - tracks[i].state(0);
            const double d2 = y * y / s;
            cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                d2 > params.gate ? std::numeric_limits<double>::infinity() : d2;
        }
    }
    const auto assignment = hungarian(cost);

    std::vector<bool> used(detections.size(), false);
    for (std::size_t i = 0; i < tracks.size(); ++i) {
        auto& t = tracks[i];
        const int j = assignment[i];
        if (j < 0) {
            ++t.misses;
            continue;
        }
        used[static_cast<std::size_t>(j)] = true;
        const auto& d = detections[static_cast<std::size_t>(j)];
        const double s = t.covariance(0, 0) + R;
        const Eigen::Vector2d K = t.covariance.col(0) / s;
        t.state += K * (d.delay - t.state(0));
        // Joseph form keeps the covariance symmetric positive definite.
        Eigen::Matrix2d I_KH = Eigen::Matrix2d::Identity();
        I_KH.col(0) -= K;
        t.covariance = I_KH * t.covariance * I_KH.transpose() + K * R * K.transpose();
        t.covariance = 0.5 * (t.covariance + t.covariance.transpose());
        t.misses = 0;
        ++t.hits;
        t.history |= 1u;
        t.updated = true;
        t.amplitude = d.amplitude;
    }

    TrackStepResult result;
    result.state.next_id = state.next_id;
    const unsigned window_mask =
        params.confirm_window >= 32 ? ~0u : ((1u << params.confirm_window) - 1u);
    for (auto& t : tracks) {
        if (!t.confirmed && t.age < params.confirm_window &&
            std::popcount(t.history & window_mask) >= params.confirm_hits)
            t.confirmed = true;
        const bool expired_tentative = !t.confirmed && t.age + 1 >= params.confirm_window;
        if (t.misses >= params.max_misses || expired_tentative) continue;
        result.state.tracks.push_back(t);
    }
    for (std::size_t j = 0; j < detections.size(); ++j)
        if (!used[j]) result.state.tracks.push_back(spawn(detections[j], result.state.next_id++, params));

    for (const auto& t : result.state.tracks)
        if (t.confirmed && t.updated) result.confirmed.push_back({t.id, t.state(0), t.hits});
    return result;
}

}  // namespace uavtwin::radar
