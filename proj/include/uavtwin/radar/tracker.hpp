#pragma once

#include "uavtwin/radar/ml_estimator.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <Eigen/Dense>

#include <vector>

namespace uavtwin::radar {

using TrackerParams = scene::TrackerConfig;

/// Constant-velocity Kalman track of one path delay.
struct DelayTrack {
    int id = 0;
    Eigen::Vector2d state = Eigen::Vector2d::Zero();  // delay [s], delay rate [s/s]
    Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();
    int age = 0;               // steps since birth
    int misses = 0;            // consecutive
    int hits = 0;              // total assignments including birth
    unsigned history = 0;      // bit i set = hit i steps ago
    bool confirmed = false;
    bool updated = false;      // assigned in the latest step
    double amplitude = 0.0;    // of the latest assigned detection
};

struct TrackerState {
    std::vector<DelayTrack> tracks;
    int next_id = 1;
};

struct ConfirmedDelay {
    int track_id = 0;
    double delay = 0.0;  // s, filtered
    int hits = 0;
};

struct TrackStepResult {
    TrackerState state;
    std::vector<ConfirmedDelay> confirmed;  // confirmed tracks updated in this step
};

/// Predict every track over dt, gate on the squared Mahalanobis distance,
/// assign by Hungarian matching, update, spawn and retire tracks. Tentative
/// tracks become confirmed after confirm_hits hits within their first
/// confirm_window steps or are dropped; any track is dropped after max_misses
/// consecutive misses. Throws InvalidArgument for dt <= 0.
TrackStepResult track_step(const TrackerState& state, const std::vector<DelayDetection>& detections,
                           double dt, const TrackerParams& params);

}  // namespace uavtwin::radar
