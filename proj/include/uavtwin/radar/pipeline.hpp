#pragma once

#include "uavtwin/radar/localize.hpp"
#include "uavtwin/radar/ml_estimator.hpp"
#include "uavtwin/scene/scenario.hpp"
#include "uavtwin/sync/sync.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uavtwin::radar {

struct RadarEpoch {
    double time = 0.0;                       // s, burst centre
    scene::Position3 truth;
    bool in_beam = false;                    // geometric visibility, see target_in_beam
    std::vector<DelayDetection> detections;  // all receivers, after clutter cancellation
    std::vector<std::string> fused_receivers;
    std::optional<PositionFix> fix;
};

struct RadarRun {
    std::vector<RadarEpoch> epochs;
    double detection_fraction = 0.0;  // epochs with a fix / epochs
    double in_beam_fraction = 0.0;    // epochs geometrically in beam / epochs
};

struct RadarRunOptions {
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::optional<std::size_t> epochs;  // overrides capture.epochs
    std::optional<double> snr_db;       // overrides capture.snr_db
    sync::ReceiverCorrections corrections;  // optional clock compensation
};

/// True when the target is inside the transmitter beam and inside the beams
/// of at least as many receivers as a fix needs (2 with an altitude
/// constraint, else 3).
bool target_in_beam(const scene::ScenarioConfig& scene, const scene::Position3& target);

/// Per epoch: simulate a burst, average blocks of average_k snapshots, cancel
/// static clutter, run the delay estimator and the per-receiver tracker, and
/// fuse the receivers whose confirmed track was updated into a bistatic fix.
RadarRun run_radar_pipeline(const scene::ScenarioConfig& scene, const RadarRunOptions& options = {});

}  // namespace uavtwin::radar
