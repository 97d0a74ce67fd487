#pragma once

#include "uavtwin/airsim/capture.hpp"
#include "uavtwin/emitter/multilateration.hpp"
#include "uavtwin/emitter/tdoa.hpp"
#include "uavtwin/sync/sync.hpp"

#include <optional>
#include <vector>

namespace uavtwin::emitter {

struct EmitterFix {
    double time = 0.0;
    scene::Position3 truth;
    std::vector<TdoaMeasurement> tdoas;  // full pairwise set, compensated
    std::optional<PositionFix> fix;
    double horizontal_error = 0.0;       // m, valid with fix
};

/// All receiver pairs (i < j in receiver order) of one snapshot, with the
/// clock corrections removed from both ends.
std::vector<TdoaMeasurement> snapshot_tdoas(const airsim::CaptureResult& capture, std::size_t snapshot,
                                            double search_window,
                                            const sync::ReceiverCorrections& corrections = {});

/// Per snapshot: pairwise TDoAs, sync compensation, hyperbolic LS seeded by
/// the previous fix (the first by the coarse grid over emitter.area). The
/// capture must hold raw samples (keep_samples).
std::vector<EmitterFix> run_emitter_pipeline(const airsim::CaptureResult& capture,
                                             const scene::ScenarioConfig& scene,
                                             const sync::ReceiverCorrections& sync_offsets = {},
                                             std::size_t workers = 1);

}  // namespace uavtwin::emitter
