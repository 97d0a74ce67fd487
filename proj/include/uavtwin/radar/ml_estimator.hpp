#pragma once

#include "uavtwin/waveform/waveform.hpp"

#include <string>
#include <vector>

namespace uavtwin::radar {

struct DelayDetection {
    double delay = 0.0;          // s, in [0, symbol length)
    double amplitude = 0.0;      // linear
    double snapshot_time = 0.0;  // s
    std::string receiver;
};

struct MlOptions {
    std::size_t max_targets = 3;
    double threshold_db = 13.0;       // above the noise floor
    std::size_t refinement_sweeps = 3;  // re-estimation passes after the greedy stage
};

/// Successive-cancellation delay estimator.
///
/// The strongest residual tap above threshold is located, its delay and
/// complex gain are found on the band-limited interpolant (parabolic seed,
/// Newton polish), and the path is removed from the spectrum. After the greedy
/// stage every path is re-estimated with all others cancelled. The noise floor
/// is median(|cir|^2) / ln 2 of the input. Detections are ordered by
/// decreasing amplitude.
std::vector<DelayDetection> ml_delay_estimate(const waveform::CIRSnapshot& cir,
                                              const MlOptions& options = {},
                                              const std::string& receiver = {});

/// median(|taps|^2) / ln 2, floored at 1e-12 of the peak power so noiseless
/// input keeps a finite threshold.
double noise_floor(const waveform::CIRSnapshot& cir);

}  // namespace uavtwin::radar
