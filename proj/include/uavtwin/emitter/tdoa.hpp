#pragma once

#include "uavtwin/common/constants.hpp"

#include <span>
#include <string>

namespace uavtwin::emitter {

/// Arrival-time difference t_b - t_a between receivers a and b.
struct TdoaMeasurement {
    std::string rx_a;
    std::string rx_b;
    double tdoa = 0.0;             // s
    double peak_quality_db = 0.0;  // correlation peak over the strongest sidelobe
    double timestamp = 0.0;        // s
};

struct XcorrResult {
    double tdoa = 0.0;  // s, arrival at j minus arrival at i
    double peak_quality_db = 0.0;
};

/// Circular cross-correlation r[l] = sum_m conj(i[m]) j[m + l] evaluated in
/// the frequency domain. The integer-lag maximum inside +-search_window is
/// seeded by a parabolic fit of |r|^2 and polished on the band-limited
/// correlation. Quality is capped at 300 dB. Throws InvalidArgument for
/// unequal lengths, a window exceeding half the record or all-zero input.
XcorrResult xcorr_tdoa(std::span<const cdouble> sig_i, std::span<const cdouble> sig_j,
                       double sample_rate, double search_window);

}  // namespace uavtwin::emitter
