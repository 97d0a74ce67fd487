#pragma once

#include "uavtwin/common/time_series.hpp"
#include "uavtwin/scene/geometry.hpp"

#include <string>
#include <vector>

namespace uavtwin::sync {

/// Uniformly sampled time error in seconds.
using TimeErrorSeries = TimeSeries;

struct OffsetEstimate {
    std::string rx_id;
    double constant_offset = 0.0;  // s
    double residual_std = 0.0;     // s
};

struct ReceiverSite {
    std::string id;
    scene::Position3 position;
};

/// Per receiver: mean and std of (measured - los_delay(beacon, rx)). When
/// `filtered_gnss` is given (one series per receiver), the filtered GNSS time
/// error is removed from each sample first so the slowly varying drift does
/// not leak into the constant offset. Throws InvalidArgument on empty or
/// mismatched input.
std::vector<OffsetEstimate> beacon_calibrate(const scene::Position3& beacon_position,
                                             const std::vector<ReceiverSite>& receivers,
                                             const std::vector<TimeSeries>& measured_delays,
                                             const std::vector<TimeErrorSeries>& filtered_gnss = {});

/// (delays_i - geometric_i) - (delays_j - geometric_j) per timestamp.
/// Throws InvalidArgument unless the timestamps match exactly.
TimeErrorSeries pairwise_tdoa(const TimeSeries& delays_i, const TimeSeries& delays_j,
                              double geometric_i, double geometric_j);

/// Centered moving average over `window_length` seconds. The window spans
/// round(window_length / dt) samples, rounded up to an odd count so it stays
/// centered; near the ends it shrinks symmetrically. Throws InvalidArgument
/// for a window shorter than one sample or non-uniform input.
TimeErrorSeries rect_lowpass(const TimeErrorSeries& series, double window_length);

/// measured - offset - filtered_gnss(t) with the GNSS error linearly
/// interpolated. Throws InvalidArgument if a measurement time lies outside the
/// GNSS series.
TimeSeries compensate(const TimeSeries& delays, double offset, const TimeErrorSeries& filtered_gnss);

/// Per-receiver form; all three lists are indexed alike.
std::vector<TimeSeries> compensate(const std::vector<TimeSeries>& delays,
                                   const std::vector<OffsetEstimate>& offsets,
                                   const std::vector<TimeErrorSeries>& filtered_gnss);

/// Clock compensation for a set of receivers: calibrated offsets and
/// filtered GNSS error series indexed like the receivers. Empty means none.
struct ReceiverCorrections {
    std::vector<OffsetEstimate> offsets;
    std::vector<TimeErrorSeries> filtered_gnss;

    bool empty() const { return offsets.empty(); }
    /// Total correction for receiver index r at time t.
    double at(std::size_t r, double t) const;
};

/// Correction to subtract from a delay measured at receiver `offset.rx_id` at
/// time t: offset plus the filtered GNSS error (0 when the series is empty).
double clock_correction(const OffsetEstimate& offset, const TimeErrorSeries& filtered_gnss, double t);

}  // namespace uavtwin::sync
