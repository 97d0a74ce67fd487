#pragma once

#include "uavtwin/common/time_series.hpp"

#include <cstdint>
#include <vector>

namespace uavtwin::scene {
struct ScenarioConfig;
}

namespace uavtwin::airsim {

/// GPSDO-disciplined sample clock of one receiver.
///
/// The timing error is constant_offset + drift(t), where drift is a
/// first-order Gauss-Markov process plus white jitter sampled at the PPS
/// cadence. gnss_raw_error is what the GNSS timing receiver reports: the same
/// drift observed through independent white noise. The constant offset models
/// the random 10 MHz phase after power-up plus cable and analog delays and is
/// not visible to the GNSS observable.
struct ClockState {
    double constant_offset = 0.0;  // s
    TimeSeries drift_series;       // s
    TimeSeries gnss_raw_error;     // s

    /// Total timing error at t (offset + interpolated drift). A default
    /// constructed state is a perfect clock.
    double error_at(double t) const;
    double drift_at(double t) const;
};

struct ClockModel {
    double sigma_white = 0.2e-9;     // s
    double drift_scale = 0.9e-9;     // s, stationary std of the Gauss-Markov part
    double correlation_time = 40.0;  // s
    double gnss_noise = 0.8e-9;      // s
    double sample_interval = 1.0;    // s
    double offset_range = 100e-9;    // s, offset drawn uniform in +-offset_range
};

/// Deterministic in (seed, clock_index). Samples cover
/// [start_time, start_time + duration]. Throws InvalidArgument for negative
/// noise levels or non-positive correlation time, interval or duration.
ClockState gen_clock_state(std::uint64_t seed, std::uint64_t clock_index, const ClockModel& model,
                           double duration, double start_time = 0.0);

ClockModel clock_model(const scene::ScenarioConfig& config);

/// One clock per receiver in scenario order, or perfect clocks when the
/// scenario disables clock impairments.
std::vector<ClockState> scenario_clocks(const scene::ScenarioConfig& config, std::uint64_t seed,
                                        double duration, double start_time = 0.0);

}  // namespace uavtwin::airsim
