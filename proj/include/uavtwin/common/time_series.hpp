#pragma once

#include <cstddef>
#include <vector>

namespace uavtwin {

/// (t, value) samples with strictly increasing timestamps. Used for clock
/// drift, GNSS time error and TDoA error series; all values in seconds.
struct TimeSeries {
    std::vector<double> t;
    std::vector<double> value;

    std::size_t size() const { return t.size(); }
    bool empty() const { return t.empty(); }

    /// Linear interpolation; throws InvalidArgument outside [t.front(), t.back()].
    double at(double time) const;

    /// Sampling interval when the timestamps are uniform (relative tolerance
    /// 1e-6), otherwise throws InvalidArgument.
    double uniform_interval() const;

    bool operator==(const TimeSeries&) const = default;
};

double mean(const std::vector<double>& v);
/// Population variance (divides by N).
double variance(const std::vector<double>& v);
double stddev(const std::vector<double>& v);

}  // namespace uavtwin
