#include "uavtwin/common/time_series.hpp"

#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace uavtwin {

double TimeSeries::at(double time) const {
    if (t.empty()) throw InvalidArgument("empty time series");
    if (!(time >= t.front() && time <= t.back()))
        throw InvalidArgument("time " + std::to_string(time) + " outside series span");
    if (t.size() == 1) return value.front();
    auto it = std::upper_bound(t.begin(), t.end(), time);
    std::size_t hi = static_cast<std::size_t>(it - t.begin());
    hi = std::clamp<std::size_t>(hi, 1, t.size() - 1);
    const std::size_t lo = hi - 1;
    const double w = (time - t[lo]) / (t[hi] - t[lo]);
    return value[lo] + (value[hi] - value[lo]) * w;
}

double TimeSeries::uniform_interval() const {
    if (t.size() < 2) throw InvalidArgument("series needs two samples for an interval");
    const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i)
        if (std::abs((t[i] - t[i - 1]) - dt) > 1e-6 * std::abs(dt))
            throw InvalidArgument("series is not uniformly sampled");
    return dt;
}

double mean(const std::vector<double>& v) {
    if (v.empty()) throw InvalidArgument("mean of empty vector");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size());
}

double stddev(const std::vector<double>& v) { return std::sqrt(variance(v)); }

}  // namespace uavtwin
