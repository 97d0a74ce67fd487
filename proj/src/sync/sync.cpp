#include "uavtwin/sync/sync.hpp"

#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <cmath>

namespace uavtwin::sync {

std::vector<OffsetEstimate> beacon_calibrate(const scene::Position3& beacon_position,
                                             const std::vector<ReceiverSite>& receivers,
                                             const std::vector<TimeSeries>& measured_delays,
                                             const std::vector<TimeErrorSeries>& filtered_gnss) {
    if (receivers.size() != measured_delays.size())
        throw InvalidArgument("one delay series per receiver expected");
    if (!filtered_gnss.empty() && filtered_gnss.size() != receivers.size())
        throw InvalidArgument("one GNSS series per receiver expected");
    std::vector<OffsetEstimate> out;
    for (std::size_t r = 0; r < receivers.size(); ++r) {
        const auto& series = measured_delays[r];
        if (series.empty())
            throw InvalidArgument("empty delay series for receiver " + receivers[r].id);
        const double geometric = scene::los_delay(beacon_position, receivers[r].position);
        std::vector<double> diff(series.size());
        for (std::size_t i = 0; i < series.size(); ++i) {
            diff[i] = series.value[i] - geometric;
            if (!filtered_gnss.empty()) diff[i] -= filtered_gnss[r].at(series.t[i]);
        }
        out.push_back({receivers[r].id, mean(diff), stddev(diff)});
    }
    return out;
}

TimeErrorSeries pairwise_tdoa(const TimeSeries& delays_i, const TimeSeries& delays_j,
                              double geometric_i, double geometric_j) {
    if (delays_i.t != delays_j.t) throw InvalidArgument("pairwise TDoA needs aligned timestamps");
    TimeErrorSeries out;
    out.t = delays_i.t;
    out.value.resize(delays_i.size());
    for (std::size_t k = 0; k < out.value.size(); ++k)
        out.value[k] = (delays_i.value[k] - geometric_i) - (delays_j.value[k] - geometric_j);
    return out;
}

TimeErrorSeries rect_lowpass(const TimeErrorSeries& series, double window_length) {
    if (series.empty()) return series;
    const double dt = series.size() > 1 ? series.uniform_interval() : window_length;
    if (!(window_length >= dt * (1.0 - 1e-9)))
        throw InvalidArgument("filter window shorter than one sample");
    auto samples = static_cast<std::size_t>(std::llround(window_length / dt));
    samples = std::max<std::size_t>(samples, 1);
    const std::size_t half = samples / 2;

    const std::size_t n = series.size();
    TimeErrorSeries out;
    out.t = series.t;
    out.value.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t h = std::min({half, k, n - 1 - k});
        double acc = 0.0;
        for (std::size_t j = k - h; j <= k + h; ++j) acc += series.value[j];
        out.value[k] = acc / static_cast<double>(2 * h + 1);
    }
    return out;
}

double clock_correction(const OffsetEstimate& offset, const TimeErrorSeries& filtered_gnss, double t) {
    if (filtered_gnss.empty()) return offset.constant_offset;
    if (t < filtered_gnss.t.front() || t > filtered_gnss.t.back())
        throw InvalidArgument("measurement time outside the GNSS error series");
    return offset.constant_offset + filtered_gnss.at(t);
}

double ReceiverCorrections::at(std::size_t r, double t) const {
    if (empty()) return 0.0;
    if (r >= offsets.size()) throw InvalidArgument("no clock correction for receiver index");
    static const TimeErrorSeries none;
    return clock_correction(offsets[r], filtered_gnss.empty() ? none : filtered_gnss.at(r), t);
}

TimeSeries compensate(const TimeSeries& delays, double offset, const TimeErrorSeries& filtered_gnss) {
    TimeSeries out = delays;
    const OffsetEstimate est{"", offset, 0.0};
    for (std::size_t k = 0; k < out.size(); ++k)
        out.value[k] -= clock_correction(est, filtered_gnss, out.t[k]);
    return out;
}

std::vector<TimeSeries> compensate(const std::vector<TimeSeries>& delays,
                                   const std::vector<OffsetEstimate>& offsets,
                                   const std::vector<TimeErrorSeries>& filtered_gnss) {
    if (delays.size() != offsets.size() || delays.size() != filtered_gnss.size())
        throw InvalidArgument("compensate needs one offset and GNSS series per receiver");
    std::vector<TimeSeries> out;
    out.reserve(delays.size());
    for (std::size_t r = 0; r < delays.size(); ++r)
        out.push_back(compensate(delays[r], offsets[r].constant_offset, filtered_gnss[r]));
    return out;
}

}  // namespace uavtwin::sync
