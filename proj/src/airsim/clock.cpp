#include "uavtwin/airsim/clock.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/rng.hpp"
#include "uavtwin/scene/scenario.hpp"

#include <cmath>

namespace uavtwin::airsim {

double ClockState::drift_at(double t) const {
    return drift_series.empty() ? 0.0 : drift_series.at(t);
}

double ClockState::error_at(double t) const { return constant_offset + drift_at(t); }

ClockState gen_clock_state(std::uint64_t seed, std::uint64_t clock_index, const ClockModel& model,
                           double duration, double start_time) {
    if (model.sigma_white < 0.0 || model.drift_scale < 0.0 || model.gnss_noise < 0.0 ||
        model.offset_range < 0.0)
        throw InvalidArgument("clock noise levels must be non-negative");
    if (!(model.correlation_time > 0.0) || !(model.sample_interval > 0.0) || !(duration > 0.0))
        throw InvalidArgument("clock correlation time, sample interval and duration must be positive");

    ClockState state;
    auto offset_rng = make_stream(seed, StreamKind::ClockOffset, {clock_index});
    std::uniform_real_distribution<double> offset(-model.offset_range, model.offset_range);
    state.constant_offset = model.offset_range > 0.0 ? offset(offset_rng) : 0.0;

    auto drift_rng = make_stream(seed, StreamKind::ClockDrift, {clock_index});
    auto gnss_rng = make_stream(seed, StreamKind::ClockGnss, {clock_index});
    std::normal_distribution<double> normal(0.0, 1.0);

    const auto n = static_cast<std::size_t>(std::ceil(duration / model.sample_interval - 1e-9)) + 1;
    const double a = std::exp(-model.sample_interval / model.correlation_time);
    const double innovation = model.drift_scale * std::sqrt(1.0 - a * a);

    state.drift_series.t.resize(n);
    state.drift_series.value.resize(n);
    state.gnss_raw_error.t.resize(n);
    state.gnss_raw_error.value.resize(n);
    double markov = model.drift_scale * normal(drift_rng);  // stationary start
    for (std::size_t k = 0; k < n; ++k) {
        if (k > 0) markov = a * markov + innovation * normal(drift_rng);
        const double t = start_time + static_cast<double>(k) * model.sample_interval;
        const double drift = markov + model.sigma_white * normal(drift_rng);
        state.drift_series.t[k] = t;
        state.drift_series.value[k] = drift;
        state.gnss_raw_error.t[k] = t;
        state.gnss_raw_error.value[k] = drift + model.gnss_noise * normal(gnss_rng);
    }
    return state;
}

ClockModel clock_model(const scene::ScenarioConfig& config) {
    ClockModel m;
    m.sigma_white = config.clock.sigma_white;
    m.drift_scale = config.clock.drift_scale;
    m.correlation_time = config.clock.correlation_time;
    m.gnss_noise = config.clock.gnss_noise;
    m.sample_interval = config.clock.sample_interval;
    return m;
}

std::vector<ClockState> scenario_clocks(const scene::ScenarioConfig& config, std::uint64_t seed,
                                        double duration, double start_time) {
    const auto rx = config.receivers();
    std::vector<ClockState> clocks(rx.size());
    if (!config.clock.enabled) return clocks;
    const auto model = clock_model(config);
    for (std::size_t i = 0; i < rx.size(); ++i)
        clocks[i] = gen_clock_state(seed, i, model, duration, start_time);
    return clocks;
}

}  // namespace uavtwin::airsim
