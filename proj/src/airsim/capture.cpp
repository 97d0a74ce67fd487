#include "uavtwin/airsim/capture.hpp"

#include "uavtwin/airsim/pathloss.hpp"
#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/parallel.hpp"
#include "uavtwin/common/rng.hpp"
#include "uavtwin/waveform/bandlimited.hpp"
#include "uavtwin/waveform/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace uavtwin::airsim {

using scene::Position3;
using scene::ScenarioConfig;

namespace {

struct Path {
    double delay;  // s, as seen by the receiver (clock error included)
    cdouble gain;
};

double noise_variance(double snr_db) {
    if (std::isinf(snr_db) && snr_db > 0) return 0.0;
    return std::pow(10.0, -snr_db / 10.0);
}

cdouble carrier_rotation(double delay, const waveform::WaveformSpec& spec) {
    return std::polar(1.0, -kTwoPi * spec.center_frequency * delay);
}

// Received samples of one snapshot and, optionally, its CIR.
void synthesize(const std::vector<Path>& paths, const waveform::ReferenceSymbol& reference,
                const waveform::WaveformSpec& spec, double noise_var, std::mt19937_64& rng,
                double timestamp, bool keep_samples, bool estimate,
                std::vector<cdouble>* samples_out, waveform::CIRSnapshot* cir_out) {
    const std::size_t n = reference.size();
    const double fs = spec.sample_rate();
    std::vector<cdouble> channel(n, cdouble{});
    for (const auto& p : paths) waveform::add_path(channel, p.gain, p.delay * fs);
    for (std::size_t k = 0; k < n; ++k) channel[k] *= reference.spectrum[k];
    auto samples = waveform::unitary_idft(channel);
    if (noise_var > 0.0)
        for (auto& s : samples) s += complex_gaussian(rng, noise_var);
    if (estimate) *cir_out = waveform::estimate_cir(samples, reference, 1.0 / fs, timestamp);
    if (keep_samples) *samples_out = std::move(samples);
}

void check_snapshots(const waveform::WaveformSpec& spec, std::size_t n_snapshots,
                     double snapshot_interval) {
    if (n_snapshots == 0) throw InvalidArgument("capture needs at least one snapshot");
    if (snapshot_interval < spec.symbol_length * (1.0 - 1e-12))
        throw ValidationError("capture.snapshot_interval",
                              "snapshot interval shorter than the symbol length");
}

double clock_error(const std::vector<ClockState>& clocks, std::size_t r, double t) {
    return clocks.empty() ? 0.0 : clocks.at(r).error_at(t);
}

CaptureResult prepare(const ScenarioConfig& scene, const waveform::WaveformSpec& spec, double t0,
                      std::size_t n_snapshots, double snapshot_interval,
                      const std::vector<ClockState>& clocks, const CaptureOptions& options) {
    waveform::validate(spec);
    check_snapshots(spec, n_snapshots, snapshot_interval);
    const double t_end = t0 + static_cast<double>(n_snapshots - 1) * snapshot_interval;
    if (!scene.trajectory.covers(t0, t_end))
        throw InvalidArgument("trajectory does not cover the capture interval");
    const auto rx = scene.receivers();
    if (!clocks.empty() && clocks.size() != rx.size())
        throw InvalidArgument("one clock state per receiver expected");

    CaptureResult result;
    result.spec = spec;
    result.times.resize(n_snapshots);
    for (std::size_t i = 0; i < n_snapshots; ++i)
        result.times[i] = t0 + static_cast<double>(i) * snapshot_interval;
    result.receivers.resize(rx.size());
    for (std::size_t r = 0; r < rx.size(); ++r) {
        auto& out = result.receivers[r];
        out.rx_id = rx[r]->id;
        out.true_delay.resize(n_snapshots);
        out.true_clock_error.resize(n_snapshots);
        if (options.estimate_cirs) out.cirs.resize(n_snapshots);
        if (options.keep_samples) out.samples.resize(n_snapshots);
    }
    return result;
}

}  // namespace

const ReceiverCapture& CaptureResult::receiver(const std::string& id) const {
    for (const auto& r : receivers)
        if (r.rx_id == id) return r;
    throw InvalidArgument("no receiver '" + id + "' in capture");
}

std::vector<std::vector<ClutterPath>> clutter_from_scenario(const ScenarioConfig& scene) {
    const auto rx = scene.receivers();
    std::vector<std::vector<ClutterPath>> out(rx.size());
    for (const auto& tap : scene.clutter)
        for (std::size_t r = 0; r < rx.size(); ++r)
            if (!tap.rx || *tap.rx == rx[r]->id)
                out[r].push_back({tap.delay, std::polar(db_to_amplitude(tap.gain_db),
                                                        tap.phase_deg * kPi / 180.0)});
    return out;
}

double radar_target_amplitude(const ScenarioConfig& scene, const scene::Node& rx,
                              const Position3& target) {
    const auto& tx = scene.transmitter();
    const double d1 = scene::distance(tx.position, target);
    const double d2 = scene::distance(target, rx.position);
    const double p_mw = pathloss(tx.eirp_dbm.value_or(0.0), scene.waveform.wavelength(), d1, d2,
                                 scene.link.reflectivity_dbsm);
    const double gain_db = mw_to_dbm(p_mw) - scene.link.reference_power_dbm +
                           scene::antenna_gain(tx.antenna, tx.position, target) +
                           scene::antenna_gain(rx.antenna, rx.position, target);
    return db_to_amplitude(gain_db);
}

CaptureResult simulate_radar_capture(const ScenarioConfig& scene, const waveform::WaveformSpec& spec,
                                     double t0, std::size_t n_snapshots, double snapshot_interval,
                                     double snr_db,
                                     const std::vector<std::vector<ClutterPath>>& clutter,
                                     const std::vector<ClockState>& clocks,
                                     const CaptureOptions& options) {
    if (scene.mode != scene::Mode::Radar)
        throw ValidationError("mode", "radar capture needs a radar-mode scenario");
    auto result = prepare(scene, spec, t0, n_snapshots, snapshot_interval, clocks, options);
    const auto rx = scene.receivers();
    if (!clutter.empty() && clutter.size() != rx.size())
        throw InvalidArgument("one clutter list per receiver expected");
    const auto& tx = scene.transmitter();
    const auto reference = waveform::synth_symbol(spec);
    const double noise_var = noise_variance(snr_db);

    parallel_for(rx.size() * n_snapshots, options.workers, [&](std::size_t job) {
        const std::size_t r = job / n_snapshots;
        const std::size_t i = job % n_snapshots;
        const double t = result.times[i];
        const auto& node = *rx[r];
        const double clk = clock_error(clocks, r, t);

        std::vector<Path> paths;
        const double direct = scene::los_delay(tx.position, node.position);
        const double direct_db = scene.link.direct_path_gain_db +
                                 scene::antenna_gain(tx.antenna, tx.position, node.position) +
                                 scene::antenna_gain(node.antenna, node.position, tx.position);
        paths.push_back({direct + clk, db_to_amplitude(direct_db) * carrier_rotation(direct, spec)});
        if (!clutter.empty())
            for (const auto& c : clutter[r])
                paths.push_back({c.delay + clk, c.complex_gain});
        const Position3 target = scene::sample_trajectory(scene.trajectory, t);
        const double target_delay = scene::bistatic_delay(tx.position, target, node.position);
        if (!options.target_muted)
            paths.push_back({target_delay + clk, radar_target_amplitude(scene, node, target) *
                                                     carrier_rotation(target_delay, spec)});

        auto& out = result.receivers[r];
        out.true_delay[i] = target_delay;
        out.true_clock_error[i] = clk;
        auto rng = make_stream(options.seed, StreamKind::CaptureNoise, {options.stream_id, r, i});
        synthesize(paths, reference, spec, noise_var, rng, t, options.keep_samples,
                   options.estimate_cirs, options.keep_samples ? &out.samples[i] : nullptr,
                   options.estimate_cirs ? &out.cirs[i] : nullptr);
    });
    return result;
}

CaptureResult simulate_emitter_capture(const ScenarioConfig& scene,
                                       const waveform::WaveformSpec& spec, double t0,
                                       std::size_t n_snapshots, double snapshot_interval,
                                       double snr_db, const std::vector<ClockState>& clocks,
                                       const CaptureOptions& options) {
    if (scene.mode != scene::Mode::Emitter)
        throw ValidationError("mode", "emitter capture needs an emitter-mode scenario");
    auto result = prepare(scene, spec, t0, n_snapshots, snapshot_interval, clocks, options);
    const auto rx = scene.receivers();
    const auto reference = waveform::synth_symbol(spec);
    const double noise_var = noise_variance(snr_db);

    parallel_for(rx.size() * n_snapshots, options.workers, [&](std::size_t job) {
        const std::size_t r = job / n_snapshots;
        const std::size_t i = job % n_snapshots;
        const double t = result.times[i];
        const double clk = clock_error(clocks, r, t);
        const Position3 uav = scene::sample_trajectory(scene.trajectory, t);
        const double los = scene::los_delay(uav, rx[r]->position);
        const std::vector<Path> paths{{los + clk, carrier_rotation(los, spec)}};

        auto& out = result.receivers[r];
        out.true_delay[i] = los;
        out.true_clock_error[i] = clk;
        auto rng = make_stream(options.seed, StreamKind::CaptureNoise, {options.stream_id, r, i});
        synthesize(paths, reference, spec, noise_var, rng, t, options.keep_samples,
                   options.estimate_cirs, options.keep_samples ? &out.samples[i] : nullptr,
                   options.estimate_cirs ? &out.cirs[i] : nullptr);
    });
    return result;
}

double strongest_path_delay(const waveform::CIRSnapshot& cir) {
    const std::size_t n = cir.size();
    if (n == 0) throw InvalidArgument("empty CIR");
    std::size_t best = 0;
    for (std::size_t m = 1; m < n; ++m)
        if (std::norm(cir.taps[m]) > std::norm(cir.taps[best])) best = m;
    const auto spectrum = waveform::cir_spectrum(cir);
    double loc = waveform::refine_peak(spectrum, cir.taps, best).location;
    const double period = static_cast<double>(n);
    loc = std::fmod(loc, period);
    if (loc < 0.0) loc += period;
    if (loc > period / 2.0) loc -= period;
    return loc * cir.delay_resolution;
}

BeaconMeasurements simulate_beacon_delays(const ScenarioConfig& scene,
                                          const Position3& beacon_position,
                                          const std::vector<ClockState>& rx_clocks,
                                          const ClockState& beacon_clock, double t0,
                                          double duration, double interval, double snr_db,
                                          const CaptureOptions& options) {
    if (!(interval > 0.0) || !(duration >= 0.0))
        throw InvalidArgument("beacon interval must be positive and duration non-negative");
    const auto rx = scene.receivers();
    if (!rx_clocks.empty() && rx_clocks.size() != rx.size())
        throw InvalidArgument("one clock state per receiver expected");
    const auto& spec = scene.waveform;
    const auto reference = waveform::synth_symbol(spec);
    const double noise_var = noise_variance(snr_db);
    const auto n_times = static_cast<std::size_t>(std::floor(duration / interval + 1e-9)) + 1;

    BeaconMeasurements out;
    out.times.resize(n_times);
    for (std::size_t i = 0; i < n_times; ++i) out.times[i] = t0 + static_cast<double>(i) * interval;
    for (const auto* node : rx) out.rx_ids.push_back(node->id);
    out.delays.assign(rx.size(), std::vector<double>(n_times));

    parallel_for(rx.size() * n_times, options.workers, [&](std::size_t job) {
        const std::size_t r = job / n_times;
        const std::size_t i = job % n_times;
        const double t = out.times[i];
        const double los = scene::los_delay(beacon_position, rx[r]->position);
        const double shift = clock_error(rx_clocks, r, t) + beacon_clock.error_at(t);
        const std::vector<Path> paths{{los + shift, carrier_rotation(los, spec)}};
        auto rng = make_stream(options.seed, StreamKind::BeaconNoise, {options.stream_id, r, i});
        waveform::CIRSnapshot cir;
        synthesize(paths, reference, spec, noise_var, rng, t, false, true, nullptr, &cir);
        out.delays[r][i] = strongest_path_delay(cir);
    });
    return out;
}

}  // namespace uavtwin::airsim
