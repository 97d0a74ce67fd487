#include "uavtwin/radar/pipeline.hpp"

#include "uavtwin/airsim/capture.hpp"
#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/parallel.hpp"
#include "uavtwin/radar/processing.hpp"
#include "uavtwin/radar/tracker.hpp"

#include <algorithm>

namespace uavtwin::radar {

using scene::ScenarioConfig;

bool target_in_beam(const ScenarioConfig& scene, const scene::Position3& target) {
    const auto& tx = scene.transmitter();
    if (!scene::in_beam(tx.antenna, tx.position, target)) return false;
    std::size_t visible = 0;
    for (const auto* rx : scene.receivers())
        if (scene::in_beam(rx->antenna, rx->position, target)) ++visible;
    return visible >= (scene.radar.altitude_constraint ? 2u : 3u);
}

RadarRun run_radar_pipeline(const ScenarioConfig& scene, const RadarRunOptions& options) {
    if (scene.mode != scene::Mode::Radar)
        throw ValidationError("mode", "radar pipeline needs a radar-mode scenario");
    const auto& cap = scene.capture;
    const auto& rc = scene.radar;
    const std::size_t n_epochs = options.epochs.value_or(cap.epochs);
    const double snr_db = options.snr_db.value_or(cap.snr_db);
    const std::size_t burst = (rc.canceler_order + 1) * rc.average_k;
    const auto rx = scene.receivers();
    if (n_epochs == 0) throw InvalidArgument("radar run needs at least one epoch");

    const double t_last = cap.t0 + static_cast<double>(n_epochs - 1) * cap.epoch_interval +
                          scene.burst_duration();
    const auto clocks = scene.clock.enabled
                            ? airsim::scenario_clocks(scene, options.seed, t_last - cap.t0, cap.t0)
                            : std::vector<airsim::ClockState>{};
    const auto clutter = airsim::clutter_from_scenario(scene);
    const MlOptions ml{rc.max_targets, rc.threshold_db, rc.refinement_sweeps};

    RadarRun run;
    run.epochs.resize(n_epochs);
    // Capture and per-burst estimation are independent across epochs.
    parallel_for(n_epochs, options.workers, [&](std::size_t e) {
        const double t0 = cap.t0 + static_cast<double>(e) * cap.epoch_interval;
        airsim::CaptureOptions co;
        co.seed = options.seed;
        co.stream_id = e;
        const auto capture = airsim::simulate_radar_capture(scene, scene.waveform, t0, burst,
                                                            cap.snapshot_interval, snr_db, clutter,
                                                            clocks, co);
        auto& epoch = run.epochs[e];
        for (std::size_t r = 0; r < rx.size(); ++r) {
            const auto averaged = average_snapshots(capture.receivers[r].cirs, rc.average_k);
            const auto cancelled = delay_line_canceler(averaged, rc.canceler_order);
            const auto& cir = cancelled.back();
            epoch.time = 0.5 * (capture.times.front() + capture.times.back());
            for (auto d : ml_delay_estimate(cir, ml, rx[r]->id)) {
                d.snapshot_time = epoch.time;
                d.delay -= options.corrections.at(r, epoch.time);
                epoch.detections.push_back(d);
            }
        }
        epoch.truth = scene::sample_trajectory(scene.trajectory, epoch.time);
        epoch.in_beam = target_in_beam(scene, epoch.truth);
    });

    // Tracking and fusion are sequential state machines.
    std::vector<TrackerState> trackers(rx.size());
    const auto& tx = scene.transmitter();
    std::size_t fixes = 0, visible = 0;
    for (std::size_t e = 0; e < n_epochs; ++e) {
        auto& epoch = run.epochs[e];
        std::vector<RxDelay> delays;
        for (std::size_t r = 0; r < rx.size(); ++r) {
            std::vector<DelayDetection> mine;
            for (const auto& d : epoch.detections)
                if (d.receiver == rx[r]->id) mine.push_back(d);
            auto step = track_step(trackers[r], mine, cap.epoch_interval, rc.tracker);
            trackers[r] = std::move(step.state);
            if (step.confirmed.empty()) continue;
            const auto best = std::max_element(
                step.confirmed.begin(), step.confirmed.end(), [](const auto& a, const auto& b) {
                    return a.hits != b.hits ? a.hits < b.hits : a.track_id > b.track_id;
                });
            delays.push_back({rx[r]->position, best->delay});
            epoch.fused_receivers.push_back(rx[r]->id);
        }
        const std::size_t needed = rc.altitude_constraint ? 2 : 3;
        if (delays.size() >= needed) {
            LocalizeOptions lo;
            lo.altitude = rc.altitude_constraint;
            const auto guess = bistatic_initial_guess(tx.position, delays, rc.volume, lo.altitude);
            auto fix = localize_bistatic(tx.position, delays, guess, lo);
            fix.timestamp = epoch.time;
            epoch.fix = fix;
            ++fixes;
        }
        if (epoch.in_beam) ++visible;
    }
    run.detection_fraction = static_cast<double>(fixes) / static_cast<double>(n_epochs);
    run.in_beam_fraction = static_cast<double>(visible) / static_cast<double>(n_epochs);
    return run;
}

}  // namespace uavtwin::radar
