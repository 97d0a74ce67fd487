#include "uavtwin/emitter/pipeline.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/common/parallel.hpp"

namespace uavtwin::emitter {

std::vector<TdoaMeasurement> snapshot_tdoas(const airsim::CaptureResult& capture, std::size_t snapshot,
                                            double search_window,
                                            const sync::ReceiverCorrections& corrections) {
    const auto& rx = capture.receivers;
    const double t = capture.times.at(snapshot);
    std::vector<TdoaMeasurement> out;
    for (std::size_t a = 0; a < rx.size(); ++a) {
        if (rx[a].samples.size() <= snapshot)
            throw InvalidArgument("emitter pipeline needs raw samples in the capture");
        for (std::size_t b = a + 1; b < rx.size(); ++b) {
            const auto x = xcorr_tdoa(rx[a].samples[snapshot], rx[b].samples.at(snapshot),
                                      capture.spec.sample_rate(), search_window);
            const double tdoa = x.tdoa - (corrections.at(b, t) - corrections.at(a, t));
            out.push_back({rx[a].rx_id, rx[b].rx_id, tdoa, x.peak_quality_db, t});
        }
    }
    return out;
}

std::vector<EmitterFix> run_emitter_pipeline(const airsim::CaptureResult& capture,
                                             const scene::ScenarioConfig& scene,
                                             const sync::ReceiverCorrections& sync_offsets,
                                             std::size_t workers) {
    if (scene.mode != scene::Mode::Emitter)
        throw ValidationError("mode", "emitter pipeline needs an emitter-mode scenario");
    const auto& ec = scene.emitter;
    RxPositions positions;
    for (const auto* node : scene.receivers()) positions[node->id] = node->position;
    const std::string reference = ec.reference_rx.value_or(capture.receivers.front().rx_id);

    std::vector<EmitterFix> fixes(capture.times.size());
    parallel_for(fixes.size(), workers, [&](std::size_t i) {
        fixes[i].time = capture.times[i];
        fixes[i].truth = scene::sample_trajectory(scene.trajectory, capture.times[i]);
        fixes[i].tdoas = snapshot_tdoas(capture, i, ec.search_window, sync_offsets);
    });

    HyperbolicOptions ho;
    ho.altitude = ec.altitude_constraint;
    std::optional<scene::Position3> previous;
    for (auto& f : fixes) {
        scene::Position3 guess;
        if (previous) {
            guess = *previous;
        } else {
            const auto referenced = reference_tdoas(f.tdoas, reference);
            const auto cost = [&](const scene::Position3& p) {
                return hyperbolic_cost(referenced, positions, reference, p);
            };
            guess = scene::coarse_grid_minimum(cost, ec.area.min, ec.area.max, ec.area.coarse_step,
                                               ho.altitude ? &*ho.altitude : nullptr);
        }
        auto fix = hyperbolic_ls(f.tdoas, positions, reference, guess, ho);
        fix.timestamp = f.time;
        f.horizontal_error = (fix.position - f.truth).horizontal_norm();
        f.fix = fix;
        previous = fix.position;
    }
    return fixes;
}

}  // namespace uavtwin::emitter
