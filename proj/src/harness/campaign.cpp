#include "uavtwin/harness/campaign.hpp"

#include "uavtwin/common/csv.hpp"
#include "uavtwin/common/errors.hpp"
#include "uavtwin/emitter/pipeline.hpp"
#include "uavtwin/harness/iq_file.hpp"
#include "uavtwin/radar/pipeline.hpp"
#include "uavtwin/sync/series_io.hpp"

#include <algorithm>
#include <cmath>

namespace uavtwin::harness {

using scene::ScenarioConfig;

namespace {

constexpr std::uint64_t kBeaconClockIndex = 1000;

void check_mode(const ScenarioConfig& scene, const CampaignOptions& options) {
    if (options.mode && *options.mode != scene.mode)
        throw ValidationError("mode", std::string("scenario is ") + scene::to_string(scene.mode) +
                                          ", requested " + scene::to_string(*options.mode));
}

void prepare_output(const CampaignOptions& options) {
    if (options.output_dir.empty()) return;
    std::error_code ec;
    std::filesystem::create_directories(options.output_dir, ec);
    if (ec) throw RuntimeFailure("cannot create " + options.output_dir.string() + ": " + ec.message());
}

void write_offsets_csv(const std::vector<sync::OffsetEstimate>& offsets, const std::filesystem::path& path) {
    CsvWriter out(path, {"receiver", "constant_offset_s", "residual_std_s"});
    for (const auto& o : offsets) {
        out.field(o.rx_id).field(o.constant_offset).field(o.residual_std);
        out.end_row();
    }
}

double mean_variance(const std::vector<sync::TimeErrorSeries>& series) {
    if (series.empty()) return 0.0;
    double sum = 0.0;
    for (const auto& s : series) sum += variance(s.value);
    return sum / static_cast<double>(series.size());
}

void attach_sync(CampaignReport& report, const SyncResult& sr) {
    report.raw_tdoa_std = std::sqrt(sr.raw_variance);
    report.compensated_tdoa_std = std::sqrt(sr.compensated_variance);
}

// Clocks and corrections for a capture over [t0, t_end].
struct ClockSetup {
    std::vector<airsim::ClockState> clocks;
    sync::ReceiverCorrections corrections;
    std::optional<SyncResult> sync;
};

ClockSetup setup_clocks(const ScenarioConfig& scene, const CampaignOptions& options, double t0,
                        double t_end) {
    ClockSetup setup;
    if (!scene.clock.enabled) return setup;
    if (scene.sync.beacon) {
        const auto study = simulate_sync_study(scene, options.seed, t0, t_end, options.workers);
        setup.sync = evaluate_sync(study, scene.sync.filter_window);
        setup.clocks = study.clocks;
        setup.corrections = setup.sync->corrections;
    } else {
        const double span = std::max(t_end - t0, scene.clock.sample_interval);
        setup.clocks = airsim::scenario_clocks(scene, options.seed, span, t0);
    }
    return setup;
}

CampaignReport run_emitter_campaign(const ScenarioConfig& scene, const CampaignOptions& options) {
    const auto& cap = scene.capture;
    const std::size_t n = options.snapshots.value_or(cap.epochs);
    if (n == 0) throw InvalidArgument("campaign needs at least one snapshot");
    const double t_end = cap.t0 + static_cast<double>(n - 1) * cap.epoch_interval;
    const auto clocks = setup_clocks(scene, options, cap.t0, t_end);

    airsim::CaptureOptions co;
    co.seed = options.seed;
    co.keep_samples = true;
    co.estimate_cirs = false;
    co.workers = options.workers;
    const auto capture = airsim::simulate_emitter_capture(scene, scene.waveform, cap.t0, n, cap.epoch_interval,
                                                          options.snr_db.value_or(cap.snr_db),
                                                          clocks.clocks, co);
    const auto fixes = emitter::run_emitter_pipeline(capture, scene, clocks.corrections, options.workers);

    CampaignReport report;
    report.scenario = scene.name;
    report.mode = scene::to_string(scene.mode);
    report.seed = options.seed;
    report.epochs = n;
    for (const auto& f : fixes)
        if (f.fix) report.fixes.push_back({f.time, f.fix->position, f.truth, f.fix->residual_norm});
    if (clocks.sync) attach_sync(report, *clocks.sync);
    report.finalize();

    if (!options.output_dir.empty()) {
        CsvWriter tdoa(options.output_dir / "tdoa.csv",
                       {"timestamp", "rx_a", "rx_b", "tdoa_s", "peak_quality_db"});
        for (const auto& f : fixes)
            for (const auto& m : f.tdoas) {
                tdoa.field(m.timestamp).field(m.rx_a).field(m.rx_b).field(m.tdoa).field(m.peak_quality_db);
                tdoa.end_row();
            }
        if (clocks.sync) write_offsets_csv(clocks.sync->corrections.offsets, options.output_dir / "offsets.csv");
    }
    return report;
}

CampaignReport run_radar_campaign(const ScenarioConfig& scene, const CampaignOptions& options) {
    const auto& cap = scene.capture;
    radar::RadarRunOptions ro;
    ro.seed = options.seed;
    ro.workers = options.workers;
    ro.epochs = options.snapshots;
    ro.snr_db = options.snr_db;
    const std::size_t n = options.snapshots.value_or(cap.epochs);
    std::optional<SyncResult> sync;
    if (scene.clock.enabled && scene.sync.beacon) {
        // Beacon calibration before the flight; the radar pipeline then uses
        // the corrections for the receivers' own clock errors.
        const double t_end = cap.t0 + static_cast<double>(n) * cap.epoch_interval + scene.burst_duration();
        const auto study = simulate_sync_study(scene, options.seed, cap.t0, t_end, options.workers);
        sync = evaluate_sync(study, scene.sync.filter_window);
        ro.corrections = sync->corrections;
    }
    const auto run = radar::run_radar_pipeline(scene, ro);

    CampaignReport report;
    report.scenario = scene.name;
    report.mode = scene::to_string(scene.mode);
    report.seed = options.seed;
    report.epochs = run.epochs.size();
    for (const auto& e : run.epochs)
        if (e.fix) report.fixes.push_back({e.time, e.fix->position, e.truth, e.fix->residual_norm});
    report.in_beam_fraction = run.in_beam_fraction;
    if (sync) attach_sync(report, *sync);
    report.finalize();

    if (!options.output_dir.empty()) {
        CsvWriter det(options.output_dir / "detections.csv", {"timestamp", "receiver", "delay_s", "amplitude"});
        for (const auto& e : run.epochs)
            for (const auto& d : e.detections) {
                det.field(d.snapshot_time).field(d.receiver).field(d.delay).field(d.amplitude);
                det.end_row();
            }
        CsvWriter ep(options.output_dir / "epochs.csv",
                     {"timestamp", "true_east", "true_north", "true_up", "in_beam", "fix", "receivers"});
        for (const auto& e : run.epochs) {
            std::string used;
            for (const auto& id : e.fused_receivers) used += (used.empty() ? "" : ";") + id;
            ep.field(e.time).field(e.truth.east).field(e.truth.north).field(e.truth.up);
            ep.field(static_cast<long long>(e.in_beam)).field(static_cast<long long>(e.fix.has_value()));
            ep.field(used);
            ep.end_row();
        }
        if (sync) write_offsets_csv(sync->corrections.offsets, options.output_dir / "offsets.csv");
    }
    return report;
}

}  // namespace

SyncStudy simulate_sync_study(const ScenarioConfig& scene, std::uint64_t seed, double end_time,
                              double clock_end, std::size_t workers) {
    if (!scene.sync.beacon) throw ValidationError("sync.beacon", "sync calibration needs a beacon node");
    if (!scene.clock.enabled) throw ValidationError("clock.enabled", "sync calibration needs clock impairments");
    const double duration = scene.sync.calibration_duration;
    const double start = end_time - duration;
    const double span = std::max(clock_end, end_time) - start;
    const auto model = airsim::clock_model(scene);

    SyncStudy study;
    study.beacon = scene.node(*scene.sync.beacon).position;
    study.clocks = airsim::scenario_clocks(scene, seed, span, start);
    const auto beacon_clock = airsim::gen_clock_state(seed, kBeaconClockIndex, model, span, start);
    airsim::CaptureOptions co;
    co.seed = seed;
    co.workers = workers;
    const auto meas = airsim::simulate_beacon_delays(scene, study.beacon, study.clocks, beacon_clock, start,
                                                     duration, model.sample_interval, scene.sync.snr_db, co);
    const auto rx = scene.receivers();
    study.rx_ids = meas.rx_ids;
    for (std::size_t r = 0; r < rx.size(); ++r) {
        study.delays.push_back({meas.times, meas.delays[r]});
        study.rx_positions.push_back(rx[r]->position);
        study.geometric.push_back(scene::los_delay(study.beacon, rx[r]->position));
    }
    return study;
}

SyncResult evaluate_sync(const SyncStudy& study, double window) {
    SyncResult result;
    std::vector<sync::ReceiverSite> sites;
    for (std::size_t r = 0; r < study.rx_ids.size(); ++r) {
        sites.push_back({study.rx_ids[r], study.rx_positions[r]});
        result.corrections.filtered_gnss.push_back(sync::rect_lowpass(study.clocks[r].gnss_raw_error, window));
    }
    result.corrections.offsets =
        sync::beacon_calibrate(study.beacon, sites, study.delays, result.corrections.filtered_gnss);
    const auto compensated =
        sync::compensate(study.delays, result.corrections.offsets, result.corrections.filtered_gnss);
    for (std::size_t i = 0; i < study.rx_ids.size(); ++i)
        for (std::size_t j = i + 1; j < study.rx_ids.size(); ++j) {
            result.pairs.emplace_back(i, j);
            result.raw_pairs.push_back(
                sync::pairwise_tdoa(study.delays[i], study.delays[j], study.geometric[i], study.geometric[j]));
            result.compensated_pairs.push_back(
                sync::pairwise_tdoa(compensated[i], compensated[j], study.geometric[i], study.geometric[j]));
        }
    result.raw_variance = mean_variance(result.raw_pairs);
    result.compensated_variance = mean_variance(result.compensated_pairs);
    return result;
}

SweepResult sweep_filter_window(const SyncStudy& study, const std::vector<double>& windows) {
    if (windows.empty()) throw InvalidArgument("filter sweep needs at least one window");
    SweepResult sweep;
    for (const double w : windows) {
        const auto r = evaluate_sync(study, w);
        sweep.raw_variance = r.raw_variance;
        sweep.rows.push_back({w, r.compensated_variance, false});
    }
    for (std::size_t i = 1; i < sweep.rows.size(); ++i)
        if (sweep.rows[i].variance < sweep.rows[sweep.best_index].variance) sweep.best_index = i;
    sweep.rows[sweep.best_index].best = true;
    return sweep;
}

SweepResult sweep_filter_window(const std::filesystem::path& scenario_path, const std::vector<double>& windows,
                                std::uint64_t seed, std::size_t workers) {
    const auto scene = scene::load_scenario(scenario_path);
    const double t0 = scene.capture.t0;
    return sweep_filter_window(simulate_sync_study(scene, seed, t0, t0, workers), windows);
}

void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path) {
    CsvWriter out(path, {"window_s", "variance_s2", "best"});
    for (const auto& row : sweep.rows) {
        out.field(row.window).field(row.variance).field(static_cast<long long>(row.best));
        out.end_row();
    }
}

CampaignReport run_campaign(const ScenarioConfig& scene, const CampaignOptions& options) {
    check_mode(scene, options);
    prepare_output(options);
    auto report = scene.mode == scene::Mode::Emitter ? run_emitter_campaign(scene, options)
                                                     : run_radar_campaign(scene, options);
    if (!options.output_dir.empty()) {
        write_fixes_csv(report.fixes, options.output_dir / "fixes.csv");
        write_errors_csv(report.fixes, options.output_dir / "errors.csv");
        write_summary(report, options.output_dir / "summary.txt");
    }
    return report;
}

CampaignReport run_campaign(const std::filesystem::path& scenario_path, const CampaignOptions& options) {
    return run_campaign(scene::load_scenario(scenario_path), options);
}

SyncResult run_calibration(const ScenarioConfig& scene, const CampaignOptions& options) {
    prepare_output(options);
    const double t0 = scene.capture.t0;
    const auto study = simulate_sync_study(scene, options.seed, t0, t0, options.workers);
    auto result = evaluate_sync(study, scene.sync.filter_window);
    if (!options.output_dir.empty()) {
        const auto& dir = options.output_dir;
        write_offsets_csv(result.corrections.offsets, dir / "offsets.csv");
        for (std::size_t r = 0; r < study.rx_ids.size(); ++r)
            sync::write_time_error_csv(study.clocks[r].gnss_raw_error, dir / ("gnss_raw_" + study.rx_ids[r] + ".csv"));
        for (std::size_t p = 0; p < result.pairs.size(); ++p) {
            const std::string tag = study.rx_ids[result.pairs[p].first] + "_" + study.rx_ids[result.pairs[p].second];
            sync::write_time_error_csv(result.raw_pairs[p], dir / ("tdoa_raw_" + tag + ".csv"));
            sync::write_time_error_csv(result.compensated_pairs[p], dir / ("tdoa_compensated_" + tag + ".csv"));
        }
        CampaignReport report;
        report.scenario = scene.name;
        report.mode = "calibrate";
        report.seed = options.seed;
        attach_sync(report, result);
        write_summary(report, dir / "summary.txt");
    }
    return result;
}

void simulate_recording(const ScenarioConfig& scene, const CampaignOptions& options) {
    check_mode(scene, options);
    prepare_output(options);
    const auto& spec = scene.waveform;
    const auto& cap = scene.capture;
    const std::size_t n = options.snapshots.value_or(cap.epochs);
    if (n == 0) throw InvalidArgument("recording needs at least one snapshot");
    const double t_end = cap.t0 + static_cast<double>(n) * spec.symbol_length;
    const auto clocks = setup_clocks(scene, options, cap.t0, t_end);

    airsim::CaptureOptions co;
    co.seed = options.seed;
    co.keep_samples = true;
    co.estimate_cirs = false;
    co.workers = options.workers;
    const double snr = options.snr_db.value_or(cap.snr_db);
    const auto capture =
        scene.mode == scene::Mode::Radar
            ? airsim::simulate_radar_capture(scene, spec, cap.t0, n, spec.symbol_length, snr,
                                             airsim::clutter_from_scenario(scene), clocks.clocks, co)
            : airsim::simulate_emitter_capture(scene, spec, cap.t0, n, spec.symbol_length, snr, clocks.clocks, co);
    if (options.output_dir.empty()) return;

    CsvWriter truth(options.output_dir / "truth.csv", {"timestamp", "receiver", "true_delay_s", "clock_error_s"});
    for (const auto& rx : capture.receivers) {
        IQStream stream;
        stream.sample_rate = spec.sample_rate();
        stream.epoch = cap.t0;
        for (const auto& snap : rx.samples)
            for (const auto& s : snap)
                stream.samples.emplace_back(static_cast<float>(s.real()), static_cast<float>(s.imag()));
        write_iq(stream, options.output_dir / ("rx_" + rx.rx_id + ".cf32"));
        for (std::size_t i = 0; i < capture.times.size(); ++i) {
            truth.field(capture.times[i]).field(rx.rx_id).field(rx.true_delay[i]).field(rx.true_clock_error[i]);
            truth.end_row();
        }
    }
}

}  // namespace uavtwin::harness
