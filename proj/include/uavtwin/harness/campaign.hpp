#pragma once

#include "uavtwin/airsim/capture.hpp"
#include "uavtwin/harness/report.hpp"
#include "uavtwin/scene/scenario.hpp"
#include "uavtwin/sync/sync.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace uavtwin::harness {

struct CampaignOptions {
    std::optional<scene::Mode> mode;       // must agree with the scenario when set
    std::uint64_t seed = 0;
    std::filesystem::path output_dir;      // nothing is written when empty
    std::optional<std::size_t> snapshots;  // overrides capture.epochs
    std::optional<double> snr_db;          // overrides capture.snr_db
    std::size_t workers = 1;
};

/// Beacon calibration data: simulated clocks and the per-receiver delay
/// series measured from the beacon.
struct SyncStudy {
    std::vector<std::string> rx_ids;
    std::vector<scene::Position3> rx_positions;
    std::vector<airsim::ClockState> clocks;
    std::vector<TimeSeries> delays;  // per receiver, measured beacon delays
    std::vector<double> geometric;   // per receiver, los_delay(beacon, rx)
    scene::Position3 beacon;
};

struct SyncResult {
    sync::ReceiverCorrections corrections;
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<sync::TimeErrorSeries> raw_pairs;          // pairwise TDoA error, uncompensated
    std::vector<sync::TimeErrorSeries> compensated_pairs;
    double raw_variance = 0.0;          // s^2, mean over receiver pairs
    double compensated_variance = 0.0;  // s^2
};

/// Simulates calibration_duration seconds of 1 Hz beacon measurements ending
/// at `end_time` with clocks whose series also cover up to `clock_end`.
/// Throws ValidationError when the scenario has no beacon or clocks disabled.
SyncStudy simulate_sync_study(const scene::ScenarioConfig& scene, std::uint64_t seed,
                              double end_time, double clock_end, std::size_t workers = 1);

/// Calibration with a rectangular GNSS filter of `window` seconds.
SyncResult evaluate_sync(const SyncStudy& study, double window);

struct SweepRow {
    double window = 0.0;    // s
    double variance = 0.0;  // s^2, compensated pairwise TDoA
    bool best = false;
};

struct SweepResult {
    double raw_variance = 0.0;
    std::vector<SweepRow> rows;
    std::size_t best_index = 0;
};

SweepResult sweep_filter_window(const SyncStudy& study, const std::vector<double>& windows);
SweepResult sweep_filter_window(const std::filesystem::path& scenario_path,
                                const std::vector<double>& windows, std::uint64_t seed = 0,
                                std::size_t workers = 1);
/// window_s,variance_s2,best
void write_sweep_csv(const SweepResult& sweep, const std::filesystem::path& path);

/// airsim -> sync calibration (when a beacon is configured) -> radar or
/// emitter pipeline; writes fixes.csv, errors.csv, summary.txt and the
/// mode-specific detections.csv / epochs.csv or tdoa.csv / offsets.csv.
CampaignReport run_campaign(const scene::ScenarioConfig& scene, const CampaignOptions& options);
CampaignReport run_campaign(const std::filesystem::path& scenario_path, const CampaignOptions& options);

/// Beacon calibration only; writes offsets.csv, per-receiver gnss_raw_<id>.csv
/// and per-pair tdoa_raw/tdoa_compensated_<a>_<b>.csv time-error series.
SyncResult run_calibration(const scene::ScenarioConfig& scene, const CampaignOptions& options);

/// Contiguous capture of `snapshots` symbols per receiver written as
/// rx_<id>.cf32 IQ recordings plus truth.csv.
void simulate_recording(const scene::ScenarioConfig& scene, const CampaignOptions& options);

}  // namespace uavtwin::harness
