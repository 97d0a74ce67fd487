#pragma once

#include "uavtwin/scene/geometry.hpp"
#include "uavtwin/waveform/spec.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace uavtwin::scene {

inline constexpr int kScenarioSchemaVersion = 1;

enum class Mode { Radar, Emitter };
enum class Role { Tx, Rx, Beacon, Mobile };

const char* to_string(Mode mode);
const char* to_string(Role role);

struct Node {
    std::string id;
    Role role = Role::Rx;
    Position3 position;               // ignored for the mobile node (see trajectory)
    Antenna antenna;
    std::optional<double> eirp_dbm;   // required for transmitting roles

    bool operator==(const Node&) const = default;
};

/// Geodetic anchor of the ENU frame. Carried for bookkeeping only.
struct GeodeticOrigin {
    double latitude_deg = 0.0;
    double longitude_deg = 0.0;
    double altitude_m = 0.0;

    bool operator==(const GeodeticOrigin&) const = default;
};

/// Axis-aligned search box used to seed the localizers.
struct SearchVolume {
    Position3 min{-500.0, -500.0, 0.0};
    Position3 max{500.0, 500.0, 100.0};
    double coarse_step = 10.0;  // m

    bool operator==(const SearchVolume&) const = default;
};

/// Capture timing. A radar epoch is a burst of (canceler_order + 1) *
/// average_k consecutive snapshots; an emitter epoch is one snapshot.
struct CaptureConfig {
    double t0 = 0.0;                  // s, first epoch
    std::size_t epochs = 100;
    double epoch_interval = 0.1;      // s between epoch starts
    double snapshot_interval = 16e-6; // s between snapshots inside a burst
    double snr_db = 30.0;             // per-sample SNR of a 0 dB path; +inf = noiseless

    bool operator==(const CaptureConfig&) const = default;
};

/// Radar link budget. Target echo power comes from the bistatic radar
/// equation and is expressed relative to reference_power_dbm, the absolute
/// power that maps onto the 0 dB (unit amplitude) sample level.
struct LinkConfig {
    double reference_power_dbm = -60.0;
    double reflectivity_dbsm = -10.0;
    double direct_path_gain_db = -30.0;  // absorber attenuation of Tx->Rx leakage

    bool operator==(const LinkConfig&) const = default;
};

/// Static scatterer seen by one receiver (or all when rx is empty).
struct ClutterTap {
    std::optional<std::string> rx;
    double delay = 0.0;      // s, absolute propagation delay
    double gain_db = 0.0;    // relative to the 0 dB level
    double phase_deg = 0.0;

    bool operator==(const ClutterTap&) const = default;
};

struct ClockConfig {
    bool enabled = false;
    double sigma_white = 0.2e-9;        // s
    double drift_scale = 0.9e-9;        // s, stationary std of the Gauss-Markov part
    double correlation_time = 40.0;     // s
    double gnss_noise = 0.8e-9;         // s, timing-receiver observation noise
    double sample_interval = 1.0;       // s, PPS cadence

    bool operator==(const ClockConfig&) const = default;
};

struct SyncConfig {
    std::optional<std::string> beacon;  // node id with role beacon
    double calibration_duration = 3600.0;  // s
    double filter_window = 15.0;           // s
    double snr_db = 20.0;

    bool operator==(const SyncConfig&) const = default;
};

struct TrackerConfig {
    double measurement_noise = 0.5e-9;   // s, delay measurement std
    double process_noise = 1e-8;         // s/s^2, white acceleration std of the delay
    double initial_rate_std = 2e-7;      // s/s
    double gate = 9.21;                  // chi-square gate on squared Mahalanobis distance
    int confirm_hits = 2;                // m of ...
    int confirm_window = 3;              // ... n
    int max_misses = 5;

    bool operator==(const TrackerConfig&) const = default;
};

struct RadarConfig {
    std::size_t average_k = 20;
    std::size_t canceler_order = 1;
    std::size_t max_targets = 3;
    double threshold_db = 13.0;
    std::size_t refinement_sweeps = 3;
    TrackerConfig tracker;
    std::optional<double> altitude_constraint;  // m, fixes the up coordinate
    SearchVolume volume{{-300.0, -300.0, 0.0}, {300.0, 300.0, 120.0}, 5.0};

    bool operator==(const RadarConfig&) const = default;
};

struct EmitterConfig {
    std::optional<std::string> reference_rx;
    std::optional<double> altitude_constraint;  // m
    double search_window = 7.5e-6;              // s
    SearchVolume area{{-2000.0, -2000.0, 0.0}, {2000.0, 2000.0, 200.0}, 20.0};

    bool operator==(const EmitterConfig&) const = default;
};

struct ScenarioConfig {
    int schema_version = kScenarioSchemaVersion;
    std::string name;
    Mode mode = Mode::Radar;
    GeodeticOrigin origin;
    waveform::WaveformSpec waveform;
    std::vector<Node> nodes;
    Trajectory trajectory;
    CaptureConfig capture;
    LinkConfig link;
    std::vector<ClutterTap> clutter;
    ClockConfig clock;
    SyncConfig sync;
    RadarConfig radar;
    EmitterConfig emitter;

    const Node& node(const std::string& id) const;
    const Node& mobile() const;
    std::vector<const Node*> with_role(Role role) const;
    std::vector<const Node*> receivers() const { return with_role(Role::Rx); }
    const Node& transmitter() const;  // first stationary tx

    /// Duration of one radar burst in seconds.
    double burst_duration() const;

    bool operator==(const ScenarioConfig&) const = default;
};

/// Checks every invariant; throws ValidationError naming the field.
void validate(const ScenarioConfig& config);

/// Parses scenario text; throws ParseError / ValidationError.
ScenarioConfig parse_scenario(const std::string& text);
ScenarioConfig load_scenario(const std::filesystem::path& path);

std::string format_scenario(const ScenarioConfig& config);
void write_scenario(const ScenarioConfig& config, const std::filesystem::path& path);

}  // namespace uavtwin::scene
