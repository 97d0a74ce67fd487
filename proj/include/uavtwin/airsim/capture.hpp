#pragma once

#include "uavtwin/airsim/clock.hpp"
#include "uavtwin/common/constants.hpp"
#include "uavtwin/scene/scenario.hpp"
#include "uavtwin/waveform/waveform.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace uavtwin::airsim {

/// Time-invariant scatterer.
struct ClutterPath {
    double delay = 0.0;    // s
    cdouble complex_gain;  // linear amplitude
};

struct ReceiverCapture {
    std::string rx_id;
    std::vector<waveform::CIRSnapshot> cirs;     // empty unless estimate_cirs
    std::vector<std::vector<cdouble>> samples;   // empty unless keep_samples
    std::vector<double> true_delay;              // s, target (radar) or LOS (emitter), geometric
    std::vector<double> true_clock_error;        // s
};

/// Coherent capture: every receiver shares the snapshot time base `times`.
struct CaptureResult {
    waveform::WaveformSpec spec;
    std::vector<double> times;
    std::vector<ReceiverCapture> receivers;

    const ReceiverCapture& receiver(const std::string& id) const;
};

struct CaptureOptions {
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;  // separates noise of independent captures under one seed
    bool keep_samples = false;
    bool estimate_cirs = true;
    bool target_muted = false;    // radar: drop the target echo
    std::size_t workers = 1;
};

/// Per receiver (scenario order) clutter list built from the scenario's clutter taps.
std::vector<std::vector<ClutterPath>> clutter_from_scenario(const scene::ScenarioConfig& scene);

/// Linear amplitude of the radar echo via `rx` for a target at `target`
/// (link budget relative to the reference power, including the two-way
/// antenna gains).
double radar_target_amplitude(const scene::ScenarioConfig& scene, const scene::Node& rx,
                              const scene::Position3& target);

/// Radar snapshots at t0 + i * snapshot_interval. `clutter` is indexed like
/// scene.receivers() (or empty); `clocks` likewise (or empty for perfect clocks).
/// Throws ValidationError for a snapshot interval below the symbol length and
/// InvalidArgument when the trajectory does not cover the capture.
CaptureResult simulate_radar_capture(const scene::ScenarioConfig& scene,
                                     const waveform::WaveformSpec& spec, double t0,
                                     std::size_t n_snapshots, double snapshot_interval,
                                     double snr_db,
                                     const std::vector<std::vector<ClutterPath>>& clutter,
                                     const std::vector<ClockState>& clocks,
                                     const CaptureOptions& options = {});

/// Emitter snapshots: one LOS path from the UAV to every receiver, normalized
/// to the 0 dB sample level.
CaptureResult simulate_emitter_capture(const scene::ScenarioConfig& scene,
                                       const waveform::WaveformSpec& spec, double t0,
                                       std::size_t n_snapshots, double snapshot_interval,
                                       double snr_db, const std::vector<ClockState>& clocks,
                                       const CaptureOptions& options = {});

struct BeaconMeasurements {
    std::vector<double> times;
    std::vector<std::string> rx_ids;
    std::vector<std::vector<double>> delays;  // [rx][time], s, apparent LOS arrival delay
};

/// Beacon transmissions at `interval` seconds over `duration`, each received
/// with the receivers' clocks plus the beacon's own clock error (common to all
/// receivers). Delays are measured from the estimated CIR peak.
BeaconMeasurements simulate_beacon_delays(const scene::ScenarioConfig& scene,
                                          const scene::Position3& beacon_position,
                                          const std::vector<ClockState>& rx_clocks,
                                          const ClockState& beacon_clock, double t0,
                                          double duration, double interval, double snr_db,
                                          const CaptureOptions& options = {});

/// Sub-sample delay of the strongest CIR peak in seconds, unwrapped to
/// (-T/2, T/2] around zero delay.
double strongest_path_delay(const waveform::CIRSnapshot& cir);

}  // namespace uavtwin::airsim
