#pragma once

#include <cmath>
#include <cstddef>

#include "uavtwin/common/errors.hpp"

namespace uavtwin::waveform {

/// Critically sampled OFDM sounding parameters: one complex sample per
/// subcarrier per symbol, so the delay bin equals 1 / used bandwidth.
struct WaveformSpec {
    double center_frequency = 3.75e9;  // Hz
    std::size_t n_subcarriers = 1280;
    double symbol_length = 16e-6;      // s

    double sample_rate() const { return static_cast<double>(n_subcarriers) / symbol_length; }
    double delay_resolution() const { return symbol_length / static_cast<double>(n_subcarriers); }
    double wavelength() const { return 299'792'458.0 / center_frequency; }

    bool operator==(const WaveformSpec&) const = default;
};

/// Radar-testbed parameter set (80 MHz used bandwidth).
inline WaveformSpec radar_waveform() { return {3.75e9, 1280, 16e-6}; }

/// Emitter-testbed parameter set (32 MHz used bandwidth).
inline WaveformSpec emitter_waveform() { return {3.75e9, 512, 16e-6}; }

/// Throws InvalidArgument unless n >= 2 and symbol length, carrier positive.
inline void validate(const WaveformSpec& spec) {
    if (spec.n_subcarriers < 2) throw InvalidArgument("waveform needs at least 2 subcarriers");
    if (!(spec.symbol_length > 0.0) || !std::isfinite(spec.symbol_length))
        throw InvalidArgument("symbol length must be positive");
    if (!(spec.center_frequency > 0.0) || !std::isfinite(spec.center_frequency))
        throw InvalidArgument("center frequency must be positive");
}

}  // namespace uavtwin::waveform
