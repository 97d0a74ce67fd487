#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace uavtwin {

/// Identifies an independent random stream. Every consumer of randomness
/// derives its engine from (campaign seed, component, index...) so results do
/// not depend on evaluation order or worker count.
enum class StreamKind : std::uint64_t {
    ClockOffset = 1,
    ClockDrift = 2,
    ClockGnss = 3,
    CaptureNoise = 4,
    BeaconNoise = 5,
    TxClock = 6,
    Test = 99,
};

/// Engine for the stream keyed by `seed`, `kind` and up to a few counters
/// (receiver index, snapshot index, ...).
std::mt19937_64 make_stream(std::uint64_t seed, StreamKind kind,
                            std::initializer_list<std::uint64_t> counters = {});

/// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
inline std::complex<double> complex_gaussian(std::mt19937_64& engine, double variance) {
    std::normal_distribution<double> normal(0.0, std::sqrt(variance / 2.0));
    const double re = normal(engine);
    const double im = normal(engine);
    return {re, im};
}

}  // namespace uavtwin
