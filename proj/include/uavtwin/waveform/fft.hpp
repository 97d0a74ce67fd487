#pragma once

#include "uavtwin/common/constants.hpp"

#include <span>
#include <vector>

namespace uavtwin::waveform {

/// Unnormalized forward DFT: X[k] = sum_m x[m] exp(-j 2 pi k m / n).
std::vector<cdouble> fft(std::span<const cdouble> x);

/// Unnormalized inverse DFT: x[m] = sum_k X[k] exp(+j 2 pi k m / n).
std::vector<cdouble> ifft(std::span<const cdouble> x);

/// Signed frequency index of DFT bin k: k for k < n/2, k - n otherwise.
/// For even n the Nyquist bin maps to -n/2.
inline long signed_bin(std::size_t k, std::size_t n) {
    return k < (n + 1) / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
}

/// Multiplies spectrum[k] by exp(-j 2 pi f_k tau / n) with f_k the signed bin,
/// i.e. delays the periodic band-limited signal by tau samples.
void apply_delay(std::span<cdouble> spectrum, double tau_samples);

/// Adds gain * exp(-j 2 pi f_k tau / n) to every bin: the spectrum of a
/// single path of the flat-spectrum channel.
void add_path(std::span<cdouble> spectrum, cdouble gain, double tau_samples);

}  // namespace uavtwin::waveform
