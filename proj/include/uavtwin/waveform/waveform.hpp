#pragma once

#include "uavtwin/common/constants.hpp"
#include "uavtwin/waveform/spec.hpp"

#include <span>
#include <vector>

namespace uavtwin::waveform {

/// Flat-magnitude sounding symbol. spectrum[k] is DFT bin k; the time-domain
/// samples are the unitary inverse DFT, hence unit RMS.
struct ReferenceSymbol {
    std::vector<cdouble> spectrum;
    std::vector<cdouble> time_domain;

    std::size_t size() const { return spectrum.size(); }
};

/// Channel impulse response over one symbol period. taps[m] is the complex
/// gain at delay m * delay_resolution (circular, period = symbol length).
struct CIRSnapshot {
    std::vector<cdouble> taps;
    double delay_resolution = 1.0;  // s
    double timestamp = 0.0;         // s

    std::size_t size() const { return taps.size(); }
};

/// Quadratic Newman phases pi (k-1)^2 / n for k = 1..n, reduced to [0, 2 pi).
std::vector<double> newman_phases(std::size_t n);

ReferenceSymbol synth_symbol(const WaveformSpec& spec);
ReferenceSymbol synth_symbol(std::size_t n_subcarriers);

/// Unitary transforms (1/sqrt(n) scaling both ways).
std::vector<cdouble> unitary_dft(std::span<const cdouble> x);
std::vector<cdouble> unitary_idft(std::span<const cdouble> spectrum);

/// y[m] = x[(m - shift) mod n]: x delayed by `shift` samples.
std::vector<cdouble> circular_shift(std::span<const cdouble> x, long shift);

/// Matched-filter CIR estimate: taps = IDFT(Y . conj(S)) / n with Y the
/// unitary DFT of `received`. A path g delayed by d samples yields taps[d] = g.
/// Throws InvalidArgument on a length mismatch.
CIRSnapshot estimate_cir(std::span<const cdouble> received, const ReferenceSymbol& reference,
                         double delay_resolution = 1.0, double timestamp = 0.0);

/// DFT of the taps, i.e. the per-bin channel response H[k].
std::vector<cdouble> cir_spectrum(const CIRSnapshot& cir);

/// Peak over RMS of the samples, in dB.
double crest_factor_db(std::span<const cdouble> samples);

/// Time-domain symbol interpolated by zero-padding its spectrum `factor`
/// times (band-limited, continuous-time envelope approximation).
std::vector<cdouble> oversample(const ReferenceSymbol& symbol, std::size_t factor);

}  // namespace uavtwin::waveform
