#pragma once

#include "uavtwin/common/constants.hpp"

#include <cstddef>
#include <span>

namespace uavtwin::waveform {

/// Continuous-delay response of a periodic band-limited sequence given its
/// DFT: c(x) = (1/n) sum_k H[k] exp(+j 2 pi f_k x / n). At integer x this is
/// the inverse DFT sample; between samples it is the Dirichlet interpolant.
cdouble bandlimited_value(std::span<const cdouble> spectrum, double x);

/// Vertex offset in (-0.5, 0.5) of the parabola through three equally spaced
/// samples; 0 when the samples are not strictly concave.
double parabolic_offset(double left, double center, double right);

struct BandlimitedPeak {
    double location = 0.0;  // samples, may be negative or >= n
    cdouble value;
};

/// Locates the maximum of |c(x)|^2 near integer `peak_bin` (the argmax of
/// |taps|^2 with taps = IDFT(spectrum) / n). A three-point parabolic fit
/// seeds a safeguarded Newton search confined to [peak_bin - 1, peak_bin + 1].
/// For a single noiseless path the result equals the true delay to rounding.
BandlimitedPeak refine_peak(std::span<const cdouble> spectrum, std::span<const cdouble> taps,
                            std::size_t peak_bin);

}  // namespace uavtwin::waveform
