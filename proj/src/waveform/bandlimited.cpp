#include "uavtwin/waveform/bandlimited.hpp"

#include "uavtwin/waveform/fft.hpp"

#include <algorithm>
#include <cmath>

namespace uavtwin::waveform {

namespace {

struct Derivatives {
    cdouble value;
    cdouble first;
    cdouble second;
};

Derivatives evaluate(std::span<const cdouble> spectrum, double x) {
    const std::size_t n = spectrum.size();
    const double scale = kTwoPi / static_cast<double>(n);
    Derivatives d{};
    // exp(+j 2 pi f x / n) by recurrence over consecutive signed bins,
    // re-anchored periodically.
    const cdouble w = std::polar(1.0, scale * x);
    cdouble phasor;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = static_cast<double>(signed_bin(k, n));
        if (k % 32 == 0 || k == (n + 1) / 2) phasor = std::polar(1.0, scale * f * x);
        else phasor *= w;
        const cdouble term = spectrum[k] * phasor;
        const double omega = scale * f;
        d.value += term;
        d.first += term * cdouble(0.0, omega);
        d.second += term * (-omega * omega);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    d.value *= inv_n;
    d.first *= inv_n;
    d.second *= inv_n;
    return d;
}

}  // namespace

cdouble bandlimited_value(std::span<const cdouble> spectrum, double x) {
    return evaluate(spectrum, x).value;
}

double parabolic_offset(double left, double center, double right) {
    const double denom = left - 2.0 * center + right;
    if (!(denom < 0.0)) return 0.0;
    return std::clamp(0.5 * (left - right) / denom, -0.5, 0.5);
}

BandlimitedPeak refine_peak(std::span<const cdouble> spectrum, std::span<const cdouble> taps,
                            std::size_t peak_bin) {
    const std::size_t n = taps.size();
    const double m = static_cast<double>(peak_bin);
    const double left = std::norm(taps[(peak_bin + n - 1) % n]);
    const double center = std::norm(taps[peak_bin]);
    const double right = std::norm(taps[(peak_bin + 1) % n]);

    double x = m + parabolic_offset(left, center, right);
    double lo = m - 1.0;
    double hi = m + 1.0;
    for (int iter = 0; iter < 40; ++iter) {
        const auto d = evaluate(spectrum, x);
        // f = |c|^2, f' = 2 Re(conj(c) c'), f'' = 2 (|c'|^2 + Re(conj(c) c''))
        const double g = 2.0 * std::real(std::conj(d.value) * d.first);
        const double h = 2.0 * (std::norm(d.first) + std::real(std::conj(d.value) * d.second));
        if (g > 0.0) lo = x;
        else if (g < 0.0) hi = x;
        else break;

        double next = h < 0.0 ? x - g / h : (g > 0.0 ? hi : lo);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = next - x;
        x = next;
        if (std::abs(step) < 1e-12 || hi - lo < 1e-12) break;
    }
    return {x, bandlimited_value(spectrum, x)};
}

}  // namespace uavtwin::waveform
