#include "uavtwin/emitter/tdoa.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/waveform/bandlimited.hpp"
#include "uavtwin/waveform/fft.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace uavtwin::emitter {

XcorrResult xcorr_tdoa(std::span<const cdouble> sig_i, std::span<const cdouble> sig_j,
                       double sample_rate, double search_window) {
    const std::size_t n = sig_i.size();
    if (n == 0 || sig_j.size() != n) throw InvalidArgument("xcorr needs two non-empty equal-length records");
    if (!(sample_rate > 0.0) || !(search_window >= 0.0))
        throw InvalidArgument("xcorr needs a positive sample rate and non-negative window");
    const double window_samples = search_window * sample_rate;
    if (window_samples > static_cast<double>(n) / 2.0 + 1e-9)
        throw InvalidArgument("search window exceeds half the record length");
    const auto silent = [](std::span<const cdouble> s) {
        return std::all_of(s.begin(), s.end(), [](cdouble v) { return v == cdouble{}; });
    };
    if (silent(sig_i) || silent(sig_j)) throw InvalidArgument("xcorr input is all zeros");

    const auto xi = waveform::fft(sig_i);
    const auto xj = waveform::fft(sig_j);
    std::vector<cdouble> spectrum(n);
    for (std::size_t k = 0; k < n; ++k) spectrum[k] = std::conj(xi[k]) * xj[k];
    auto corr = waveform::ifft(spectrum);
    const double scale = 1.0 / static_cast<double>(n);
    for (auto& c : corr) c *= scale;

    const long max_lag = std::min(static_cast<long>(std::floor(window_samples + 1e-9)),
                                  static_cast<long>(n) / 2);
    const auto index = [n](long lag) {
        const long nn = static_cast<long>(n);
        return static_cast<std::size_t>(((lag % nn) + nn) % nn);
    };
    long best = 0;
    for (long lag = -max_lag; lag <= max_lag; ++lag)
        if (std::norm(corr[index(lag)]) > std::norm(corr[index(best)])) best = lag;

    const auto peak = waveform::refine_peak(spectrum, corr, index(best));
    // refine_peak works on the bin index; bring the location back next to the signed lag.
    double lag = peak.location - static_cast<double>(index(best)) + static_cast<double>(best);
    lag = std::clamp(lag, static_cast<double>(best) - 1.0, static_cast<double>(best) + 1.0);

    double sidelobe = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        const long d = static_cast<long>(m) - static_cast<long>(index(best));
        const long circ = std::min(std::labs(d), static_cast<long>(n) - std::labs(d));
        if (circ > 1) sidelobe = std::max(sidelobe, std::norm(corr[m]));
    }
    const double peak_power = std::norm(peak.value);
    const double quality =
        sidelobe > 0.0 ? std::min(300.0, 10.0 * std::log10(peak_power / sidelobe)) : 300.0;
    return {lag / sample_rate, quality};
}

}  // namespace uavtwin::emitter
