#include "uavtwin/waveform/waveform.hpp"

#include "uavtwin/common/errors.hpp"
#include "uavtwin/waveform/fft.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace uavtwin::waveform {

std::vector<double> newman_phases(std::size_t n) {
    if (n == 0) throw InvalidArgument("newman_phases needs n >= 1");
    std::vector<double> phases(n);
    for (std::size_t i = 0; i < n; ++i) {
        // (k-1)^2 mod 2n keeps the argument exact before scaling by pi / n.
        const auto k1 = static_cast<unsigned long long>(i);
        const unsigned long long q = (k1 * k1) % (2ull * n);
        phases[i] = kPi * static_cast<double>(q) / static_cast<double>(n);
    }
    return phases;
}

ReferenceSymbol synth_symbol(std::size_t n_subcarriers) {
    const auto phases = newman_phases(n_subcarriers);
    ReferenceSymbol symbol;
    symbol.spectrum.resize(n_subcarriers);
    std::transform(phases.begin(), phases.end(), symbol.spectrum.begin(),
                   [](double phi) { return std::polar(1.0, phi); });
    symbol.time_domain = unitary_idft(symbol.spectrum);
    return symbol;
}

ReferenceSymbol synth_symbol(const WaveformSpec& spec) {
    validate(spec);
    return synth_symbol(spec.n_subcarriers);
}

std::vector<cdouble> unitary_dft(std::span<const cdouble> x) {
    auto out = fft(x);
    const double s = 1.0 / std::sqrt(static_cast<double>(x.size()));
    for (auto& v : out) v *= s;
    return out;
}

std::vector<cdouble> unitary_idft(std::span<const cdouble> spectrum) {
    auto out = ifft(spectrum);
    const double s = 1.0 / std::sqrt(static_cast<double>(spectrum.size()));
    for (auto& v : out) v *= s;
    return out;
}

std::vector<cdouble> circular_shift(std::span<const cdouble> x, long shift) {
    const long n = static_cast<long>(x.size());
    std::vector<cdouble> y(x.size());
    if (n == 0) return y;
    const long s = ((shift % n) + n) % n;
    for (long m = 0; m < n; ++m) y[static_cast<std::size_t>((m + s) % n)] = x[static_cast<std::size_t>(m)];
    return y;
}

CIRSnapshot estimate_cir(std::span<const cdouble> received, const ReferenceSymbol& reference,
                         double delay_resolution, double timestamp) {
    if (received.size() != reference.size())
        throw InvalidArgument("estimate_cir: received length " + std::to_string(received.size()) +
                              " != reference length " + std::to_string(reference.size()));
    if (received.empty()) throw InvalidArgument("estimate_cir: empty input");
    auto spectrum = unitary_dft(received);
    for (std::size_t k = 0; k < spectrum.size(); ++k) spectrum[k] *= std::conj(reference.spectrum[k]);
    auto taps = ifft(spectrum);
    const double inv_n = 1.0 / static_cast<double>(taps.size());
    for (auto& t : taps) t *= inv_n;
    return {std::move(taps), delay_resolution, timestamp};
}

std::vector<cdouble> cir_spectrum(const CIRSnapshot& cir) { return fft(cir.taps); }

double crest_factor_db(std::span<const cdouble> samples) {
    if (samples.empty()) throw InvalidArgument("crest_factor_db: empty input");
    double peak = 0.0, sum = 0.0;
    for (const auto& s : samples) {
        const double p = std::norm(s);
        peak = std::max(peak, p);
        sum += p;
    }
    const double mean = sum / static_cast<double>(samples.size());
    if (!(mean > 0.0)) throw InvalidArgument("crest_factor_db: all-zero input");
    return 10.0 * std::log10(peak / mean);
}

std::vector<cdouble> oversample(const ReferenceSymbol& symbol, std::size_t factor) {
    if (factor == 0) throw InvalidArgument("oversample: factor must be >= 1");
    const std::size_t n = symbol.size();
    const std::size_t big = n * factor;
    std::vector<cdouble> padded(big);
    for (std::size_t k = 0; k < n; ++k) {
        const long f = signed_bin(k, n);
        padded[static_cast<std::size_t>(f >= 0 ? f : static_cast<long>(big) + f)] = symbol.spectrum[k];
    }
    return unitary_idft(padded);
}

}  // namespace uavtwin::waveform
