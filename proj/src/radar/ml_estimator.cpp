#include "uavtwin/radar/ml_estimator.hpp"

#include "uavtwin/common/constants.hpp"
#include "uavtwin/waveform/bandlimited.hpp"
#include "uavtwin/waveform/fft.hpp"

#include <algorithm>
#include <cmath>

namespace uavtwin::radar {

namespace {

struct PathEstimate {
    double location;  // samples
    cdouble gain;
};

std::vector<cdouble> taps_of(const std::vector<cdouble>& spectrum) {
    auto taps = waveform::ifft(spectrum);
    const double scale = 1.0 / static_cast<double>(spectrum.size());
    for (auto& t : taps) t *= scale;
    return taps;
}

std::size_t wrap_index(long m, std::size_t n) {
    const long nn = static_cast<long>(n);
    return static_cast<std::size_t>(((m % nn) + nn) % nn);
}

// Band-limited peak of `spectrum` starting from the best integer bin within
// +-1 of `around` (or the global argmax when around < 0).
PathEstimate fit_peak(const std::vector<cdouble>& spectrum, double around) {
    const std::size_t n = spectrum.size();
    const auto taps = taps_of(spectrum);
    std::size_t best = 0;
    if (around < 0.0) {
        for (std::size_t m = 1; m < n; ++m)
            if (std::norm(taps[m]) > std::norm(taps[best])) best = m;
    } else {
        const long c = std::lround(around);
        best = wrap_index(c, n);
        for (long d : {-1L, 1L}) {
            const std::size_t m = wrap_index(c + d, n);
            if (std::norm(taps[m]) > std::norm(taps[best])) best = m;
        }
    }
    const auto peak = waveform::refine_peak(spectrum, taps, best);
    return {peak.location, peak.value};
}

}  // namespace

double noise_floor(const waveform::CIRSnapshot& cir) {
    std::vector<double> power(cir.size());
    double peak = 0.0;
    for (std::size_t m = 0; m < cir.size(); ++m) {
        power[m] = std::norm(cir.taps[m]);
        peak = std::max(peak, power[m]);
    }
    if (power.empty()) return 0.0;
    auto mid = power.begin() + static_cast<long>(power.size() / 2);
    std::nth_element(power.begin(), mid, power.end());
    double median = *mid;
    if (power.size() % 2 == 0) median = 0.5 * (median + *std::max_element(power.begin(), mid));
    return std::max(median / std::log(2.0), 1e-12 * peak);
}

std::vector<DelayDetection> ml_delay_estimate(const waveform::CIRSnapshot& cir,
                                              const MlOptions& options,
                                              const std::string& receiver) {
    std::vector<DelayDetection> detections;
    const std::size_t n = cir.size();
    if (n == 0 || options.max_targets == 0) return detections;

    const double threshold = noise_floor(cir) * db_to_power(options.threshold_db);
    const auto spectrum = waveform::cir_spectrum(cir);

    std::vector<PathEstimate> paths;
    auto residual = spectrum;
    while (paths.size() < options.max_targets) {
        const auto p = fit_peak(residual, -1.0);
        if (!(std::norm(p.gain) > threshold)) break;
        waveform::add_path(residual, -p.gain, p.location);
        paths.push_back(p);
    }

    for (std::size_t sweep = 0; sweep < options.refinement_sweeps && paths.size() > 1; ++sweep) {
        for (std::size_t i = 0; i < paths.size(); ++i) {
            auto others_removed = spectrum;
            for (std::size_t j = 0; j < paths.size(); ++j)
                if (j != i) waveform::add_path(others_removed, -paths[j].gain, paths[j].location);
            paths[i] = fit_peak(others_removed, paths[i].location);
        }
    }

    const double period = static_cast<double>(n);
    for (const auto& p : paths) {
        double loc = std::fmod(p.location, period);
        if (loc < 0.0) loc += period;
        if (loc >= period) loc -= period;
        detections.push_back({loc * cir.delay_resolution, std::abs(p.gain), cir.timestamp, receiver});
    }
    std::stable_sort(detections.begin(), detections.end(),
                     [](const auto& a, const auto& b) { return a.amplitude > b.amplitude; });
    return detections;
}

}  // namespace uavtwin::radar
