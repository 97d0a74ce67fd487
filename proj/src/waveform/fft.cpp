#include "uavtwin/waveform/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace uavtwin::waveform {

namespace {

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans are created once per (size, direction) and kept alive.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int direction) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, direction);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cdouble> a(n), b(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                                          reinterpret_cast<fftw_complex*>(b.data()), direction,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

std::vector<cdouble> transform(std::span<const cdouble> x, int direction) {
    std::vector<cdouble> in(x.begin(), x.end());
    std::vector<cdouble> out(x.size());
    if (x.empty()) return out;
    fftw_execute_dft(cache().get(x.size(), direction), reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

// Phase ramps are built by complex recurrence, re-anchored with an exact
// evaluation every kAnchor bins to bound the accumulated rounding error.
constexpr std::size_t kAnchor = 32;

template <typename Op>
void for_each_ramp(std::size_t n, double tau_samples, Op&& op) {
    const double step = -kTwoPi * tau_samples / static_cast<double>(n);
    const cdouble w = std::polar(1.0, step);
    cdouble phasor;
    for (std::size_t k = 0; k < n; ++k) {
        if (k % kAnchor == 0 || k == (n + 1) / 2)
            phasor = std::polar(1.0, step * static_cast<double>(signed_bin(k, n)));
        else
            phasor *= w;
        op(k, phasor);
    }
}

}  // namespace

std::vector<cdouble> fft(std::span<const cdouble> x) { return transform(x, FFTW_FORWARD); }

std::vector<cdouble> ifft(std::span<const cdouble> x) { return transform(x, FFTW_BACKWARD); }

void apply_delay(std::span<cdouble> spectrum, double tau_samples) {
    for_each_ramp(spectrum.size(), tau_samples,
                  [&](std::size_t k, const cdouble& p) { spectrum[k] *= p; });
}

void add_path(std::span<cdouble> spectrum, cdouble gain, double tau_samples) {
    for_each_ramp(spectrum.size(), tau_samples,
                  [&](std::size_t k, const cdouble& p) { spectrum[k] += gain * p; });
}

}  // namespace uavtwin::waveform
