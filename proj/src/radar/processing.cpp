#include "uavtwin/radar/processing.hpp"

#include "uavtwin/common/errors.hpp"

namespace uavtwin::radar {

using waveform::CIRSnapshot;

namespace {

void check_uniform(const std::vector<CIRSnapshot>& cirs) {
    for (const auto& c : cirs)
        if (c.size() != cirs.front().size())
            throw InvalidArgument("CIR snapshots differ in length");
}

CIRSnapshot block_mean(const std::vector<CIRSnapshot>& cirs, std::size_t first, std::size_t k) {
    CIRSnapshot out;
    out.delay_resolution = cirs[first].delay_resolution;
    out.taps.assign(cirs[first].size(), cdouble{});
    double t = 0.0;
    for (std::size_t j = first; j < first + k; ++j) {
        for (std::size_t m = 0; m < out.taps.size(); ++m) out.taps[m] += cirs[j].taps[m];
        t += cirs[j].timestamp;
    }
    const double scale = 1.0 / static_cast<double>(k);
    for (auto& tap : out.taps) tap *= scale;
    out.timestamp = t * scale;
    return out;
}

}  // namespace

std::vector<CIRSnapshot> average_snapshots(const std::vector<CIRSnapshot>& cirs, std::size_t k,
                                           bool sliding) {
    if (cirs.empty()) throw InvalidArgument("no snapshots to average");
    if (k == 0) throw InvalidArgument("averaging length must be at least 1");
    if (cirs.size() < k) throw InvalidArgument("fewer snapshots than the averaging length");
    check_uniform(cirs);
    std::vector<CIRSnapshot> out;
    const std::size_t stride = sliding ? 1 : k;
    for (std::size_t first = 0; first + k <= cirs.size(); first += stride)
        out.push_back(block_mean(cirs, first, k));
    return out;
}

std::vector<CIRSnapshot> delay_line_canceler(const std::vector<CIRSnapshot>& cirs, std::size_t order) {
    if (order == 0) throw InvalidArgument("canceler order must be at least 1");
    if (cirs.size() < order + 1) throw InvalidArgument("canceler needs order + 1 snapshots");
    check_uniform(cirs);

    std::vector<double> coeff(order + 1);  // (1 - z^-1)^order
    coeff[0] = 1.0;
    for (std::size_t j = 1; j <= order; ++j)
        coeff[j] = -coeff[j - 1] * static_cast<double>(order - j + 1) / static_cast<double>(j);

    std::vector<CIRSnapshot> out;
    for (std::size_t i = order; i < cirs.size(); ++i) {
        CIRSnapshot y;
        y.delay_resolution = cirs[i].delay_resolution;
        y.timestamp = cirs[i].timestamp;
        y.taps.assign(cirs[i].size(), cdouble{});
        for (std::size_t j = 0; j <= order; ++j)
            for (std::size_t m = 0; m < y.taps.size(); ++m) y.taps[m] += coeff[j] * cirs[i - j].taps[m];
        out.push_back(std::move(y));
    }
    return out;
}

}  // namespace uavtwin::radar
