#include "uavtwin/harness/report.hpp"

#include "uavtwin/common/csv.hpp"
#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace uavtwin::harness {

double quantile(std::vector<double> data, double q) {
    if (data.empty()) throw InvalidArgument("quantile of empty data");
    if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level outside [0, 1]");
    std::sort(data.begin(), data.end());
    const double pos = q * static_cast<double>(data.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, data.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return data[lo] + frac * (data[hi] - data[lo]);
}

ErrorStats error_stats(const std::vector<double>& errors) {
    ErrorStats s;
    s.count = errors.size();
    if (errors.empty()) return s;
    s.median = quantile(errors, 0.5);
    s.p90 = quantile(errors, 0.9);
    s.p99 = quantile(errors, 0.99);
    return s;
}

void CampaignReport::finalize() {
    std::vector<double> h, d;
    for (const auto& f : fixes) {
        h.push_back(f.horizontal_error());
        d.push_back(f.error_3d());
    }
    horizontal = error_stats(h);
    spatial = error_stats(d);
    detection_fraction = epochs ? static_cast<double>(fixes.size()) / static_cast<double>(epochs) : 0.0;
}

void write_fixes_csv(const std::vector<FixRecord>& fixes, const std::filesystem::path& path) {
    CsvWriter out(path, {"timestamp", "east", "north", "up", "residual"});
    for (const auto& f : fixes) {
        out.field(f.timestamp).field(f.estimate.east).field(f.estimate.north).field(f.estimate.up);
        out.field(f.residual);
        out.end_row();
    }
}

void write_errors_csv(const std::vector<FixRecord>& fixes, const std::filesystem::path& path) {
    CsvWriter out(path, {"timestamp", "true_east", "true_north", "true_up", "est_east", "est_north",
                         "est_up", "error_east", "error_north", "error_up", "horizontal_error",
                         "error_3d"});
    for (const auto& f : fixes) {
        const auto e = f.estimate - f.truth;
        out.field(f.timestamp).field(f.truth.east).field(f.truth.north).field(f.truth.up);
        out.field(f.estimate.east).field(f.estimate.north).field(f.estimate.up);
        out.field(e.east).field(e.north).field(e.up).field(f.horizontal_error()).field(f.error_3d());
        out.end_row();
    }
}

std::vector<FixRecord> read_errors_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    std::vector<FixRecord> out;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        FixRecord f;
        f.timestamp = table.number(r, "timestamp");
        f.truth = {table.number(r, "true_east"), table.number(r, "true_north"), table.number(r, "true_up")};
        f.estimate = {table.number(r, "est_east"), table.number(r, "est_north"), table.number(r, "est_up")};
        out.push_back(f);
    }
    return out;
}

std::string format_summary(const CampaignReport& r) {
    std::ostringstream s;
    const auto line = [&s](const std::string& key, const std::string& value) {
        s << key << ": " << value << '\n';
    };
    line("scenario", r.scenario);
    line("mode", r.mode);
    line("seed", std::to_string(r.seed));
    line("epochs", std::to_string(r.epochs));
    line("fixes", std::to_string(r.fixes.size()));
    line("detection_fraction", format_double(r.detection_fraction));
    if (r.in_beam_fraction) line("in_beam_fraction", format_double(*r.in_beam_fraction));
    line("horizontal_error_median_m", format_double(r.horizontal.median));
    line("horizontal_error_p90_m", format_double(r.horizontal.p90));
    line("horizontal_error_p99_m", format_double(r.horizontal.p99));
    line("error_3d_median_m", format_double(r.spatial.median));
    line("error_3d_p90_m", format_double(r.spatial.p90));
    line("error_3d_p99_m", format_double(r.spatial.p99));
    if (r.raw_tdoa_std) line("calibration_raw_tdoa_std_s", format_double(*r.raw_tdoa_std));
    if (r.compensated_tdoa_std)
        line("calibration_compensated_tdoa_std_s", format_double(*r.compensated_tdoa_std));
    return s.str();
}

void write_summary(const CampaignReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw RuntimeFailure("cannot write " + path.string());
    out << format_summary(report);
}

}  // namespace uavtwin::harness
