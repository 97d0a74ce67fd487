#pragma once

#include "uavtwin/scene/geometry.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace uavtwin::harness {

/// Linearly interpolated sample quantile (q in [0, 1]) of unsorted data.
/// Throws InvalidArgument for empty data or q outside [0, 1].
double quantile(std::vector<double> data, double q);

struct ErrorStats {
    std::size_t count = 0;
    double median = 0.0;
    double p90 = 0.0;
    double p99 = 0.0;
};

/// Zero counts and zero quantiles for empty input.
ErrorStats error_stats(const std::vector<double>& errors);

struct FixRecord {
    double timestamp = 0.0;
    scene::Position3 estimate;
    scene::Position3 truth;
    double residual = 0.0;  // s

    double horizontal_error() const { return (estimate - truth).horizontal_norm(); }
    double error_3d() const { return (estimate - truth).norm(); }
};

struct CampaignReport {
    std::string scenario;
    std::string mode;
    unsigned long long seed = 0;
    std::size_t epochs = 0;
    std::vector<FixRecord> fixes;
    ErrorStats horizontal;
    ErrorStats spatial;
    double detection_fraction = 0.0;            // fixes / epochs
    std::optional<double> in_beam_fraction;     // radar only
    std::optional<double> raw_tdoa_std;         // s, calibration pairs
    std::optional<double> compensated_tdoa_std; // s

    /// Fills the error statistics and the detection fraction from `fixes`.
    void finalize();
};

/// fixes.csv: timestamp,east,north,up,residual
void write_fixes_csv(const std::vector<FixRecord>& fixes, const std::filesystem::path& path);
/// errors.csv: per-fix ground truth and error components.
void write_errors_csv(const std::vector<FixRecord>& fixes, const std::filesystem::path& path);
/// Reads an errors.csv back into records (residual is not stored there).
std::vector<FixRecord> read_errors_csv(const std::filesystem::path& path);

std::string format_summary(const CampaignReport& report);
void write_summary(const CampaignReport& report, const std::filesystem::path& path);

}  // namespace uavtwin::harness
