#include "uavtwin/sync/series_io.hpp"

#include "uavtwin/common/csv.hpp"
#include "uavtwin/common/errors.hpp"

#include <cmath>

namespace uavtwin::sync {

void write_time_error_csv(const TimeSeries& series, const std::filesystem::path& path) {
    CsvWriter out(path, {"t_seconds", "error_seconds"});
    for (std::size_t k = 0; k < series.size(); ++k) {
        out.field(series.t[k]).field(series.value[k]);
        out.end_row();
    }
}

TimeSeries read_time_error_csv(const std::filesystem::path& path) {
    const auto table = read_csv(path);
    TimeSeries series;
    for (std::size_t row = 0; row < table.rows.size(); ++row) {
        const double t = table.number(row, "t_seconds");
        const double e = table.number(row, "error_seconds");
        if (!std::isfinite(t) || !std::isfinite(e))
            throw ValidationError("error_seconds", "non-finite value in " + path.string());
        if (!series.empty() && !(t > series.t.back()))
            throw ValidationError("t_seconds", "timestamps must increase strictly in " + path.string());
        series.t.push_back(t);
        series.value.push_back(e);
    }
    return series;
}

}  // namespace uavtwin::sync
