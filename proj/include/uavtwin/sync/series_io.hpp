#pragma once

#include "uavtwin/common/time_series.hpp"

#include <filesystem>

namespace uavtwin::sync {

/// Two-column CSV with header "t_seconds,error_seconds".
void write_time_error_csv(const TimeSeries& series, const std::filesystem::path& path);

/// Reads the format above; throws ParseError on bad headers or numbers and
/// ValidationError when timestamps are not strictly increasing.
TimeSeries read_time_error_csv(const std::filesystem::path& path);

}  // namespace uavtwin::sync
