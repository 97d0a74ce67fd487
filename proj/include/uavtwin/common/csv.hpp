#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace uavtwin {

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// Row-oriented CSV writer. Fields are written verbatim; callers only emit
/// identifiers and numbers, so no quoting is performed.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    CsvWriter& field(const std::string& text);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    void end_row();

private:
    std::ofstream out_;
    bool first_in_row_ = true;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    /// Index of a header column; throws ParseError when absent.
    std::size_t column(const std::string& name) const;
    double number(std::size_t row, const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace uavtwin
