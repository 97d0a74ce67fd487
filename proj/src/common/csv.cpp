#include "uavtwin/common/csv.hpp"

#include "uavtwin/common/errors.hpp"

#include <charconv>
#include <sstream>

namespace uavtwin {

std::string format_double(double value) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw RuntimeFailure("cannot open " + path.string() + " for writing");
    for (const auto& h : header) field(h);
    end_row();
}

CsvWriter& CsvWriter::field(const std::string& text) {
    if (!first_in_row_) out_ << ',';
    out_ << text;
    first_in_row_ = false;
    return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_double(value)); }

CsvWriter& CsvWriter::field(long long value) { return field(std::to_string(value)); }

void CsvWriter::end_row() {
    out_ << '\n';
    first_in_row_ = true;
    if (!out_) throw RuntimeFailure("CSV write failed");
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ParseError("CSV has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
    const auto& cell = rows.at(row).at(column(name));
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw ParseError("bad number '" + cell + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad number '" + cell + "' in column " + name);
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw RuntimeFailure("cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool have_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
        } else {
            if (cells.size() != table.header.size())
                throw ParseError(path.string() + ": row has " + std::to_string(cells.size()) +
                                 " fields, header has " + std::to_string(table.header.size()));
            table.rows.push_back(std::move(cells));
        }
    }
    if (!have_header) throw ParseError(path.string() + ": empty CSV");
    return table;
}

}  // namespace uavtwin
