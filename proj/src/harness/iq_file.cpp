#include "uavtwin/harness/iq_file.hpp"

#include "uavtwin/common/csv.hpp"
#include "uavtwin/common/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace uavtwin::harness {

namespace {

std::uint32_t to_little(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::little) return v;
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
}

void put_float(std::vector<char>& buffer, std::size_t offset, float f) {
    const std::uint32_t v = to_little(std::bit_cast<std::uint32_t>(f));
    std::memcpy(buffer.data() + offset, &v, 4);
}

float get_float(const char* p) {
    std::uint32_t v;
    std::memcpy(&v, p, 4);
    return std::bit_cast<float>(to_little(v));
}

std::size_t parse_count(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size() || text.front() == '-')
        throw ParseError("IQ sidecar: bad " + what + " '" + text + "'");
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text, const std::string& what) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size()) throw ParseError("IQ sidecar: bad " + what + " '" + text + "'");
    return v;
}

}  // namespace

void validate(const IQStream& stream) {
    if (!(stream.sample_rate > 0.0) || !std::isfinite(stream.sample_rate))
        throw InvalidArgument("IQ sample rate must be positive");
    if (!std::isfinite(stream.epoch)) throw InvalidArgument("IQ epoch must be finite");
    std::size_t end = 0;
    for (const auto& g : stream.gaps) {
        if (g.length == 0) throw InvalidArgument("IQ gap of zero length");
        if (g.start < end) throw InvalidArgument("IQ gaps must be sorted and disjoint");
        if (g.start + g.length > stream.samples.size()) throw InvalidArgument("IQ gap beyond the stream");
        end = g.start + g.length;
    }
}

std::filesystem::path sidecar_path(const std::filesystem::path& iq_path) {
    return std::filesystem::path(iq_path.string() + ".meta");
}

void write_iq(const IQStream& stream, const std::filesystem::path& path) {
    validate(stream);
    std::vector<char> buffer(stream.samples.size() * 8, 0);
    std::size_t gap = 0;
    for (std::size_t i = 0; i < stream.samples.size(); ++i) {
        while (gap < stream.gaps.size() && i >= stream.gaps[gap].start + stream.gaps[gap].length) ++gap;
        if (gap < stream.gaps.size() && i >= stream.gaps[gap].start) continue;  // stays zero
        put_float(buffer, 8 * i, stream.samples[i].real());
        put_float(buffer, 8 * i + 4, stream.samples[i].imag());
    }
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw RuntimeFailure("cannot write " + path.string());
        out.write(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        if (!out) throw RuntimeFailure("write failed for " + path.string());
    }
    std::ofstream meta(sidecar_path(path), std::ios::trunc);
    if (!meta) throw RuntimeFailure("cannot write " + sidecar_path(path).string());
    meta << "schema_version " << kIqSchemaVersion << '\n'
         << "format cf32_le\n"
         << "sample_rate " << format_double(stream.sample_rate) << '\n'
         << "epoch " << format_double(stream.epoch) << '\n'
         << "sample_count " << stream.samples.size() << '\n';
    for (const auto& g : stream.gaps) meta << "gap " << g.start << ' ' << g.length << '\n';
    if (!meta) throw RuntimeFailure("write failed for " + sidecar_path(path).string());
}

IQStream read_iq(const std::filesystem::path& path) {
    std::ifstream meta(sidecar_path(path));
    if (!meta) throw ParseError("missing IQ sidecar " + sidecar_path(path).string());
    IQStream stream;
    std::map<std::string, std::string> fields;
    std::string line;
    while (std::getline(meta, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "gap") {
            std::string a, b, extra;
            ss >> a >> b;
            if (a.empty() || b.empty() || (ss >> extra)) throw ParseError("IQ sidecar: bad gap line '" + line + "'");
            stream.gaps.push_back({parse_count(a, "gap start"), parse_count(b, "gap length")});
            continue;
        }
        std::string value, extra;
        ss >> value;
        if (value.empty() || (ss >> extra)) throw ParseError("IQ sidecar: bad line '" + line + "'");
        static const std::set<std::string> known{"schema_version", "format", "sample_rate", "epoch",
                                                 "sample_count"};
        if (!known.count(key)) throw ParseError("IQ sidecar: unknown key '" + key + "'");
        fields[key] = value;
    }
    for (const char* key : {"schema_version", "format", "sample_rate", "epoch", "sample_count"})
        if (!fields.count(key)) throw ParseError(std::string("IQ sidecar: missing ") + key);
    if (parse_count(fields["schema_version"], "schema_version") != kIqSchemaVersion)
        throw ParseError("IQ sidecar: unsupported schema_version " + fields["schema_version"]);
    if (fields["format"] != "cf32_le") throw ParseError("IQ sidecar: unsupported format " + fields["format"]);
    stream.sample_rate = parse_real(fields["sample_rate"], "sample_rate");
    stream.epoch = parse_real(fields["epoch"], "epoch");
    const std::size_t count = parse_count(fields["sample_count"], "sample_count");

    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::vector<char> buffer((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (buffer.size() != count * 8)
        throw ParseError(path.string() + ": " + std::to_string(buffer.size()) + " bytes, sidecar expects " +
                         std::to_string(count * 8));
    stream.samples.resize(count);
    for (std::size_t i = 0; i < count; ++i)
        stream.samples[i] = {get_float(buffer.data() + 8 * i), get_float(buffer.data() + 8 * i + 4)};
    try {
        validate(stream);
    } catch (const InvalidArgument& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return stream;
}

IQStream simulate_frame_loss(const IQStream& stream, std::size_t frame_size,
                             const std::vector<std::size_t>& loss_indices) {
    if (frame_size == 0) throw InvalidArgument("frame size must be positive");
    const std::size_t n = stream.samples.size();
    IQStream out = stream;
    std::vector<Gap> gaps = stream.gaps;
    for (const std::size_t f : loss_indices) {
        if (f >= (n + frame_size - 1) / frame_size)
            throw InvalidArgument("frame index " + std::to_string(f) + " beyond the stream");
        const std::size_t start = f * frame_size;
        const std::size_t length = std::min(frame_size, n - start);
        std::fill(out.samples.begin() + static_cast<long>(start),
                  out.samples.begin() + static_cast<long>(start + length), std::complex<float>{});
        gaps.push_back({start, length});
    }
    std::sort(gaps.begin(), gaps.end(), [](const Gap& a, const Gap& b) { return a.start < b.start; });
    out.gaps.clear();
    for (const auto& g : gaps) {
        if (!out.gaps.empty() && g.start <= out.gaps.back().start + out.gaps.back().length) {
            auto& last = out.gaps.back();
            last.length = std::max(last.start + last.length, g.start + g.length) - last.start;
        } else {
            out.gaps.push_back(g);
        }
    }
    return out;
}

}  // namespace uavtwin::harness
