#pragma once

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

namespace uavtwin::harness {

inline constexpr int kIqSchemaVersion = 1;

struct Gap {
    std::size_t start = 0;   // sample index
    std::size_t length = 0;  // samples

    bool operator==(const Gap&) const = default;
};

/// Coherent recording. Sample i is taken at epoch + i / sample_rate whatever
/// the gaps; a gap marks a zero-filled region whose samples were lost.
struct IQStream {
    std::vector<std::complex<float>> samples;
    double sample_rate = 1.0;  // Hz
    double epoch = 0.0;        // s
    std::vector<Gap> gaps;     // sorted, non-overlapping

    double time_of(std::size_t index) const {
        return epoch + static_cast<double>(index) / sample_rate;
    }
    bool operator==(const IQStream&) const = default;
};

/// Throws InvalidArgument if the rate is not positive, the epoch not finite,
/// or a gap is unsorted, overlapping or out of range.
void validate(const IQStream& stream);

/// Path of the metadata sidecar belonging to an IQ file ("<path>.meta").
std::filesystem::path sidecar_path(const std::filesystem::path& iq_path);

/// Little-endian interleaved float32 I/Q; gap regions are written as zeros.
/// Throws RuntimeFailure on I/O errors.
void write_iq(const IQStream& stream, const std::filesystem::path& path);

/// Throws ParseError on a malformed sidecar or a size mismatch.
IQStream read_iq(const std::filesystem::path& path);

/// Zeroes the given frames (frame f spans [f * frame_size, (f + 1) * frame_size),
/// clipped to the stream) and records them as gaps, merging adjacent ones.
/// Throws InvalidArgument for frame_size = 0 or a frame beyond the stream.
IQStream simulate_frame_loss(const IQStream& stream, std::size_t frame_size,
                             const std::vector<std::size_t>& loss_indices);

}  // namespace uavtwin::harness
