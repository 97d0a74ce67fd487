#pragma once

#include "uavtwin/waveform/waveform.hpp"

#include <vector>

namespace uavtwin::radar {

/// Means of k consecutive CIRs, stamped with the mean timestamp of the block.
/// Block mode (default) yields floor(n / k) outputs; sliding mode yields
/// n - k + 1. Throws InvalidArgument for k = 0, fewer than k snapshots or
/// mismatched tap counts.
std::vector<waveform::CIRSnapshot> average_snapshots(const std::vector<waveform::CIRSnapshot>& cirs,
                                                     std::size_t k, bool sliding = false);

/// Delay line canceler of the given order: output[i] = sum_j (-1)^j C(order, j)
/// cir[i + order - j], stamped with the newest input. Order 1 is the two-pulse
/// canceler cir[i] - cir[i - 1]. Output length is n - order; throws
/// InvalidArgument for fewer than order + 1 snapshots or order = 0.
std::vector<waveform::CIRSnapshot> delay_line_canceler(const std::vector<waveform::CIRSnapshot>& cirs,
                                                       std::size_t order = 1);

}  // namespace uavtwin::radar
