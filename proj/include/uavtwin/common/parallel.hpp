#pragma once

#include <cstddef>
#include <functional>

namespace uavtwin {

/// Runs body(i) for i in [0, count) on `workers` threads (0 = hardware
/// concurrency, 1 = inline). Iterations must be independent; the first
/// exception thrown by any iteration is rethrown after all threads join.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& body);

}  // namespace uavtwin
