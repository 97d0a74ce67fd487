#include "uavtwin/common/rng.hpp"

#include <vector>

namespace uavtwin {

std::mt19937_64 make_stream(std::uint64_t seed, StreamKind kind,
                            std::initializer_list<std::uint64_t> counters) {
    // seed_seq consumes 32-bit words; split every 64-bit key component.
    std::vector<std::uint32_t> words;
    words.reserve(2 * (2 + counters.size()));
    auto push = [&words](std::uint64_t v) {
        words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
        words.push_back(static_cast<std::uint32_t>(v >> 32));
    };
    push(seed);
    push(static_cast<std::uint64_t>(kind));
    for (auto c : counters) push(c);
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace uavtwin
