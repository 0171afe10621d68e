#include "survtheta/rng.hpp"

#include <stdexcept>

namespace survtheta {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(seed + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

std::uint64_t RandomStream::below(std::uint64_t bound) {
    if (bound == 0) throw std::domain_error("RandomStream::below: bound must be positive");
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = (~std::uint64_t{0}) - (~std::uint64_t{0}) % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

}  // namespace survtheta
