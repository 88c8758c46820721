#ifndef SWNET_RNG_HPP
#define SWNET_RNG_HPP

#include <cstdint>
#include <random>

namespace swnet {

/// Engine used throughout the library. Every operation that draws random
/// numbers takes one by reference; nothing holds a hidden global stream.
using Rng = std::mt19937_64;

/// splitmix64 finalizer, used to turn structured (seed, stream, index)
/// tuples into well-mixed engine seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for an independent stream identified by (master, stream, index).
/// The same tuple always yields the same seed, so per-trial engines can be
/// created in any order or on any thread.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                    std::uint64_t index = 0) noexcept {
    return mix64(mix64(mix64(master) ^ stream) ^ index);
}

inline Rng make_rng(std::uint64_t master, std::uint64_t stream = 0,
                    std::uint64_t index = 0) {
    return Rng{derive_seed(master, stream, index)};
}

/// Uniform double in [0, 1) with 53 random bits.
template <class URBG>
double uniform01(URBG& rng) {
    static_assert(URBG::max() - URBG::min() >= 0xffffffffffffffffULL,
                  "uniform01 expects a 64-bit engine");
    return static_cast<double>((rng() - URBG::min()) >> 11) * 0x1.0p-53;
}

/// Uniform integer in the closed range [lo, hi].
template <class URBG>
std::int64_t uniform_int(URBG& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>{lo, hi}(rng);
}

template <class URBG>
bool bernoulli(URBG& rng, double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform01(rng) < p;
}

}  // namespace swnet

#endif  // SWNET_RNG_HPP
