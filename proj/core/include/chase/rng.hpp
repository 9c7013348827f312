#pragma once

#include <cstdint>
#include <random>

namespace chase {

using Rng = std::mt19937_64;

namespace detail {

// splitmix64 finalizer (Steele, Lea, Flood / Vigna).
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace detail

// Counter-based stream derivation: absorb each coordinate into a splitmix64
// chain. derive_seed(master, c0, c1, ...) is a pure function of the master
// seed and the coordinate tuple, so a stream for (lambda index, n index,
// replica index) is independent of scheduling and worker count.
template <class... Coords>
std::uint64_t derive_seed(std::uint64_t master, Coords... coords) {
    std::uint64_t s = detail::mix64(master + detail::kGolden);
    ((s = detail::mix64(s ^ (static_cast<std::uint64_t>(coords) + detail::kGolden))), ...);
    return s;
}

template <class... Coords>
Rng make_stream(std::uint64_t master, Coords... coords) {
    return Rng(derive_seed(master, coords...));
}

} // namespace chase
