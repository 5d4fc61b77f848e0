#pragma once

#include <concepts>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace psched {

// SplitMix64 step: advances `state` and returns the mixed output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derives one child seed from an ordered list of components (base seed,
// instance index, algorithm id, ...). Changing any component gives an
// unrelated stream, so a single experiment cell can be re-run in isolation.
inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x8f1bbcdcbfa53e0bULL;
    for (std::uint64_t part : parts) {
        h ^= part + 0x9e3779b97f4a7c15ULL;
        h = splitmix64(h);
    }
    return h;
}

// Uniform draws on top of std::mt19937_64. The std::uniform_*_distribution
// mappings are implementation-defined, so the raw engine output is mapped
// here to keep streams identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform in {0, ..., n-1} via the multiply-shift bound.
    int uniform_index(int n) {
        return static_cast<int>(
            (static_cast<unsigned __int128>(gen_()) * static_cast<unsigned __int128>(n)) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

// Anything that can drive a stochastic update rule. Tests substitute scripted
// streams to pin down branch-by-branch behaviour.
template <class R>
concept RandomSource = requires(R& r, int n) {
    { r.uniform01() } -> std::convertible_to<double>;
    { r.uniform_index(n) } -> std::convertible_to<int>;
};

} // namespace psched
