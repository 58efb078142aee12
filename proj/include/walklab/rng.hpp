#pragma once

#include <cstdint>
#include <random>

namespace harness {

// SplitMix64 output mixer (Vigna / Steele et al., the generator behind Java's
// SplittableRandom).
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Seed for the run_index-th member of an ensemble keyed by base_seed: the
// run_index-th output of SplitMix64 seeded with base_seed. Pure function of
// the pair, so ensemble results do not depend on execution order.
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t run_index) {
    return splitmix64_mix(base_seed + 0x9E3779B97F4A7C15ULL * (run_index + 1));
}

// One random stream per run. Draw helpers are pinned to explicit bit
// manipulation (not std::uniform_*_distribution, whose output is
// implementation-defined) so identical seeds give identical streams on any
// standard library.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    // uniform on [0, 1), 53 random bits
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // uniform on {0, ..., n-1}; n >= 1
    int uniform_index(int n) {
        const int k = static_cast<int>(uniform01() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    // +1 or -1 with equal probability
    int uniform_sign() { return uniform01() < 0.5 ? +1 : -1; }

  private:
    std::mt19937_64 gen_;
};

} // namespace harness
