#pragma once
// Deterministic pseudo-random number generation for reproducible problem
// construction. Every (function, dimension, instance) triple derives its
// sub-stream seeds through derive_seed(), so two builds of the same problem
// are bit-identical on any platform.
//
// Generator: xoroshiro128++ (David Blackman & Sebastiano Vigna, public
// domain, https://prng.di.unimi.it), seeded through SplitMix64.

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>

namespace bbls {

namespace detail {

inline constexpr std::uint64_t rotl64(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

// SplitMix64: advances *state and returns the next output word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace detail

// Owner-per-stream random generator; 128-bit state plus the Box-Muller spare.
class RngState {
public:
    explicit RngState(std::uint64_t seed = 1) {
        // Seed 0 maps to a fixed nonzero constant so the expanded state can
        // never be all-zero and seed 0 still yields a valid stream.
        if (seed == 0) seed = 0x9E3779B97F4A7C15ULL;
        std::uint64_t sm = seed;
        s0_ = detail::splitmix64(sm);
        s1_ = detail::splitmix64(sm);
        if ((s0_ | s1_) == 0) s1_ = 1;  // unreachable with SplitMix64 seeding
    }

    // xoroshiro128++ step.
    std::uint64_t next_u64() {
        const std::uint64_t s0 = s0_;
        std::uint64_t s1 = s1_;
        const std::uint64_t result = detail::rotl64(s0 + s1, 17) + s0;
        s1 ^= s0;
        s0_ = detail::rotl64(s0, 49) ^ s1 ^ (s1 << 21);
        s1_ = detail::rotl64(s1, 28);
        return result;
    }

    // Uniform double in [0, 1) with 53-bit resolution.
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Standard normal deviate via the polar Box-Muller method. Each accepted
    // pair yields two deviates; the second is cached and returned first on
    // the next call.
    double next_gaussian() {
        if (spare_) {
            const double g = *spare_;
            spare_.reset();
            return g;
        }
        double u, v, s;
        do {
            u = 2.0 * next_uniform() - 1.0;
            v = 2.0 * next_uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        return u * f;
    }

    // Uniform integer in [lo, hi], rejection-sampled so there is no modulo
    // bias. lo == hi consumes no randomness.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        if (lo == hi) return lo;
        const std::uint64_t span =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t rem = ((~std::uint64_t{0} % span) + 1) % span;
        for (;;) {
            const std::uint64_t u = next_u64();
            if (rem == 0 || u < (std::uint64_t{0} - rem))
                return lo + static_cast<std::int64_t>(u % span);
        }
    }

    bool has_cached_gaussian() const { return spare_.has_value(); }

private:
    std::uint64_t s0_, s1_;
    std::optional<double> spare_;
};

// Named sub-streams of one problem instance. Values are part of the
// reproducibility contract; do not reorder.
enum class SeedRole : std::uint64_t {
    x_opt = 0,
    f_opt = 1,
    block_b1 = 2,
    block_b2 = 3,
    perm_p11 = 4,
    perm_p12 = 5,
    perm_p21 = 6,
    perm_p22 = 7,
    aux = 8,
};

inline constexpr int kSeedRoleCount = 9;

// Mixes (fid, n, instance, role) into one 64-bit seed. Chained
// boost-style combine followed by the SplitMix64 finalizer; any change here
// changes every generated problem.
inline std::uint64_t derive_seed(std::uint64_t fid, std::uint64_t n,
                                 std::uint64_t instance, SeedRole role) {
    std::uint64_t h = 0x42C0C0B0B1A5ULL;
    const std::uint64_t parts[4] = {fid, n, instance,
                                    static_cast<std::uint64_t>(role)};
    for (std::uint64_t v : parts) {
        h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        std::uint64_t z = h;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        h = z ^ (z >> 31);
    }
    return h;
}

}  // namespace bbls
