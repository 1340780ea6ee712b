#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace rough {

// Counter-based random numbers built on the SplitMix64 finalizer.  Every draw
// is a pure function of (seed, stream, counter), so simulations are
// reproducible regardless of evaluation order or thread count, and distinct
// streams (diffusion, jumps, fractional noise, ...) never interact.
namespace rng_detail {

inline uint64_t mix64(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

} // namespace rng_detail

class RandomStream {
public:
    RandomStream(uint64_t seed, uint64_t stream)
        : key_(rng_detail::mix64(rng_detail::mix64(seed + rng_detail::kGolden) ^
                                 (stream * 0xda942042e4dd58b5ULL))) {}

    uint64_t bits(uint64_t counter) const {
        return rng_detail::mix64(key_ + (counter + 1) * rng_detail::kGolden);
    }

    /// Uniform on (0,1], 53-bit resolution.
    double uniform(uint64_t counter) const {
        return ((bits(counter) >> 11) + 1.0) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller; draw k consumes counters 2k, 2k+1.
    double normal(uint64_t k) const {
        const double u1 = uniform(2 * k);
        const double u2 = uniform(2 * k + 1);
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

    /// Poisson count by inverse-CDF walk on a single uniform.
    uint64_t poisson(uint64_t counter, double mean) const {
        if (mean <= 0.0) return 0;
        const double u = uniform(counter);
        double p = std::exp(-mean);
        double cdf = p;
        uint64_t k = 0;
        while (u > cdf && k < 4096) {
            ++k;
            p *= mean / static_cast<double>(k);
            cdf += p;
        }
        return k;
    }

private:
    uint64_t key_;
};

// Stream ids per model component; fixed so that degenerate parameter choices
// (eta = 0, zero jump intensity) leave the remaining draws untouched.
namespace streams {
constexpr uint64_t diffusion = 0;   // + component index
constexpr uint64_t fractional = 64; // + component index
constexpr uint64_t jump_counts = 128;
constexpr uint64_t jump_sizes = 192;
} // namespace streams

} // namespace rough
