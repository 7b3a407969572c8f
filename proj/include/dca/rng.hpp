#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace dca {

/// Deterministic 64-bit generator (SplitMix64, Steele/Lea/Flood mixing
/// constants). All randomness in the library flows through this type so that
/// a run is reproducible bit-for-bit from its seed, on any platform.
///
/// Derived streams: `SplitMix64 child(rng.next_u64())`. Consumers that need
/// independent streams (e.g. threshold draws vs antigen fanout) split the
/// master generator once, in a fixed documented order.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0,1), 53-bit resolution.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform double in [lo,hi]; hi is reached only when lo == hi.
    double uniform(double lo, double hi) {
        return lo + next_double() * (hi - lo);
    }

    /// Uniform index in [0,n). n must be >= 1 and far below 2^53.
    std::size_t uniform_index(std::size_t n) {
        return static_cast<std::size_t>(next_double() * static_cast<double>(n));
    }

    /// Exponential inter-arrival gap with the given rate (events/sec).
    double exponential(double rate) {
        return -std::log1p(-next_double()) / rate;
    }

    SplitMix64 split() { return SplitMix64(next_u64()); }

private:
    std::uint64_t state_;
};

}  // namespace dca
