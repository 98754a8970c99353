#pragma once

#include <cstdint>

namespace qtutte {

/// Deterministic 64-bit generator used everywhere randomness is needed, so
/// that identical seeds reproduce identical graphs, studies and measurement
/// streams across platforms and across reimplementations.
///
/// The core step is Vigna's xorshift64* (shifts 12/25/27, multiplier
/// 0x2545F4914F6CDD1D). Seeds are first passed through one splitmix64 step
/// (increment 0x9E3779B97F4A7C15, mixers 0xBF58476D1CE4E5B9 /
/// 0x94D049BB133111EB, shifts 30/27/31) so that seed 0 and other low-entropy
/// seeds still yield a nonzero, well-mixed state.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(mix(seed)) {
        if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL; // xorshift state must be nonzero
    }

    std::uint64_t next_u64() {
        state_ ^= state_ >> 12;
        state_ ^= state_ << 25;
        state_ ^= state_ >> 27;
        return state_ * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform double in [0, 1), 53 significant bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, bound). bound must be nonzero.
    std::uint64_t next_below(std::uint64_t bound) {
        // rejection sampling to avoid modulo bias
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t v = next_u64();
        while (v >= limit) v = next_u64();
        return v % bound;
    }

    /// One splitmix64 step; also used to derive independent sub-stream seeds.
    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// Seed wrapper so signatures read as intent rather than bare integers.
struct Seed {
    std::uint64_t value = 0;
};

/// Derives a deterministic sub-seed for a labelled substream (study samples,
/// per-axis solves). Chains splitmix64 over the words.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
    return Rng::mix(Rng::mix(Rng::mix(base) ^ a) ^ b);
}

} // namespace qtutte
