#pragma once

#include <cstdint>

namespace qsv {

// SplitMix64 (Vigna's reference constants). Output i for seed s is
// mix64(s + (i+1) * 0x9E3779B97F4A7C15), so the sequence is a pure function
// of (seed, counter) and draws may be generated in any order. Sub-streams are
// derived as seed' = mix64(seed ^ mix64((index+1) * 0x9E3779B97F4A7C15)),
// which keeps parallel workers reproducible regardless of scheduling.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    static uint64_t mix64(uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return z;
    }

    uint64_t next() {
        state_ += kGolden;
        return mix64(state_);
    }

    // Uniform in [0,1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, bound) by rejection.
    uint64_t below(uint64_t bound) {
        if (bound == 0) return 0;
        uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

    SplitMix64 stream(uint64_t index) const {
        return SplitMix64(mix64(state_ ^ mix64((index + 1) * kGolden)));
    }

    uint64_t state() const { return state_; }

private:
    static constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    uint64_t state_;
};

}  // namespace qsv
