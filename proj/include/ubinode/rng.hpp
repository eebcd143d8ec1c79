#pragma once

#include <cstdint>

namespace ubinode {

// splitmix64 (Steele, Lea & Flood; the java.util.SplittableRandom mixer).
// Chosen for its fully specified 64-bit state so that seeded runs are
// reproducible across platforms and implementations.
class SplitMix64 {
public:
    static constexpr const char* kAlgorithmName = "splitmix64";

    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_unit() noexcept {
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0, bound) without modulo bias mattering for the small
    // bounds used here.
    std::uint64_t next_below(std::uint64_t bound) noexcept {
        return next() % bound;
    }

private:
    std::uint64_t state_;
};

}  // namespace ubinode
