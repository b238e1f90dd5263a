#pragma once

#include <cstdint>
#include <cmath>

namespace lr {

// SplitMix64 (Steele/Lea/Vigna). The corpus RNG: output is fully determined
// by the 64-bit seed and identical on every platform, which keeps generated
// corpora and training runs reproducible bit-for-bit.
class SplitMix64 {
public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1): top 53 bits scaled by 2^-53.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0,n) via 128-bit multiply-shift.
    uint64_t next_below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Standard normal via Box-Muller; consumes two draws per value.
    double next_normal() {
        double u1 = 1.0 - next_double(); // (0,1], keeps log finite
        double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    uint64_t state_;
};

// SplitMix64 finalizer used as a 64-bit mixing hash.
inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

// Deterministic child-seed derivation. Streams derived from the same base
// with different indices are decorrelated; derivation nests for
// (seed, image, draw)-style hierarchies.
inline uint64_t derive_seed(uint64_t base, uint64_t stream) {
    return mix64(base + 0x9E3779B97F4A7C15ull * (stream + 1));
}

inline uint64_t derive_seed(uint64_t base, uint64_t a, uint64_t b) {
    return derive_seed(derive_seed(base, a), b);
}

} // namespace lr
