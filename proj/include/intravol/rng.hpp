#pragma once

#include <cstdint>
#include <random>

namespace intravol {

/// SplitMix64 finalizer (Steele, Lea & Flood). Used only to derive
/// substream seeds from a (seed, stream index) pair.
constexpr std::uint64_t splitmix64(std::uint64_t z) noexcept {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) noexcept {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x51'7C'C1'B7'27'22'0A'95ULL));
}

/// Deterministic, platform-independent random stream: MT19937-64 for the
/// raw 64-bit words, fixed 53-bit uniform mapping, inverse-CDF normals.
/// std::*_distribution adapters are deliberately avoided — their output is
/// implementation-defined and would break cross-toolchain reproducibility.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    static RandomStream substream(std::uint64_t seed, std::uint64_t stream) {
        return RandomStream(substream_seed(seed, stream));
    }

    /// Uniform on [2^-54, 1 - 2^-54]; never returns an exact 0 or 1, so the
    /// inverse normal CDF stays finite.
    double uniform() {
        const std::uint64_t bits = engine_() >> 11; // top 53 bits
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

    double normal();

private:
    std::mt19937_64 engine_;
};

} // namespace intravol
