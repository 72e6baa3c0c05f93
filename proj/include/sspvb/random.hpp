#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace sspvb {

/// Seeded 64-bit Mersenne Twister with platform-independent conversions.
/// std::uniform_real_distribution is implementation-defined, so draws are
/// derived from raw engine output instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n) {
        const auto i = static_cast<std::size_t>(uniform01() * static_cast<double>(n));
        return i < n ? i : n - 1;
    }

    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::mt19937_64 engine_;
};

}  // namespace sspvb
