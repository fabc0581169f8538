#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace stripes {

/// SplitMix64 bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Counter-based generator: draw i is a pure function of (seed, stream, i),
/// so identical seeds reproduce identical sequences on any platform.
/// Gaussians come from Box-Muller over the hashed uniforms.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : base_(mix64(seed ^ mix64(stream ^ 0xA5A5A5A5A5A5A5A5ull))) {}

    std::uint64_t next_u64() { return mix64(base_ + 0x9E3779B97F4A7C15ull * ++counter_); }

    /// Uniform in (0, 1].
    double uniform01() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Uniform in [0, 1).
    double uniform_half_open() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_half_open(); }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform_half_open();
        double r = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(angle);
        has_spare_ = true;
        return r * std::cos(angle);
    }

private:
    std::uint64_t base_;
    std::uint64_t counter_ = 0;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace stripes
