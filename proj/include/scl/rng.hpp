#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "scl/types.hpp"

namespace scl {

/// SplitMix64 counter-based generator (Steele, Lea & Flood 2014). State n of
/// seed s is mix(s + n * 0x9E3779B97F4A7C15); the full stream is a pure
/// function of (seed, call index), which keeps every generated artifact
/// reproducible from the 64-bit seed alone.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) via 128-bit multiply-shift (no float).
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    /// Standard normal via Box-Muller on two uniforms; pairs are cached so the
    /// draw order is exactly two raw outputs per cached pair.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        // u1 in (0, 1] so log is finite.
        double u1 = static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Draws k distinct indices from [0, p) by partial Fisher-Yates, returned
/// ascending.
IndexSet sample_indices(SplitMix64& rng, Index p, Index k);

}  // namespace scl
