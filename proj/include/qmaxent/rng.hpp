#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace qmaxent {

/// Counter-based generator (SplitMix64 finalizer over seed + counter).
/// The i-th output is a pure function of (seed, i), so streams are
/// reproducible and per-trial streams derive as seed ^ trial_index.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    static CounterRng for_trial(std::uint64_t seed, std::uint64_t trial_index) {
        return CounterRng(seed ^ trial_index);
    }

    std::uint64_t next_u64() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0, 1]; safe as a log argument.
    double next_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

    /// Standard complex Gaussian via one Box-Muller pair.
    std::complex<double> next_complex_gaussian() {
        const double r = std::sqrt(-2.0 * std::log(next_open()));
        const double phi = 2.0 * std::numbers::pi * next_double();
        return {r * std::cos(phi), r * std::sin(phi)};
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const std::complex<double> z = next_complex_gaussian();
        spare_ = z.imag();
        have_spare_ = true;
        return z.real();
    }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace qmaxent
