#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace sympat {

// Seeded sample stream with platform-stable output. mt19937_64 is fully
// specified by the standard and the value transforms below avoid the
// implementation-defined std::*_distribution classes, so a given seed
// reproduces the same doubles everywhere.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1)
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // standard normal via Box-Muller; one draw consumes two outputs
    double normal() {
        const double u1 = static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double angle() { return 2.0 * std::numbers::pi * uniform01(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace sympat
