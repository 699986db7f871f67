#pragma once

#include <cstdint>
#include <random>

namespace polymer {

/// Seeded random stream. One instance per thread; never shared.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    /// Uniform on (0,1), never returns 0 or 1.
    double uniform() {
        const double u = static_cast<double>(eng_() >> 11) * 0x1.0p-53;
        return u > 0.0 ? u : 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Derive an independent stream (for per-case sub-seeding).
    Rng spawn() { return Rng(eng_() ^ 0x9e3779b97f4a7c15ull); }

private:
    std::mt19937_64 eng_;
};

} // namespace polymer
