// rng.hpp — deterministic random draws.
//
// All randomness in the project flows through this wrapper seeded with a
// single 64-bit value.  Doubles are produced with explicit bit arithmetic
// (not std::uniform_real_distribution) so that identical seeds give
// byte-identical streams on every platform.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace hslab {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // uniform in [0, 1)
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<int>(eng_() % span);
    }

    // Box-Muller, cached spare
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform(), u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // derive an independent stream deterministically
    std::uint64_t fork() { return eng_() ^ 0x9e3779b97f4a7c15ull; }

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace hslab
