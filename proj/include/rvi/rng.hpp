#pragma once

#include <cstdint>
#include <random>

#include "rvi/rational.hpp"

namespace rvi {

// Deterministic RNG used by every experiment. mt19937_64 output is fixed by
// the standard, and we derive variates from raw bits only, so runs are
// byte-reproducible across platforms. std::uniform_real_distribution is not.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t bits() { return eng_(); }

    // uniform in [0,1)
    double uniform() { return double(bits() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    std::uint64_t below(std::uint64_t n) {
        // rejection-free modulo is fine here; bias is < 2^-53 for our small n
        return bits() % n;
    }

    // small random rational in (0,1], denominator <= den; used where exact
    // arithmetic must survive the sampling step
    Rat rational(unsigned den = 1u << 20) {
        const std::uint64_t d = den;
        const std::uint64_t num = 1 + below(d);
        return Rat(Int(num), Int(d));
    }

    // stream for a parallel chain: distinct, reproducible sub-seed
    static std::uint64_t chain_seed(std::uint64_t seed, std::uint64_t chain) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (chain + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace rvi
