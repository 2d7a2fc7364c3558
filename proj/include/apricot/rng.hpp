#pragma once

#include <cstdint>
#include <cstddef>

namespace apricot {

// Deterministic 64-bit generator (splitmix64). We roll our own uniform
// helpers because std::uniform_*_distribution output is implementation
// defined and we promise byte-identical artifacts for a given seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1), 53 bits of mantissa.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). n must be > 0.
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

    bool bernoulli(double p) { return uniform() < p; }

  private:
    std::uint64_t state_;
};

// Stateless mix used to derive independent per-item seeds (e.g. one per
// benchmark case) so parallel or partial runs cannot change results.
inline std::uint64_t deriveSeed(std::uint64_t root, std::uint64_t salt) {
    std::uint64_t z = root + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace apricot
