#ifndef RENDEZKIT_RANDOM_HPP
#define RENDEZKIT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace rendezkit {

/// Seeded generator whose output is identical on every platform: the
/// standard engine is fully specified, and the mappings to [0,1) and to
/// ranges are done here rather than by library distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Exp(1) variate; a Dirichlet(1,...,1) draw is a normalized vector of these.
  double exponential() { return -std::log1p(-uniform()); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::mt19937_64 engine_;
};

}  // namespace rendezkit

#endif  // RENDEZKIT_RANDOM_HPP
