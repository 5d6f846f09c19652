#ifndef GAPSHIFT_RNG_HPP_
#define GAPSHIFT_RNG_HPP_

#include <cstdint>
#include <random>
#include <vector>

namespace gapshift {

// Seeded generator with explicit helper distributions, so sampled output
// is reproducible from the seed alone (std::*_distribution output is
// implementation-defined; these are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, n), n >= 1, by rejection.
  std::size_t uniform_index(std::size_t n) {
    const std::uint64_t limit = ~0ULL - (~0ULL % n);
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform_real() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Index drawn from the given non-negative weights (renormalized).
  std::size_t weighted_index(const std::vector<double>& weights);

  // Independent stream derived from this one, for parallel substreams.
  Rng split() { return Rng(engine_() ^ 0x9e3779b97f4a7c15ULL); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gapshift

#endif  // GAPSHIFT_RNG_HPP_
