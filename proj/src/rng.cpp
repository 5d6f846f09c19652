#include "gapshift/rng.hpp"

#include <cmath>

#include "gapshift/errors.hpp"

namespace gapshift {

std::size_t Rng::weighted_index(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error("weights must be finite and non-negative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw Error("weights must carry positive total mass");
  const double x = uniform_real() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (x < acc) return i;
  }
  // Rounding pushed x past the last edge; take the last positive weight.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace gapshift
