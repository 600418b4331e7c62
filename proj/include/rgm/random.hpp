#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace rgm {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream index). Used for replicates and chains.
inline Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

inline double standard_normal(Rng& rng) { return std::normal_distribution<double>(0.0, 1.0)(rng); }

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// IG(shape, scale): density ∝ x^{-shape-1} exp(-scale / x).
inline double inverse_gamma(Rng& rng, double shape, double scale) {
  // Shapes near zero underflow the gamma draw; clamp to keep the result finite.
  const double g = std::gamma_distribution<double>(shape, 1.0)(rng);
  return scale / std::max(g, std::numeric_limits<double>::min());
}

inline double chi_squared(Rng& rng, double df) { return std::chi_squared_distribution<double>(df)(rng); }

// Folds x back into [lo, hi] by mirror reflection at both ends.
inline double reflect_into(double x, double lo, double hi) {
  const double width = hi - lo;
  double y = std::fmod(x - lo, 2.0 * width);
  if (y < 0) y += 2.0 * width;
  return y <= width ? lo + y : hi - (y - width);
}

}  // namespace rgm
