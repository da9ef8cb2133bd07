// Seeded generators shared by the property-style tests.
#ifndef BLP_TESTS_GENERATORS_HPP
#define BLP_TESTS_GENERATORS_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "blp/series.hpp"

namespace blp::testing {

inline std::vector<Series> random_series(int count, int degree, std::uint64_t seed, double decay = 1.0) {
  FamilySpec spec;
  spec.kind = FamilyKind::RandomDecay;
  spec.degree = degree;
  spec.count = count;
  spec.seed = seed;
  spec.decay = decay;
  return generate_family(spec);
}

/// Uniform in area on the disk of the given radius.
inline std::complex<double> random_disk_point(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return std::polar(radius * std::sqrt(u(rng)), 2 * std::numbers::pi * u(rng));
}

/// f with |a_0| > sum_{k>=1} |a_k|, hence zero-free on the closed disk.
inline Series zero_free(const Series& g) {
  Series f = g;
  double tail = 0;
  for (Eigen::Index k = 1; k <= f.degree(); ++k) tail += std::abs(f[k]);
  f[0] = 1.25 * tail + 0.1;
  return f;
}

}  // namespace blp::testing

#endif  // BLP_TESTS_GENERATORS_HPP
