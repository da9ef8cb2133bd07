#include "blp/operators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "blp/errors.hpp"

namespace blp {

namespace {

using cplx = std::complex<double>;

void check_kernel_point(cplx w, const char* what) {
  if (!(std::abs(w) <= kKernelInteriorLimit)) {
    throw DomainError(std::string(what) + " must satisfy |.| <= 1 - 1e-6");
  }
}

}  // namespace

MultiplierSequence MultiplierSequence::identity(Eigen::Index length) {
  return {CoeffVector<double>::Ones(length)};
}

MultiplierSequence MultiplierSequence::constant(Eigen::Index length, cplx c) {
  return {CoeffVector<double>::Constant(length, c)};
}

MultiplierSequence MultiplierSequence::dyadic_signs(Eigen::Index length, const std::vector<int>& signs) {
  MultiplierSequence m{CoeffVector<double>::Zero(length)};
  for (int n = 0; n < static_cast<int>(signs.size()); ++n) {
    auto [lo, hi] = dyadic_block_range(n);
    for (Eigen::Index k = lo; k < std::min(hi, length); ++k) m.values(k) = double(signs[static_cast<std::size_t>(n)]);
  }
  return m;
}

MultiplierSequence MultiplierSequence::random_dyadic_signs(Eigen::Index length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(0.5);
  std::vector<int> signs(static_cast<std::size_t>(dyadic_block_count(std::max<Eigen::Index>(0, length - 1))));
  const auto varies = [&] { return std::adjacent_find(signs.begin() + 1, signs.end(), std::not_equal_to<>()) != signs.end(); };
  do {
    for (auto& s : signs) s = coin(rng) ? 1 : -1;
  } while (signs.size() > 2 && !varies());
  return dyadic_signs(length, signs);
}

Series apply_multiplier(const Series& f, const MultiplierSequence& m) {
  if (m.size() < f.degree() + 1) throw ConfigError("multiplier sequence shorter than the series");
  return Series(CoeffVector<double>(f.coeffs().cwiseProduct(m.values.head(f.degree() + 1))));
}

MultiplierSequence operator*(const MultiplierSequence& a, const MultiplierSequence& b) {
  const Eigen::Index n = std::min(a.size(), b.size());
  return {a.values.head(n).cwiseProduct(b.values.head(n))};
}

double multiplier_constant(const MultiplierSequence& m) {
  const Eigen::Index len = m.size();
  double sup = 0;
  for (Eigen::Index k = 0; k < len; ++k) sup = std::max(sup, std::abs(m.values(k)));
  double variation = 0;
  for (Eigen::Index lo = 1; lo + 1 < len; lo *= 2) {
    double block = 0;
    for (Eigen::Index k = lo; k < 2 * lo && k + 1 < len; ++k) block += std::abs(m.values(k + 1) - m.values(k));
    variation = std::max(variation, block);
  }
  return sup + variation;
}

double kernel_integral_value(cplx w, const Exponent& p, const DiskRule<double>& rule) {
  check_kernel_point(w, "kernel point w");
  // The integral is rotation invariant, so w is placed on the positive real axis
  // and |1 - x e^{i theta}|^2 is written as (1 - x)^2 + 4 x sin^2(theta / 2).
  const double wa = std::abs(w);
  const double exponent = -(2.0 + p.value()) / 2.0;
  const Eigen::Index m = rule.angular_count;
  RealVector<double> sin2(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double s = std::sin(rule.angle(j) / 2);
    sin2(j) = s * s;
  }
  return integrate_disk_rings(
      [&](double rho, Eigen::Index) -> RealVector<double> {
        const double x = rho * wa;
        const double gap = (1 - x) * (1 - x);
        return sin2.unaryExpr([&](double s2) { return std::pow(gap + 4 * x * s2, exponent); });
      },
      rule);
}

DiskRule<double> refine(const DiskRule<double>& rule) {
  return build_disk_rule<double>(2 * rule.radial_order, 2 * rule.angular_count, rule.grading);
}

KernelIntegral kernel_integral(cplx w, const Exponent& p, const DiskRule<double>& rule) {
  KernelIntegral out;
  out.integral = kernel_integral_value(w, p, rule);
  out.refined_integral = kernel_integral_value(w, p, refine(rule));
  out.comparator = std::pow(1.0 - std::norm(w), -p.value());
  out.ratio = out.integral / out.comparator;
  out.relative_change = std::abs(out.refined_integral - out.integral) / std::abs(out.refined_integral);
  if (!(out.relative_change <= kKernelRefinementTolerance)) {
    throw AccuracyError("kernel integral not refinement-stable; use a finer rule", out.relative_change);
  }
  return out;
}

DiskRule<double> kernel_rule_for(double w_abs) {
  const double gap = std::max(1.0 - w_abs, 1e-6);
  Eigen::Index m = 64;
  while (double(m) * gap < 24.0 && m < (Eigen::Index(1) << 22)) m *= 2;
  int levels = 12;
  while (std::ldexp(1.0, -(levels - 1)) > gap / 2 && levels < 40) ++levels;
  return build_disk_rule<double>(16, m, Grading::geometric(0.5, levels));
}

double modulus_kernel_transform(const DiskField& field, cplx z, const DiskRule<double>& rule) {
  check_kernel_point(z, "transform point z");
  return integrate_disk([&](cplx w) { return field(w) / std::norm(1.0 - z * std::conj(w)); }, rule);
}

double reproducing_identity_error(const Series& f, cplx z, const DiskRule<double>& rule) {
  check_kernel_point(z, "evaluation point z");
  const cplx reproduced = integrate_disk_rings(
      [&](double rho, Eigen::Index m) -> CoeffVector<double> {
        CoeffVector<double> ring = evaluate_ring(f, rho, m);
        for (Eigen::Index j = 0; j < m; ++j) {
          const cplx k = 1.0 - z * std::polar(rho, -rule.angle(j));
          ring(j) /= k * k;
        }
        return ring;
      },
      rule);
  return std::abs(evaluate(f, z) - reproduced);
}

}  // namespace blp
