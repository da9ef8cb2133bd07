#include <gtest/gtest.h>

#include "blp/operators.hpp"
#include "generators.hpp"

using cplx = std::complex<double>;
using blp::Exponent;
using blp::MultiplierSequence;
using blp::Series;

namespace {

// int_D |1 - z conj(w)|^{-2s} dA = sum_k ((s)_k / k!)^2 x^k / (k+1), x = |w|^2, s = 1 + p/2.
double kernel_series_oracle(double w_abs, double p) {
  const long double x = static_cast<long double>(w_abs) * w_abs;
  const long double s = 1.0L + p / 2.0L;
  long double c = 1, xk = 1, sum = 0;
  for (long k = 0; k < 2000000; ++k) {
    const long double term = c * c * xk / (k + 1);
    sum += term;
    if (k > 100 && term < 1e-22L * sum) break;
    c *= (s + k) / (k + 1);
    xk *= x;
  }
  return static_cast<double>(sum);
}

blp::DiskRule<double> reproducing_rule(const Series& f) {
  const auto n = f.degree();
  return blp::build_disk_rule<double>(blp::default_radial_order(n),
                                      std::max<Eigen::Index>(blp::default_angular_count(n), 720));
}

}  // namespace

TEST(Multiplier, Examples) {
  const Series f = blp::testing::random_series(1, 4, 3).front();
  EXPECT_EQ(blp::apply_multiplier(f, MultiplierSequence::identity(5)), f);
  EXPECT_EQ(blp::apply_multiplier(f, MultiplierSequence::constant(5, 0.0)), Series::zero(4));
  const Series ones{1.0, 1.0, 1.0, 1.0, 1.0};
  const auto m = MultiplierSequence::dyadic_signs(5, {1, 1, -1, 1});
  EXPECT_EQ(blp::apply_multiplier(ones, m), (Series{1.0, 1.0, -1.0, -1.0, 1.0}));
  EXPECT_THROW(blp::apply_multiplier(ones, MultiplierSequence::identity(3)), blp::ConfigError);
}

TEST(Multiplier, ConstantExamples) {
  EXPECT_EQ(blp::multiplier_constant(MultiplierSequence::identity(100)), 1.0);
  EXPECT_NEAR(blp::multiplier_constant(MultiplierSequence::constant(50, cplx(3, 4))), 5.0, 1e-15);
  MultiplierSequence step{blp::CoeffVector<double>::Zero(5)};
  step.values(0) = step.values(1) = 1.0;
  EXPECT_EQ(blp::multiplier_constant(step), 2.0);
  // Signs change only from k = 2^n - 1 to 2^n, so each window [2^n, 2^{n+1}) holds at
  // most one jump of size 2.
  const auto m = MultiplierSequence::dyadic_signs(64, {1, 1, -1, 1, -1, -1, 1});
  EXPECT_EQ(blp::multiplier_constant(m), 3.0);
}

TEST(Multiplier, CompositionIsCoefficientwiseExact) {
  const auto family = blp::testing::random_series(10, 63, 81);
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto m1 = MultiplierSequence::random_dyadic_signs(64, 10 + i);
    MultiplierSequence m2{blp::CoeffVector<double>::Random(64)};
    const Series lhs = blp::apply_multiplier(blp::apply_multiplier(family[i], m1), m2);
    const Series rhs = blp::apply_multiplier(family[i], m1 * m2);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Multiplier, RandomDyadicSignsAreBlockConstant) {
  const auto m = MultiplierSequence::random_dyadic_signs(200, 5);
  for (int n = 0; n < blp::dyadic_block_count(199); ++n) {
    auto [lo, hi] = blp::dyadic_block_range(n);
    for (Eigen::Index k = lo; k < std::min<Eigen::Index>(hi, 200); ++k) {
      EXPECT_EQ(m.values(k), m.values(lo));
      EXPECT_EQ(std::abs(m.values(k)), 1.0);
    }
  }
  EXPECT_EQ(m.values, MultiplierSequence::random_dyadic_signs(200, 5).values);
}

TEST(Multiplier, RandomDyadicSignsAlwaysChangeSign) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto m = MultiplierSequence::random_dyadic_signs(33, seed);
    EXPECT_EQ(blp::multiplier_constant(m), 3.0) << seed;
  }
}

TEST(Kernel, OriginIsOne) {
  for (const double p : {0.5, 1.0, 2.0}) {
    const auto res = blp::kernel_integral(0.0, Exponent(p), blp::kernel_rule_for(0.0));
    EXPECT_NEAR(res.integral, 1.0, 1e-14);
    EXPECT_EQ(res.comparator, 1.0);
    EXPECT_NEAR(res.ratio, 1.0, 1e-14);
  }
}

TEST(Kernel, MatchesSeriesOracle) {
  for (const double p : {0.5, 1.0, 2.0}) {
    for (const double r : {0.3, 0.9, 0.99, 0.999}) {
      const cplx w = std::polar(r, 0.9);
      const auto res = blp::kernel_integral(w, Exponent(p), blp::kernel_rule_for(r));
      const double ref = kernel_series_oracle(r, p);
      EXPECT_NEAR(res.integral, ref, 1e-8 * ref) << "p=" << p << " |w|=" << r;
      EXPECT_LE(res.relative_change, 1e-4);
    }
  }
  // p = 2 sums in closed form to (1 - |w|^2)^{-2}: the ratio is exactly 1.
  EXPECT_NEAR(kernel_series_oracle(0.99, 2.0) * std::pow(1 - 0.99 * 0.99, 2), 1.0, 1e-12);
}

TEST(Kernel, RatioStableTowardsCircle) {
  for (const double p : {0.5, 1.0, 2.0}) {
    double lo = INFINITY, hi = 0;
    for (const double r : {0.9, 0.99, 0.999}) {
      const double ratio = blp::kernel_integral(r, Exponent(p), blp::kernel_rule_for(r)).ratio;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    EXPECT_LE(hi / lo, 2.0) << "p=" << p;
  }
}

TEST(Kernel, CoarseRuleNearCircleIsAnAccuracyError) {
  const auto coarse = blp::build_disk_rule<double>(4, 16);
  EXPECT_THROW(blp::kernel_integral(0.999, Exponent(1), coarse), blp::AccuracyError);
  EXPECT_THROW(blp::kernel_integral(1.0, Exponent(1), coarse), blp::DomainError);
}

TEST(ModulusTransform, ConstantFieldClosedForm) {
  const auto rule = blp::build_disk_rule<double>(24, 64);
  const blp::DiskField one = [](cplx) { return 1.0; };
  EXPECT_NEAR(blp::modulus_kernel_transform(one, 0.0, rule), 1.0, 1e-14);
  // int_D |1 - z conj(w)|^{-2} dA(w) = -log(1 - |z|^2) / |z|^2.
  for (const double r : {0.25, 0.5, 0.7}) {
    const cplx z = std::polar(r, -1.3);
    const double expect = -std::log(1 - r * r) / (r * r);
    EXPECT_NEAR(blp::modulus_kernel_transform(one, z, rule), expect, 1e-12 * expect) << r;
  }
  // Refinement oracle: doubling the rule does not move the value.
  const double base = blp::modulus_kernel_transform(one, 0.5, rule);
  EXPECT_NEAR(blp::modulus_kernel_transform(one, 0.5, blp::refine(rule)), base, 1e-13 * base);
}

TEST(ModulusTransform, EmpiricalL2BracketOnRandomFields) {
  // T is a positive operator bounded on L^2(dA); the family maximum is an empirical
  // lower bound for its norm.
  const auto family = blp::testing::random_series(64, 8, 91);
  const auto inner = blp::build_disk_rule<double>(24, 48);
  const auto outer = blp::build_disk_rule<double>(12, 24);
  double lo = INFINITY, hi = 0;
  for (const auto& f : family) {
    const blp::DiskField field = [&](cplx w) { return std::abs(blp::evaluate(f, w)); };
    const double tf2 = blp::integrate_disk(
        [&](cplx z) { return std::pow(blp::modulus_kernel_transform(field, z, inner), 2); }, outer);
    const double f2 = blp::integrate_disk([&](cplx z) { return std::norm(blp::evaluate(f, z)); }, outer);
    const double ratio = std::sqrt(tf2 / f2);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  EXPECT_TRUE(std::isfinite(hi));
  EXPECT_GT(lo, 0.0);
  EXPECT_LE(hi, 5.0);
}

TEST(Reproducing, ConstantIsExact) {
  const Series one{1.0};
  const auto rule = blp::build_disk_rule<double>(2, 720);
  for (const double r : {0.0, 0.5, 0.95}) EXPECT_LE(blp::reproducing_identity_error(one, std::polar(r, 2.0), rule), 1e-14);
}

TEST(Reproducing, MonomialsAndRandomPolynomials) {
  std::mt19937_64 rng(4);
  for (int k = 0; k <= 64; k += 8) {
    const Series f = Series::monomial(k);
    for (int t = 0; t < 8; ++t) {
      EXPECT_LE(blp::reproducing_identity_error(f, blp::testing::random_disk_point(rng, 0.95), reproducing_rule(f)), 1e-9)
          << "k=" << k;
    }
  }
  const auto family = blp::testing::random_series(10, 64, 95);
  for (const auto& f : family) {
    for (int t = 0; t < 32; ++t) {
      EXPECT_LE(blp::reproducing_identity_error(f, blp::testing::random_disk_point(rng, 0.95), reproducing_rule(f)), 1e-9);
    }
  }
}

TEST(Reproducing, RejectsPointsNearCircle) {
  EXPECT_THROW(blp::reproducing_identity_error(Series{1.0}, 0.9999999, blp::build_disk_rule<double>(2, 8)),
               blp::DomainError);
}
