#include <gtest/gtest.h>

#include "blp/norms.hpp"
#include "generators.hpp"

using cplx = std::complex<double>;
using blp::Exponent;
using blp::Series;

namespace {

blp::DiskRule<double> default_rule(const Series& f, int oversample = 1) {
  const auto n = f.degree();
  return blp::build_disk_rule<double>(oversample * blp::default_radial_order(n),
                                      oversample * blp::default_angular_count(n));
}

double parseval_oracle(const Series& f) {
  long double acc = 0;
  for (Eigen::Index k = 0; k <= f.degree(); ++k) acc += std::norm(f[k]) / static_cast<long double>(k + 1);
  return std::sqrt(static_cast<double>(acc));
}

}  // namespace

TEST(Exponent, Validation) {
  EXPECT_THROW((void)Exponent(0.0), blp::ConfigError);
  EXPECT_THROW((void)Exponent(-1.0), blp::ConfigError);
  EXPECT_THROW((void)Exponent(std::nan("")), blp::ConfigError);
  EXPECT_THROW((void)Exponent(std::numeric_limits<double>::infinity()), blp::ConfigError);
  EXPECT_TRUE(Exponent(0.5).is_quasi());
  EXPECT_FALSE(Exponent(1.0).is_quasi());
}

TEST(PowerFromSquare, Branches) {
  EXPECT_EQ(blp::power_from_square(9.0, Exponent(2)), 9.0);
  EXPECT_EQ(blp::power_from_square(3.0, Exponent(4)), 9.0);
  EXPECT_EQ(blp::power_from_square(4.0, Exponent(6)), 64.0);
  EXPECT_NEAR(blp::power_from_square(16.0, Exponent(1)), 4.0, 1e-15);
  EXPECT_NEAR(blp::power_from_square(16.0, Exponent(0.5)), 2.0, 1e-15);
  EXPECT_EQ(blp::power_from_square(0.0, Exponent(0.5)), 0.0);
  EXPECT_EQ(blp::power_from_square(1e-320, Exponent(0.5)), 0.0);
}

TEST(BergmanNorm, Examples) {
  const Series one{1.0};
  for (const double p : {0.5, 1.0, 2.0, 4.0}) {
    EXPECT_NEAR(blp::bergman_norm(one, Exponent(p), default_rule(one)).norm, 1.0, 1e-15);
  }
  const Series z{0.0, 1.0};
  EXPECT_NEAR(blp::bergman_norm(z, Exponent(2), default_rule(z)).norm, std::sqrt(0.5), 1e-15);
  const Series lin{1.0, 1.0};
  EXPECT_NEAR(blp::bergman_norm(lin, Exponent(2), default_rule(lin)).norm, std::sqrt(1.5), 1e-15);
}

TEST(BergmanNorm, MonomialClosedForm) {
  const auto rule_for = [](int n) { return blp::build_disk_rule<double>(256, blp::default_angular_count(n)); };
  for (const double p : {0.5, 1.0, 2.0, 4.0}) {
    for (int n = 0; n <= 16; ++n) {
      const double expect = std::pow(2.0 / (n * p + 2.0), 1.0 / p);
      const auto res = blp::bergman_norm(Series::monomial(n), Exponent(p), rule_for(n));
      EXPECT_NEAR(res.norm, expect, 1e-10 * expect) << "p=" << p << " n=" << n;
      EXPECT_NEAR(res.p_power, 2.0 / (n * p + 2.0), 1e-10) << "p=" << p << " n=" << n;
    }
  }
}

TEST(BergmanNorm, ParsevalAtPEqualsTwo) {
  for (const int degree : {0, 1, 5, 64, 256}) {
    const auto family = blp::testing::random_series(10, degree, 300 + degree);
    for (const auto& f : family) {
      const double ref = parseval_oracle(f);
      EXPECT_NEAR(blp::bergman_norm(f, Exponent(2), default_rule(f)).norm, ref, 1e-11 * ref);
      EXPECT_NEAR(blp::bergman_l2_parseval(f), ref, 1e-14 * ref);
    }
  }
}

TEST(BergmanNorm, DyadicBlocksAreOrthogonal) {
  const auto family = blp::testing::random_series(10, 100, 41);
  for (const auto& f : family) {
    double blocks = 0;
    for (int n = 0; n < blp::dyadic_block_count(f.degree()); ++n) {
      blocks += std::pow(blp::bergman_norm(blp::dyadic_block(f, n), Exponent(2), default_rule(f)).norm, 2);
    }
    const double whole = std::pow(blp::bergman_norm(f, Exponent(2), default_rule(f)).norm, 2);
    EXPECT_NEAR(blocks, whole, 1e-12 * whole);
  }
}

TEST(BergmanNorm, PointwiseAndRingPathsAgree) {
  const auto family = blp::testing::random_series(5, 30, 42);
  for (const auto& f : family) {
    for (const double p : {0.5, 1.0, 3.0}) {
      const auto rule = default_rule(f);
      const double ring = blp::bergman_norm(f, Exponent(p), rule).norm;
      const double pointwise = blp::bergman_norm_of([&](cplx z) { return blp::evaluate(f, z); }, Exponent(p), rule).norm;
      EXPECT_NEAR(ring, pointwise, 1e-13 * ring);
    }
  }
}

TEST(BergmanNorm, HomogeneityAndTriangle) {
  const auto fs = blp::testing::random_series(20, 32, 43);
  const auto gs = blp::testing::random_series(20, 32, 44);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const auto rule = default_rule(fs[i], 2);
    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      const Exponent e(p);
      const cplx c(0.6, -2.1);
      const double nf = blp::bergman_norm(fs[i], e, rule).norm;
      const double ng = blp::bergman_norm(gs[i], e, rule).norm;
      const double nsum = blp::bergman_norm(fs[i] + gs[i], e, rule).norm;
      EXPECT_NEAR(blp::bergman_norm(c * fs[i], e, rule).norm, std::abs(c) * nf, 1e-13 * std::abs(c) * nf);
      if (p >= 1) {
        EXPECT_LE(nsum, (nf + ng) * (1 + 1e-12));
      } else {
        // p-triangle inequality of the quasi-norm regime.
        EXPECT_LE(std::pow(nsum, p), (std::pow(nf, p) + std::pow(ng, p)) * (1 + 1e-12));
      }
    }
  }
}

TEST(BergmanNorm, IncreasingInP) {
  // dA is a probability measure, so L^p norms increase with p.
  const auto family = blp::testing::random_series(10, 24, 45);
  for (const auto& f : family) {
    const auto rule = default_rule(f, 2);
    double prev = 0;
    for (const double p : {0.5, 1.0, 1.5, 2.0, 3.0, 4.0}) {
      const double v = blp::bergman_norm(f, Exponent(p), rule).norm;
      EXPECT_GE(v * (1 + 1e-12), prev) << "p=" << p;
      prev = v;
    }
  }
}

TEST(CircleMeans, MonotoneInRadius) {
  const auto family = blp::testing::random_series(10, 40, 46);
  for (const auto& f : family) {
    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      double prev = 0;
      for (int i = 0; i < 32; ++i) {
        const double r = i / 31.0;
        const double mean = blp::circle_mean_power(f, r, Exponent(p), 4 * f.degree() + 64);
        EXPECT_GE(mean * (1 + 1e-10), prev) << "p=" << p << " r=" << r;
        prev = mean;
      }
    }
  }
}

TEST(HardyNorm, Examples) {
  for (int n = 0; n <= 16; ++n) {
    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      EXPECT_NEAR(blp::hardy_norm(Series::monomial(n), Exponent(p), 2 * n + 9).norm, 1.0, 1e-12);
    }
  }
  EXPECT_NEAR(blp::hardy_norm(Series{1.0, 1.0}, Exponent(2), 11).norm, std::sqrt(2.0), 1e-15);
}

TEST(HardyNorm, DominatesBergmanNorm) {
  const auto family = blp::testing::random_series(20, 32, 47);
  for (const auto& f : family) {
    for (const double p : {0.5, 1.0, 2.0, 4.0}) {
      const auto rule = default_rule(f, 2);
      const double b = blp::bergman_norm(f, Exponent(p), rule).norm;
      const double h = blp::hardy_norm(f, Exponent(p), 4 * f.degree() + 64).norm;
      EXPECT_LE(b, h * (1 + 1e-10)) << "p=" << p;
    }
    double h2 = 0;
    for (Eigen::Index k = 0; k <= f.degree(); ++k) h2 += std::norm(f[k]);
    EXPECT_NEAR(blp::hardy_norm(f, Exponent(2), blp::default_angular_count(f.degree())).norm, std::sqrt(h2),
                1e-13 * std::sqrt(h2));
  }
}

TEST(LpDiskNorm, Examples) {
  const auto rule = blp::build_disk_rule<double>(32, 16);
  EXPECT_NEAR(blp::lp_disk_norm([](cplx) { return 1.0; }, Exponent(1.5), rule).norm, 1.0, 1e-15);
  EXPECT_EQ(blp::lp_disk_norm([](cplx) { return 0.0; }, Exponent(0.5), rule).norm, 0.0);
  for (int k = 0; k <= 8; ++k) {
    const double got = blp::lp_disk_norm([k](cplx z) { return std::pow(std::abs(z), k); }, Exponent(2), rule).norm;
    EXPECT_NEAR(got, std::sqrt(1.0 / (k + 1)), 1e-14) << k;
  }
}

TEST(HardyNorm, ConstantIsModulus) {
  for (const double p : {0.5, 1.0, 3.0}) {
    EXPECT_NEAR(blp::hardy_norm(Series{cplx(3, -4)}, Exponent(p), 9).norm, 5.0, 1e-14);
  }
}

TEST(CircleMeans, IntegrateToBergmanPower) {
  // ||f||_{A^p}^p = 2 int_0^1 M_p(f, r)^p r dr.
  const auto family = blp::testing::random_series(6, 16, 53);
  const auto radial = blp::build_radial_rule<double>(64);
  for (const auto& f : family) {
    for (const double p : {1.0, 2.0, 4.0}) {
      const auto m = 4 * f.degree() + 16;
      const double via_means = blp::integrate_radial(
          [&](double r) { return 2 * r * blp::circle_mean_power(f, r, Exponent(p), m); }, radial);
      const double direct = blp::bergman_norm(f, Exponent(p), blp::build_disk_rule<double>(64, m)).p_power;
      EXPECT_NEAR(via_means, direct, 1e-10 * direct) << "p=" << p;
    }
  }
}
