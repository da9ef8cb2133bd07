#ifndef BLP_NORMS_HPP
#define BLP_NORMS_HPP

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Dense>

#include "blp/errors.hpp"
#include "blp/quadrature.hpp"
#include "blp/series.hpp"

namespace blp {

/// Integrability exponent 0 < p < infinity. p < 1 is the quasi-norm regime.
class Exponent {
 public:
  explicit Exponent(double p) : p_(p) {
    if (!(std::isfinite(p) && p > 0)) throw ConfigError("exponent p must be finite and positive");
  }

  double value() const { return p_; }
  bool is_quasi() const { return p_ < 1; }

  friend bool operator==(const Exponent&, const Exponent&) = default;

 private:
  double p_;
};

template <typename Real>
struct NormResult {
  Real norm = 0;
  Real p_power = 0;  // norm^p, the quantity compared when p < 1
};

// Squared magnitudes below this flush to zero before taking non-even powers.
inline constexpr double kPowerFloor = 1e-300;

/// (v2)^{p/2} for a squared magnitude v2 >= 0.
///
/// Even integer p uses repeated multiplication; other p go through exp/log with
/// values below kPowerFloor contributing 0.
template <typename Real>
Real power_from_square(Real v2, const Exponent& p) {
  const double q = p.value();
  if (q == 2.0) return v2;
  const double half = q / 2;
  if (half == std::floor(half) && half <= 64) {
    Real out = 1;
    for (int i = 0; i < static_cast<int>(half); ++i) out *= v2;
    return out;
  }
  if (v2 < Real(kPowerFloor)) return Real(0);
  return std::exp(Real(half) * std::log(v2));
}

template <typename Real>
NormResult<Real> norm_from_power(Real p_power, const Exponent& p) {
  return {std::pow(p_power, Real(1) / Real(p.value())), p_power};
}

/// (int_D field^p dA)^{1/p} where ring_field(rho, M) returns nonnegative values on a ring.
template <typename Real, typename RingField>
NormResult<Real> lp_disk_norm_rings(RingField&& ring_field, const Exponent& p, const DiskRule<Real>& rule) {
  const Real total = integrate_disk_rings(
      [&](Real rho, Eigen::Index m) -> RealVector<Real> {
        const RealVector<Real> v = ring_field(rho, m);
        return v.unaryExpr([&](Real x) { return power_from_square(x * x, p); });
      },
      rule);
  return norm_from_power(total, p);
}

/// (int_D field(z)^p dA)^{1/p} for a pointwise nonnegative field.
template <typename Real, typename Field>
NormResult<Real> lp_disk_norm(Field&& field, const Exponent& p, const DiskRule<Real>& rule) {
  const Real total = integrate_disk(
      [&](std::complex<Real> z) {
        const Real x = field(z);
        return power_from_square(x * x, p);
      },
      rule);
  return norm_from_power(total, p);
}

/// Bergman A^p norm of a pointwise-evaluable analytic function.
template <typename Real, typename Fn>
NormResult<Real> bergman_norm_of(Fn&& fn, const Exponent& p, const DiskRule<Real>& rule) {
  const Real total = integrate_disk([&](std::complex<Real> z) { return power_from_square(std::norm(fn(z)), p); }, rule);
  return norm_from_power(total, p);
}

/// ||f||_{A^p} = (int_D |f|^p dA)^{1/p}, with each ring evaluated by FFT.
template <typename Real>
NormResult<Real> bergman_norm(const TruncatedSeries<Real>& f, const Exponent& p, const DiskRule<Real>& rule) {
  const Real total = integrate_disk_rings(
      [&](Real rho, Eigen::Index m) -> RealVector<Real> {
        return evaluate_ring(f, rho, m).unaryExpr([&](std::complex<Real> v) { return power_from_square(std::norm(v), p); });
      },
      rule);
  return norm_from_power(total, p);
}

/// Circle mean int |f(r e^{i theta})|^p d theta / 2 pi on M uniform angles.
template <typename Real>
Real circle_mean_power(const TruncatedSeries<Real>& f, Real r, const Exponent& p, Eigen::Index angular_count) {
  if (angular_count < 1) throw ConfigError("angular count must be positive");
  const CoeffVector<Real> ring = evaluate_ring(f, r, angular_count);
  CompensatedSum<Real> sum;
  for (Eigen::Index j = 0; j < angular_count; ++j) sum.add(power_from_square(std::norm(ring(j)), p));
  return sum.value() / Real(angular_count);
}

/// ||f||_{H^p}. For polynomials the circle means increase with r, so the supremum
/// is the mean on the unit circle itself.
template <typename Real>
NormResult<Real> hardy_norm(const TruncatedSeries<Real>& f, const Exponent& p, Eigen::Index angular_count) {
  return norm_from_power(circle_mean_power(f, Real(1), p, angular_count), p);
}

/// Exact A^2 norm (sum |a_k|^2 / (k+1))^{1/2}.
template <typename Real>
Real bergman_l2_parseval(const TruncatedSeries<Real>& f) {
  CompensatedSum<Real> sum;
  for (Eigen::Index k = 0; k <= f.degree(); ++k) sum.add(std::norm(f[k]) / Real(k + 1));
  return std::sqrt(sum.value());
}

}  // namespace blp

#endif  // BLP_NORMS_HPP
