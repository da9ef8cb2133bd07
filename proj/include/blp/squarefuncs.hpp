#ifndef BLP_SQUAREFUNCS_HPP
#define BLP_SQUAREFUNCS_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>

#include <Eigen/Dense>

#include "blp/quadrature.hpp"
#include "blp/series.hpp"

namespace blp {

/// d(f)(z) = (sum_n |Delta_n(f)(z)|^2)^{1/2}.
///
/// Each block is evaluated by Horner on its own index range and shifted by z^lo.
template <typename Real>
Real dyadic_square_function(const TruncatedSeries<Real>& f, std::complex<Real> z) {
  detail::check_in_closed_disk(z);
  const int blocks = dyadic_block_count(f.degree());
  CompensatedSum<Real> sum;
  for (int n = 0; n < blocks; ++n) {
    auto [lo, hi] = dyadic_block_range(n);
    hi = std::min(hi, f.degree() + 1);
    const std::complex<Real> block =
        detail::horner_range(f.coeffs(), lo, hi, z) * detail::int_power(z, static_cast<std::uint64_t>(lo));
    sum.add(std::norm(block));
  }
  return std::sqrt(sum.value());
}

/// d(f) at rho e^{2 pi i j / M}, j = 0..M-1; one ring FFT per dyadic block.
template <typename Real>
RealVector<Real> dyadic_square_ring(const TruncatedSeries<Real>& f, Real rho, Eigen::Index angular_count) {
  RealVector<Real> squares = RealVector<Real>::Zero(angular_count);
  const int blocks = dyadic_block_count(f.degree());
  for (int n = 0; n < blocks; ++n) {
    auto [lo, hi] = dyadic_block_range(n);
    hi = std::min(hi, f.degree() + 1);
    squares += evaluate_ring(f.coeffs(), lo, hi, rho, angular_count).cwiseAbs2();
  }
  return squares.cwiseSqrt();
}

/// mu_n = int_0^1 (1 - r^2) r^n dr under the given radial rule, n = 0..count-1.
template <typename Real>
RealVector<Real> radial_moments(const RadialRule<Real>& rule, Eigen::Index count) {
  RealVector<Real> mu(count);
  std::vector<CompensatedSum<Real>> sums(static_cast<std::size_t>(count));
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const Real r = rule.nodes(i);
    Real term = rule.weights(i) * (Real(1) - r * r);
    for (Eigen::Index n = 0; n < count; ++n) {
      sums[static_cast<std::size_t>(n)].add(term);
      term *= r;
    }
  }
  for (Eigen::Index n = 0; n < count; ++n) mu(n) = sums[static_cast<std::size_t>(n)].value();
  return mu;
}

/// Radial rule plus per-series caches for g(f).
template <typename Real>
struct GFunctionConfig {
  RadialRule<Real> radial_rule;
  std::optional<TruncatedSeries<Real>> derivative_cache;
  RealVector<Real> moments;  // radial_moments of radial_rule, for ring sweeps
};

/// Config whose Gauss-Legendre order (degree + 1) integrates (1-r^2)|f'(rz)|^2 exactly.
template <typename Real>
GFunctionConfig<Real> make_g_config(const TruncatedSeries<Real>& f, std::optional<int> order = std::nullopt) {
  GFunctionConfig<Real> cfg;
  cfg.radial_rule = build_radial_rule<Real>(order.value_or(static_cast<int>(f.degree()) + 1));
  cfg.derivative_cache = derivative(f);
  cfg.moments = radial_moments(cfg.radial_rule, std::max<Eigen::Index>(1, 2 * f.degree() - 1));
  return cfg;
}

/// g-function for an arbitrary derivative fprime, integrated with the given radial rule.
template <typename Real, typename Derivative>
Real g_from_derivative(Derivative&& fprime, std::complex<Real> z, const RadialRule<Real>& rule) {
  detail::check_in_closed_disk(z);
  const Real g2 = integrate_radial([&](Real r) { return (Real(1) - r * r) * std::norm(fprime(r * z)); }, rule);
  return std::sqrt(std::max(g2, Real(0)));
}

/// g(f)(z) = (int_0^1 (1-r^2) |f'(rz)|^2 dr)^{1/2}, z in the closed disk.
template <typename Real>
Real g_function(const TruncatedSeries<Real>& f, std::complex<Real> z, const GFunctionConfig<Real>& cfg) {
  std::optional<TruncatedSeries<Real>> local;
  const TruncatedSeries<Real>& fprime = cfg.derivative_cache ? *cfg.derivative_cache : local.emplace(derivative(f));
  return g_from_derivative(
      [&](std::complex<Real> w) {
        return detail::horner_range(fprime.coeffs(), Eigen::Index(0), fprime.degree() + 1, w);
      },
      z, cfg.radial_rule);
}

/// g(f) on the ring rho e^{2 pi i j / M}.
///
/// Expanding |f'(r rho e^{i theta})|^2 gives
///   g^2 = sum_{j,k} u_j conj(u_k) mu_{j+k} e^{i(j-k) theta},  u_j = b_j rho^j,
/// so the ring needs the lag sums c_d = sum_k u_{k+d} conj(u_k) mu_{2k+d} and one
/// inverse DFT. The moments come from the config's radial rule, so the values agree
/// with g_function node for node.
template <typename Real>
RealVector<Real> g_function_ring(const TruncatedSeries<Real>& f, Real rho, Eigen::Index angular_count,
                                 const GFunctionConfig<Real>& cfg) {
  std::optional<TruncatedSeries<Real>> local;
  const TruncatedSeries<Real>& fprime = cfg.derivative_cache ? *cfg.derivative_cache : local.emplace(derivative(f));
  const Eigen::Index n = f.degree();
  if (n == 0) return RealVector<Real>::Zero(angular_count);
  const Eigen::Index need = 2 * n - 1;
  RealVector<Real> local_mu;
  const RealVector<Real>& mu =
      cfg.moments.size() >= need ? cfg.moments : (local_mu = radial_moments(cfg.radial_rule, need));

  CoeffVector<Real> u(n);
  Real rk = 1;
  for (Eigen::Index j = 0; j < n; ++j) {
    u(j) = fprime[j] * rk;
    rk *= rho;
  }
  CoeffVector<Real> lags = CoeffVector<Real>::Zero(angular_count);
  for (Eigen::Index d = 0; d < n; ++d) {
    std::complex<Real> c(0);
    for (Eigen::Index k = 0; k + d < n; ++k) c += u(k + d) * std::conj(u(k)) * mu(2 * k + d);
    lags(d % angular_count) += d == 0 ? c : Real(2) * c;
  }
  CoeffVector<Real> values;
  detail::thread_fft<Real>().inv(values, lags);
  return values.real().cwiseMax(Real(0)).cwiseSqrt();
}

/// Exact ||g(f)||^2 in L^2(D, dA): sum_{k>=1} |a_k|^2 2k / ((2k-1)(2k+1)).
template <typename Real>
Real g_function_squared_l2(const TruncatedSeries<Real>& f) {
  CompensatedSum<Real> sum;
  for (Eigen::Index k = 1; k <= f.degree(); ++k) {
    const Real kk = Real(k);
    sum.add(std::norm(f[k]) * Real(2) * kk / ((Real(2) * kk - 1) * (Real(2) * kk + 1)));
  }
  return sum.value();
}

}  // namespace blp

#endif  // BLP_SQUAREFUNCS_HPP
