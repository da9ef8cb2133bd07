#ifndef BLP_QUADRATURE_HPP
#define BLP_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>

#include <Eigen/Dense>

#include "blp/errors.hpp"
#include "blp/series.hpp"

namespace blp {

// Neumaier's variant of Kahan summation. Terms are consumed in call order.
template <typename T>
class CompensatedSum {
 public:
  void add(T x) {
    const T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  T value() const { return sum_ + carry_; }

 private:
  T sum_{};
  T carry_{};
};

template <typename R>
class CompensatedSum<std::complex<R>> {
 public:
  void add(std::complex<R> x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<R> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum<R> re_;
  CompensatedSum<R> im_;
};

template <typename T>
struct is_complex : std::false_type {};
template <typename R>
struct is_complex<std::complex<R>> : std::true_type {};

/// Radial panel layout.
///
/// Geometric grading splits [0,1] at 1 - q^l, l = 1..L-1, so L panels accumulate at r = 1.
struct Grading {
  enum class Kind { Uniform, Geometric };
  Kind kind = Kind::Uniform;
  double ratio = 0.5;
  int levels = 12;

  static Grading uniform() { return {}; }
  static Grading geometric(double ratio = 0.5, int levels = 12) { return {Kind::Geometric, ratio, levels}; }

  friend bool operator==(const Grading&, const Grading&) = default;
};

inline std::string to_string(const Grading& grading) {
  return grading.kind == Grading::Kind::Uniform ? "uniform" : "geometric";
}

inline Grading parse_grading(const std::string& name) {
  if (name == "uniform") return Grading::uniform();
  if (name == "geometric") return Grading::geometric();
  throw ConfigError("unknown grading '" + name + "'");
}

/// Gauss-Legendre nodes and weights on [0,1] (weights sum to 1).
///
/// Newton iteration on the three-term recurrence from Tricomi-style initial
/// guesses; symmetric pairs are filled together.
template <typename Real>
std::pair<RealVector<Real>, RealVector<Real>> gauss_legendre_unit(int order) {
  if (order < 1) throw ConfigError("quadrature order must be positive");
  // P_n(x) and P_n'(x) by the three-term recurrence.
  auto legendre = [order](Real x) {
    Real p0 = 1, p1 = x;
    for (int k = 2; k <= order; ++k) {
      const Real p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    return std::pair<Real, Real>(p1, order * (x * p1 - p0) / (x * x - 1));
  };
  RealVector<Real> nodes(order), weights(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    Real x = std::cos(std::numbers::pi_v<Real> * (Real(i) + Real(0.75)) / (Real(order) + Real(0.5)));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [pn, dpn] = legendre(x);
      const Real dx = pn / dpn;
      x -= dx;
      if (std::abs(dx) <= Real(2) * std::numeric_limits<Real>::epsilon()) break;
    }
    const Real dpn = legendre(x).second;
    const Real w = Real(1) / ((1 - x * x) * dpn * dpn);
    nodes(order - 1 - i) = (Real(1) + x) / 2;
    nodes(i) = (Real(1) - x) / 2;
    weights(order - 1 - i) = w;
    weights(i) = w;
  }
  if (order % 2 == 1) nodes(order / 2) = Real(0.5);
  return {std::move(nodes), std::move(weights)};
}

/// Plain dr rule on [0,1].
template <typename Real>
struct RadialRule {
  RealVector<Real> nodes;
  RealVector<Real> weights;
  int order = 0;
  Grading grading;

  Eigen::Index size() const { return nodes.size(); }
};

/// Tensor rule for dA = dx dy / pi written as 2 r dr x d theta / 2 pi.
///
/// radial_weights already include the factor 2r; each angle carries weight 1/M.
template <typename Real>
struct DiskRule {
  RealVector<Real> radial_nodes;
  RealVector<Real> radial_weights;
  Eigen::Index angular_count = 1;
  int radial_order = 0;
  Grading grading;

  Eigen::Index node_count() const { return radial_nodes.size() * angular_count; }
  Real angle(Eigen::Index j) const {
    return Real(2) * std::numbers::pi_v<Real> * Real(j) / Real(angular_count);
  }
};

template <typename Real>
RadialRule<Real> build_radial_rule(int order, const Grading& grading = Grading::uniform()) {
  auto [x, w] = gauss_legendre_unit<Real>(order);
  RadialRule<Real> rule;
  rule.order = order;
  rule.grading = grading;
  if (grading.kind == Grading::Kind::Uniform) {
    rule.nodes = std::move(x);
    rule.weights = std::move(w);
    return rule;
  }
  if (!(grading.ratio > 0 && grading.ratio < 1) || grading.levels < 1) {
    throw ConfigError("geometric grading needs 0 < ratio < 1 and levels >= 1");
  }
  const int levels = grading.levels;
  rule.nodes.resize(Eigen::Index(levels) * order);
  rule.weights.resize(Eigen::Index(levels) * order);
  Real left = 0;
  for (int l = 0; l < levels; ++l) {
    const Real right = l + 1 == levels ? Real(1) : Real(1) - std::pow(Real(grading.ratio), Real(l + 1));
    const Real width = right - left;
    rule.nodes.segment(Eigen::Index(l) * order, order) = (left + width * x.array()).matrix();
    rule.weights.segment(Eigen::Index(l) * order, order) = width * w;
    left = right;
  }
  return rule;
}

template <typename Real>
DiskRule<Real> build_disk_rule(int radial_order, Eigen::Index angular_count,
                               const Grading& grading = Grading::uniform()) {
  if (angular_count < 1) throw ConfigError("angular count must be positive");
  RadialRule<Real> radial = build_radial_rule<Real>(radial_order, grading);
  DiskRule<Real> rule;
  rule.radial_order = radial_order;
  rule.grading = grading;
  rule.angular_count = angular_count;
  rule.radial_nodes = radial.nodes;
  rule.radial_weights = (Real(2) * radial.weights.array() * radial.nodes.array()).matrix();
  return rule;
}

/// Default sizes for degree-N polynomial integrands: exact for |f|^2 and g(f)^2.
inline int default_radial_order(Eigen::Index degree) { return static_cast<int>(degree) + 1; }
inline Eigen::Index default_angular_count(Eigen::Index degree) { return 2 * degree + 9; }

namespace detail {

template <typename T>
bool is_finite_value(const T& v) {
  if constexpr (is_complex<T>::value) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
  } else {
    return std::isfinite(v);
  }
}

}  // namespace detail

/// Integrate a ring-valued integrand over the disk.
///
/// ring_fn(rho, M) returns the integrand at rho e^{i theta_j}, j = 0..M-1, as an
/// Eigen vector. Summation is radial-major and compensated at both levels.
template <typename Real, typename RingFn>
auto integrate_disk_rings(RingFn&& ring_fn, const DiskRule<Real>& rule) {
  using Vec = std::decay_t<decltype(ring_fn(Real(0), Eigen::Index(1)))>;
  using T = typename Vec::Scalar;
  CompensatedSum<T> total;
  const Real inv_m = Real(1) / Real(rule.angular_count);
  for (Eigen::Index i = 0; i < rule.radial_nodes.size(); ++i) {
    const Real rho = rule.radial_nodes(i);
    const Vec ring = ring_fn(rho, rule.angular_count);
    CompensatedSum<T> mean;
    for (Eigen::Index j = 0; j < rule.angular_count; ++j) {
      if (!detail::is_finite_value(ring(j))) {
        throw EvaluationError("non-finite integrand value",
                              std::polar(double(rho), double(rule.angle(j))));
      }
      mean.add(ring(j));
    }
    total.add(rule.radial_weights(i) * (mean.value() * inv_m));
  }
  return total.value();
}

/// Integrate precomputed node values, values(i, j) at radial node i and angle j.
template <typename Real, typename Derived>
auto integrate_disk_grid(const Eigen::MatrixBase<Derived>& values, const DiskRule<Real>& rule) {
  if (values.rows() != rule.radial_nodes.size() || values.cols() != rule.angular_count) {
    throw ConfigError("grid values do not match the disk rule");
  }
  using Vec = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;
  Eigen::Index i = 0;
  return integrate_disk_rings([&](Real, Eigen::Index) -> Vec { return values.row(i++).transpose(); }, rule);
}

/// Integrate a pointwise integrand fn(z) against dA over the disk.
template <typename Real, typename Fn>
auto integrate_disk(Fn&& fn, const DiskRule<Real>& rule) {
  using T = std::decay_t<decltype(fn(std::complex<Real>()))>;
  using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
  return integrate_disk_rings(
      [&](Real rho, Eigen::Index m) {
        Vec ring(m);
        for (Eigen::Index j = 0; j < m; ++j) ring(j) = fn(std::polar(rho, rule.angle(j)));
        return ring;
      },
      rule);
}

/// Uniform trapezoid mean (1/M) sum fn(2 pi j / M).
template <typename Real = double, typename Fn>
auto integrate_circle(Fn&& fn, Eigen::Index angular_count) {
  if (angular_count < 1) throw ConfigError("angular count must be positive");
  using T = std::decay_t<decltype(fn(Real(0)))>;
  CompensatedSum<T> sum;
  for (Eigen::Index j = 0; j < angular_count; ++j) {
    const Real theta = Real(2) * std::numbers::pi_v<Real> * Real(j) / Real(angular_count);
    const T v = fn(theta);
    if (!detail::is_finite_value(v)) {
      throw EvaluationError("non-finite integrand value", std::polar(1.0, double(theta)));
    }
    sum.add(v);
  }
  return T(sum.value() / Real(angular_count));
}

/// sum_i w_i fn(r_i) against plain dr.
template <typename Real, typename Fn>
auto integrate_radial(Fn&& fn, const RadialRule<Real>& rule) {
  using T = std::decay_t<decltype(fn(Real(0)))>;
  CompensatedSum<T> sum;
  for (Eigen::Index i = 0; i < rule.size(); ++i) {
    const T v = fn(rule.nodes(i));
    if (!detail::is_finite_value(v)) {
      throw EvaluationError("non-finite integrand value", std::complex<double>(double(rule.nodes(i)), 0.0));
    }
    sum.add(rule.weights(i) * v);
  }
  return sum.value();
}

}  // namespace blp

#endif  // BLP_QUADRATURE_HPP
