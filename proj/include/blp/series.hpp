#ifndef BLP_SERIES_HPP
#define BLP_SERIES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "blp/errors.hpp"

namespace blp {

template <typename Real>
using CoeffVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

// Slack allowed on |z| <= 1 before an evaluation point counts as outside the closed disk.
inline constexpr double kDiskSlack = 1e-12;

/// Truncated power series f(z) = sum_{k=0}^{N} a_k z^k on the closed unit disk.
///
/// The degree is a capacity: trailing coefficients may be zero. A series always
/// holds at least one coefficient.
template <typename Real>
class TruncatedSeries {
 public:
  using Scalar = std::complex<Real>;
  using Coeffs = CoeffVector<Real>;

  TruncatedSeries() : coeffs_(Coeffs::Zero(1)) {}
  explicit TruncatedSeries(Coeffs coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coeffs::Zero(1);
  }
  TruncatedSeries(std::initializer_list<Scalar> coeffs) : coeffs_(Coeffs::Zero(1)) {
    if (coeffs.size() > 0) {
      coeffs_.resize(static_cast<Eigen::Index>(coeffs.size()));
      Eigen::Index k = 0;
      for (const auto& c : coeffs) coeffs_(k++) = c;
    }
  }

  static TruncatedSeries zero(Eigen::Index degree) {
    return TruncatedSeries(Coeffs::Zero(degree + 1));
  }
  static TruncatedSeries monomial(Eigen::Index degree, Scalar c = Scalar(1)) {
    Coeffs a = Coeffs::Zero(degree + 1);
    a(degree) = c;
    return TruncatedSeries(std::move(a));
  }

  Eigen::Index degree() const { return coeffs_.size() - 1; }
  const Coeffs& coeffs() const { return coeffs_; }
  Coeffs& coeffs() { return coeffs_; }
  const Scalar& operator[](Eigen::Index k) const { return coeffs_(k); }
  Scalar& operator[](Eigen::Index k) { return coeffs_(k); }

  bool is_constant() const {
    return coeffs_.size() == 1 || coeffs_.tail(coeffs_.size() - 1).isZero(Real(0));
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_.size() == b.coeffs_.size() && a.coeffs_ == b.coeffs_;
  }

 private:
  Coeffs coeffs_;
};

using Series = TruncatedSeries<double>;

template <typename Real>
TruncatedSeries<Real> operator+(const TruncatedSeries<Real>& f, const TruncatedSeries<Real>& g) {
  const Eigen::Index n = std::max(f.degree(), g.degree()) + 1;
  CoeffVector<Real> sum = CoeffVector<Real>::Zero(n);
  sum.head(f.degree() + 1) += f.coeffs();
  sum.head(g.degree() + 1) += g.coeffs();
  return TruncatedSeries<Real>(std::move(sum));
}

template <typename Real>
TruncatedSeries<Real> operator*(std::complex<Real> c, const TruncatedSeries<Real>& f) {
  return TruncatedSeries<Real>(CoeffVector<Real>(c * f.coeffs()));
}

namespace detail {

template <typename Real>
void check_in_closed_disk(std::complex<Real> z) {
  if (!(std::abs(z) <= Real(1) + Real(kDiskSlack))) {
    throw DomainError("evaluation point outside the closed unit disk");
  }
}

// sum_{k=lo}^{hi-1} a_k z^(k-lo), nested from the top.
template <typename Real>
std::complex<Real> horner_range(const CoeffVector<Real>& a, Eigen::Index lo, Eigen::Index hi,
                                std::complex<Real> z) {
  std::complex<Real> acc(0);
  for (Eigen::Index k = hi - 1; k >= lo; --k) acc = acc * z + a(k);
  return acc;
}

template <typename Real>
std::complex<Real> int_power(std::complex<Real> z, std::uint64_t n) {
  std::complex<Real> result(1);
  while (n > 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

template <typename Real>
Eigen::FFT<Real>& thread_fft() {
  thread_local Eigen::FFT<Real> fft = [] {
    Eigen::FFT<Real> f;
    f.SetFlag(Eigen::FFT<Real>::Unscaled);
    return f;
  }();
  return fft;
}

}  // namespace detail

/// Horner evaluation of f at z, |z| <= 1.
template <typename Real>
std::complex<Real> evaluate(const TruncatedSeries<Real>& f, std::complex<Real> z) {
  detail::check_in_closed_disk(z);
  return detail::horner_range(f.coeffs(), Eigen::Index(0), f.degree() + 1, z);
}

template <typename Real>
TruncatedSeries<Real> derivative(const TruncatedSeries<Real>& f) {
  const Eigen::Index n = f.degree();
  if (n == 0) return TruncatedSeries<Real>::zero(0);
  CoeffVector<Real> d(n);
  for (Eigen::Index k = 1; k <= n; ++k) d(k - 1) = Real(k) * f[k];
  return TruncatedSeries<Real>(std::move(d));
}

/// f_r(z) = f(rz) for 0 <= r <= 1.
template <typename Real>
TruncatedSeries<Real> dilate(const TruncatedSeries<Real>& f, Real r) {
  if (!(r >= Real(0) && r <= Real(1))) throw DomainError("dilation radius outside [0, 1]");
  CoeffVector<Real> a = f.coeffs();
  if (r == Real(1)) return TruncatedSeries<Real>(std::move(a));
  a(0) = f[0];
  for (Eigen::Index k = 1; k <= f.degree(); ++k) a(k) *= std::pow(r, Real(k));
  return TruncatedSeries<Real>(std::move(a));
}

/// Coefficient rotation a_k -> a_k e^{ik phi}, i.e. z -> f(e^{i phi} z).
template <typename Real>
TruncatedSeries<Real> rotate(const TruncatedSeries<Real>& f, Real phi) {
  CoeffVector<Real> a = f.coeffs();
  for (Eigen::Index k = 1; k <= f.degree(); ++k) a(k) *= std::polar(Real(1), Real(k) * phi);
  return TruncatedSeries<Real>(std::move(a));
}

/// Index range [lo, hi) of dyadic block n: {0} for n = 0, [2^(n-1), 2^n) otherwise.
inline std::pair<Eigen::Index, Eigen::Index> dyadic_block_range(int n) {
  if (n == 0) return {0, 1};
  return {Eigen::Index(1) << (n - 1), Eigen::Index(1) << n};
}

/// Number of dyadic blocks that can be nonzero for a series of the given degree.
inline int dyadic_block_count(Eigen::Index degree) {
  int n = 1;
  while (dyadic_block_range(n - 1).second <= degree) ++n;
  return n;
}

/// Delta_n(f): the coefficients with index in block n, all others zeroed.
template <typename Real>
TruncatedSeries<Real> dyadic_block(const TruncatedSeries<Real>& f, int n) {
  if (n < 0) throw ConfigError("dyadic block index must be nonnegative");
  if (n == 0) return TruncatedSeries<Real>({f[0]});
  auto out = TruncatedSeries<Real>::zero(f.degree());
  auto [lo, hi] = dyadic_block_range(n);
  if (lo > f.degree()) return out;
  hi = std::min(hi, f.degree() + 1);
  out.coeffs().segment(lo, hi - lo) = f.coeffs().segment(lo, hi - lo);
  return out;
}

/// Values of sum_k c_k (rho e^{i theta_j})^k at theta_j = 2 pi j / M, j = 0..M-1.
///
/// Coefficients are scaled by rho^k, folded modulo M (e^{ik theta_j} is M-periodic
/// in k, so folding is exact) and pushed through one unscaled inverse DFT.
template <typename Real>
CoeffVector<Real> evaluate_ring(const CoeffVector<Real>& c, Eigen::Index lo, Eigen::Index hi, Real rho,
                                Eigen::Index angular_count) {
  CoeffVector<Real> folded = CoeffVector<Real>::Zero(angular_count);
  Real rk = lo == 0 ? Real(1) : std::pow(rho, Real(lo));
  for (Eigen::Index k = lo; k < hi; ++k) {
    folded(k % angular_count) += c(k) * rk;
    rk *= rho;
  }
  CoeffVector<Real> values;
  detail::thread_fft<Real>().inv(values, folded);
  return values;
}

template <typename Real>
CoeffVector<Real> evaluate_ring(const TruncatedSeries<Real>& f, Real rho, Eigen::Index angular_count) {
  return evaluate_ring(f.coeffs(), Eigen::Index(0), f.degree() + 1, rho, angular_count);
}

// ---------------------------------------------------------------------------
// Families of test functions
// ---------------------------------------------------------------------------

enum class FamilyKind { RandomDecay, Lacunary, Monomial, AtomTruncation };

struct FamilySpec {
  FamilyKind kind = FamilyKind::RandomDecay;
  int degree = 32;
  double decay = 1.0;  // s in the (1+k)^{-s} envelope
  int count = 1;
  std::uint64_t seed = 0;
  double atom_p = 1.0;  // exponent of the atoms drawn by AtomTruncation
};

std::string to_string(FamilyKind kind);
FamilyKind parse_family_kind(const std::string& name);

/// Deterministic under (kind, degree, decay, count, seed, atom_p).
std::vector<Series> generate_family(const FamilySpec& spec);

/// JSON array of [re, im] pairs, a_0 first.
Series parse_series_json(const std::string& json_text);
std::string series_to_json(const Series& f);

}  // namespace blp

#endif  // BLP_SERIES_HPP
