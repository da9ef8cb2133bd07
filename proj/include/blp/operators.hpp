#ifndef BLP_OPERATORS_HPP
#define BLP_OPERATORS_HPP

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "blp/norms.hpp"
#include "blp/quadrature.hpp"
#include "blp/series.hpp"

namespace blp {

/// Coefficient multipliers m_0..m_N acting by a_k -> m_k a_k.
struct MultiplierSequence {
  CoeffVector<double> values;

  Eigen::Index size() const { return values.size(); }

  static MultiplierSequence identity(Eigen::Index length);
  static MultiplierSequence constant(Eigen::Index length, std::complex<double> c);
  /// m_k = signs[n] on dyadic block n (block 0 is k = 0).
  static MultiplierSequence dyadic_signs(Eigen::Index length, const std::vector<int>& signs);
  /// Fair +-1 signs per dyadic block, redrawn until blocks n >= 1 are not all equal
  /// (when there are at least two of them).
  static MultiplierSequence random_dyadic_signs(Eigen::Index length, std::uint64_t seed);
};

Series apply_multiplier(const Series& f, const MultiplierSequence& m);

MultiplierSequence operator*(const MultiplierSequence& a, const MultiplierSequence& b);

/// sup_k |m_k| + sup_{n>=0} sum_{2^n <= k < 2^{n+1}} |m_{k+1} - m_k|, truncated at the sequence length.
double multiplier_constant(const MultiplierSequence& m);

// Largest |w| or |z| accepted by the kernel routines.
inline constexpr double kKernelInteriorLimit = 1.0 - 1e-6;
// Relative change on rule doubling above which kernel integrals are rejected.
inline constexpr double kKernelRefinementTolerance = 1e-4;

struct KernelIntegral {
  double integral = 0;
  double comparator = 0;  // (1 - |w|^2)^{-p}
  double ratio = 0;       // integral / comparator
  double refined_integral = 0;
  double relative_change = 0;
};

/// int_D |1 - z conj(w)|^{-(2+p)} dA(z) on one rule, no refinement check.
double kernel_integral_value(std::complex<double> w, const Exponent& p, const DiskRule<double>& rule);

/// kernel_integral_value on rule and on its doubling; throws AccuracyError when the two
/// differ by more than kKernelRefinementTolerance relative.
KernelIntegral kernel_integral(std::complex<double> w, const Exponent& p, const DiskRule<double>& rule);

/// Geometrically graded rule sized so the angular trapezoid resolves the kernel peak at |w|.
DiskRule<double> kernel_rule_for(double w_abs);

/// Rule with radial order and angular count doubled, same grading.
DiskRule<double> refine(const DiskRule<double>& rule);

using DiskField = std::function<double(std::complex<double>)>;

/// T(field)(z) = int_D field(w) |1 - z conj(w)|^{-2} dA(w).
double modulus_kernel_transform(const DiskField& field, std::complex<double> z, const DiskRule<double>& rule);

/// |f(z) - int_D f(w) (1 - z conj(w))^{-2} dA(w)|.
double reproducing_identity_error(const Series& f, std::complex<double> z, const DiskRule<double>& rule);

}  // namespace blp

#endif  // BLP_OPERATORS_HPP
