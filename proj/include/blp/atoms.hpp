#ifndef BLP_ATOMS_HPP
#define BLP_ATOMS_HPP

#include <complex>
#include <string>
#include <vector>

#include "blp/norms.hpp"
#include "blp/quadrature.hpp"
#include "blp/series.hpp"

namespace blp {

using cplx = std::complex<double>;

// Atoms need |a| <= 1 - kAtomMargin.
inline constexpr double kAtomMargin = 1e-12;
// Atoms at or beyond this radius are reported as boundary-stressed.
inline constexpr double kBoundaryStressRadius = 0.999;

/// f_a(z) = (1 - |a|^2) / (1 - z conj(a))^{2/p + 1}, principal branch.
struct Atom {
  cplx point;
  Exponent p;

  Atom(cplx a, Exponent exponent);

  double power() const { return 2.0 / p.value() + 1.0; }
  bool boundary_stressed() const { return std::abs(point) >= kBoundaryStressRadius; }
};

struct AtomTerm {
  cplx c;
  cplx a;
};

/// f = sum_k c_k f_{a_k}, all atoms sharing one exponent.
struct AtomSystem {
  Exponent p{1.0};
  std::vector<AtomTerm> terms;

  Atom atom(std::size_t k) const { return Atom(terms[k].a, p); }
  double max_point_modulus() const;
};

cplx atom_evaluate(const Atom& atom, cplx z);

/// f_a'(z) = (2/p + 1) conj(a) (1 - |a|^2) (1 - z conj(a))^{-(2/p + 2)}.
cplx atom_derivative(const Atom& atom, cplx z);

/// (1 - |a|^2) / |1 - z conj(a)|^{2/p + 1}.
double atom_g_majorant(const Atom& atom, cplx z);

/// g(f_a)(z) from the closed-form derivative; graded radial rules resolve atoms near the circle.
double atom_g_function(const Atom& atom, cplx z, const RadialRule<double>& rule);

cplx synthesize_evaluate(const AtomSystem& sys, cplx z);

/// Taylor coefficients through z^N of sum_k c_k f_{a_k}:
/// b_m = sum_k c_k (1 - |a_k|^2) C(m) conj(a_k)^m, C(m) = prod_{j<m} (2/p + 1 + j) / (j + 1).
Series taylor_truncate(const AtomSystem& sys, int degree);

/// Upper estimate of the largest omitted Taylor term, sum_k |c_k| (1-|a_k|^2) C(N+1) |a_k|^{N+1}.
double taylor_tail_estimate(const AtomSystem& sys, int degree);

/// Smallest N >= log(tol)/log(max|a_k|) whose tail estimate is below tol, capped at 4096.
int auto_truncation_degree(const AtomSystem& sys, double tol);

/// (sum_k |c_k|^p)^{1/p}.
double coefficient_lp_norm(const AtomSystem& sys);

/// |1 - t z| <= (1 - t) + |1 - z| <= 3 |1 - t z|, for 0 < t <= 1 and |z| <= 1.
bool check_comparability(double t, cplx z);

AtomSystem parse_atom_system(const std::string& json_text);
std::string atom_system_to_json(const AtomSystem& sys);

}  // namespace blp

#endif  // BLP_ATOMS_HPP
