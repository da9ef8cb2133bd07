#ifndef BLP_HARNESS_HPP
#define BLP_HARNESS_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "blp/norms.hpp"
#include "blp/quadrature.hpp"
#include "blp/report.hpp"
#include "blp/series.hpp"

namespace blp {

/// Overrides for scan quadrature; unset sizes follow the degree-based defaults.
struct RuleSizes {
  std::optional<int> radial_order;
  std::optional<Eigen::Index> angular_count;
  Grading grading = Grading::uniform();

  DiskRule<double> disk_rule_for(Eigen::Index degree) const;
};

enum class Quantity { Dyadic, G };

std::string to_string(Quantity q);
Quantity parse_quantity(const std::string& name);

/// Empirical A_p, B_p (dyadic) or alpha_p, beta_p (g) brackets over a family.
///
/// For Quantity::G members are centered (a_0 = 0) before the ratio is taken; the
/// uncentered split |f(0)| + ||g(f)|| (p >= 1) or its p-power form (p < 1) is
/// reported alongside. Members with zero norm are kept as skipped rows.
ScanReport run_equivalence_scan(const FamilySpec& spec, const Exponent& p, Quantity quantity,
                                const RuleSizes& sizes = {}, int workers = 0);

/// Same scan for several exponents; each member's fields are evaluated once.
std::vector<ScanReport> run_equivalence_scans(const FamilySpec& spec, const std::vector<Exponent>& ps,
                                              Quantity quantity, const RuleSizes& sizes = {}, int workers = 0);

// Smallest |w| included in the factor-2 band check of kernel scans.
inline constexpr double kKernelBandMinRadius = 0.9;

/// Ratio table kernel_integral(w, p) (1 - |w|^2)^p over p x |w|.
///
/// Without explicit sizes each row uses kernel_rule_for(|w|). Rows that fail the
/// refinement check keep their values and carry an "accuracy error" note.
ScanReport run_kernel_scan(const std::vector<Exponent>& ps, const std::vector<double>& radii,
                           const std::optional<RuleSizes>& sizes = std::nullopt, int workers = 0);

enum class MultiplierKind { Identity, Constant, DyadicSign };

std::string to_string(MultiplierKind kind);
MultiplierKind parse_multiplier_kind(const std::string& name);

/// Per-member ||m f||_{A^p} / (multiplier_constant(m) ||f||_{A^p}).
ScanReport run_multiplier_scan(const FamilySpec& spec, const Exponent& p, MultiplierKind kind,
                               std::complex<double> constant = {2.0, 0.0}, const RuleSizes& sizes = {},
                               int workers = 0);

/// min / max / median of the finite entries of a column.
struct Bracket {
  double min = 0;
  double max = 0;
  double median = 0;
  std::size_t count = 0;
};

Bracket bracket_of(const ScanReport& report, const std::string& column);

}  // namespace blp

#endif  // BLP_HARNESS_HPP
