#include "blp/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "blp/errors.hpp"
#include "blp/operators.hpp"
#include "blp/parallel.hpp"
#include "blp/squarefuncs.hpp"

namespace blp {

namespace {

using Grid = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr double kZeroNorm = 1e-300;

std::optional<double> finite_or_null(double x) {
  return std::isfinite(x) ? std::optional<double>(x) : std::nullopt;
}

double grid_power(const Grid& squares, const Exponent& p, const DiskRule<double>& rule) {
  return integrate_disk_grid(squares.unaryExpr([&](double v2) { return power_from_square(v2, p); }), rule);
}

void echo_family(ScanReport& r, const FamilySpec& spec) {
  r.config["family"] = to_string(spec.kind);
  r.config["degree"] = std::int64_t(spec.degree);
  r.config["decay"] = spec.decay;
  r.config["count"] = std::int64_t(spec.count);
  r.config["seed"] = std::to_string(spec.seed);  // u64 does not fit int64 in general
  if (spec.kind == FamilyKind::AtomTruncation) r.config["atom_p"] = spec.atom_p;
}

void echo_rule(ScanReport& r, const DiskRule<double>& rule) {
  r.config["radial_order"] = std::int64_t(rule.radial_order);
  r.config["angular_count"] = std::int64_t(rule.angular_count);
  r.config["grading"] = to_string(rule.grading);
  if (rule.grading.kind == Grading::Kind::Geometric) {
    r.config["grading_ratio"] = rule.grading.ratio;
    r.config["grading_levels"] = std::int64_t(rule.grading.levels);
  }
}

void add_bracket(ScanReport& r, const std::string& column, const std::string& prefix) {
  const Bracket b = bracket_of(r, column);
  if (b.count == 0) return;
  r.aggregates[prefix + "_min"] = b.min;
  r.aggregates[prefix + "_max"] = b.max;
  r.aggregates[prefix + "_median"] = b.median;
}

std::string p_label(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

struct MemberFields {
  std::vector<double> f_power;     // int |f|^p (centered for g scans)
  std::vector<double> q_power;     // int d(f)^p or g(f)^p
  std::vector<double> full_power;  // int |f|^p of the uncentered member (g scans)
  double abs_f0 = 0;
};

}  // namespace

DiskRule<double> RuleSizes::disk_rule_for(Eigen::Index degree) const {
  return build_disk_rule<double>(radial_order.value_or(default_radial_order(degree)),
                                 angular_count.value_or(default_angular_count(degree)), grading);
}

std::string to_string(Quantity q) { return q == Quantity::Dyadic ? "dyadic" : "g"; }

Quantity parse_quantity(const std::string& name) {
  if (name == "dyadic") return Quantity::Dyadic;
  if (name == "g") return Quantity::G;
  throw ConfigError("unknown quantity '" + name + "'");
}

std::string to_string(MultiplierKind kind) {
  switch (kind) {
    case MultiplierKind::Identity: return "identity";
    case MultiplierKind::Constant: return "constant";
    case MultiplierKind::DyadicSign: return "dyadic_sign";
  }
  return "unknown";
}

MultiplierKind parse_multiplier_kind(const std::string& name) {
  if (name == "identity") return MultiplierKind::Identity;
  if (name == "constant") return MultiplierKind::Constant;
  if (name == "dyadic_sign") return MultiplierKind::DyadicSign;
  throw ConfigError("unknown multiplier kind '" + name + "'");
}

Bracket bracket_of(const ScanReport& report, const std::string& column) {
  const std::size_t c = report.column(column);
  std::vector<double> xs;
  for (const auto& row : report.rows) {
    if (row.values[c] && std::isfinite(*row.values[c])) xs.push_back(*row.values[c]);
  }
  Bracket b;
  b.count = xs.size();
  if (xs.empty()) return b;
  std::sort(xs.begin(), xs.end());
  b.min = xs.front();
  b.max = xs.back();
  const std::size_t mid = xs.size() / 2;
  b.median = xs.size() % 2 == 1 ? xs[mid] : 0.5 * (xs[mid - 1] + xs[mid]);
  return b;
}

std::vector<ScanReport> run_equivalence_scans(const FamilySpec& spec, const std::vector<Exponent>& ps,
                                              Quantity quantity, const RuleSizes& sizes, int workers) {
  if (ps.empty()) throw ConfigError("at least one exponent is required");
  const std::vector<Series> family = generate_family(spec);
  const DiskRule<double> rule = sizes.disk_rule_for(spec.degree);
  const Eigen::Index rings = rule.radial_nodes.size();
  const Eigen::Index m = rule.angular_count;
  const bool is_g = quantity == Quantity::G;

  std::vector<MemberFields> fields(family.size());
  parallel_for(family.size(), workers, [&](std::size_t i) {
    const Series& f = family[i];
    Series centered = f;
    if (is_g) centered[0] = 0;
    const auto gcfg = is_g ? std::optional(make_g_config(centered)) : std::nullopt;

    Grid f2(rings, m), q2(rings, m), full2;
    if (is_g) full2.resize(rings, m);
    for (Eigen::Index r = 0; r < rings; ++r) {
      const double rho = rule.radial_nodes(r);
      f2.row(r) = evaluate_ring(centered, rho, m).cwiseAbs2().transpose();
      if (is_g) {
        q2.row(r) = g_function_ring(centered, rho, m, *gcfg).array().square().matrix().transpose();
        full2.row(r) = evaluate_ring(f, rho, m).cwiseAbs2().transpose();
      } else {
        q2.row(r) = dyadic_square_ring(f, rho, m).array().square().matrix().transpose();
      }
    }
    MemberFields& out = fields[i];
    out.abs_f0 = std::abs(f[0]);
    for (const auto& p : ps) {
      out.f_power.push_back(grid_power(f2, p, rule));
      out.q_power.push_back(grid_power(q2, p, rule));
      if (is_g) out.full_power.push_back(grid_power(full2, p, rule));
    }
  });

  std::vector<ScanReport> reports;
  for (std::size_t pi = 0; pi < ps.size(); ++pi) {
    const double p = ps[pi].value();
    ScanReport r;
    r.kind = "equiv-scan";
    echo_family(r, spec);
    echo_rule(r, rule);
    r.config["p"] = p;
    r.config["quantity"] = to_string(quantity);
    r.columns = is_g ? std::vector<std::string>{"norm_f0", "norm_g", "ratio", "ratio_p_power", "abs_f0", "norm_f",
                                                "split_rhs", "split_ratio"}
                     : std::vector<std::string>{"norm_f", "norm_d", "ratio", "ratio_p_power"};
    std::size_t skipped = 0;
    for (std::size_t i = 0; i < family.size(); ++i) {
      const MemberFields& mf = fields[i];
      ScanRow row;
      row.id = std::to_string(i);
      const double fp = mf.f_power[pi];
      const double qp = mf.q_power[pi];
      const double fn = std::pow(fp, 1.0 / p);
      const double qn = std::pow(qp, 1.0 / p);
      if (fn <= kZeroNorm) {
        ++skipped;
        row.note = "skipped: zero norm";
        row.values.assign(r.columns.size(), std::nullopt);
        row.values[0] = fn;
        row.values[1] = finite_or_null(qn);
      } else {
        row.values = {fn, qn, finite_or_null(qn / fn), finite_or_null(qp / fp)};
      }
      if (is_g) {
        const double full_p = mf.full_power[pi];
        const double full_n = std::pow(full_p, 1.0 / p);
        // p >= 1: |f(0)| + ||g(f)||;  p < 1: |f(0)|^p + ||g(f)||^p against ||f||^p.
        const double rhs = ps[pi].is_quasi() ? std::pow(mf.abs_f0, p) + qp : mf.abs_f0 + qn;
        const double lhs = ps[pi].is_quasi() ? full_p : full_n;
        if (row.values.size() < r.columns.size()) row.values.resize(r.columns.size());
        row.values[4] = mf.abs_f0;
        row.values[5] = full_n;
        row.values[6] = rhs;
        row.values[7] = full_n > kZeroNorm ? finite_or_null(rhs / lhs) : std::nullopt;
      }
      r.rows.push_back(std::move(row));
    }
    r.aggregates["members"] = double(family.size());
    r.aggregates["skipped"] = double(skipped);
    add_bracket(r, "ratio", "ratio");
    add_bracket(r, "ratio_p_power", "ratio_p_power");
    if (is_g) add_bracket(r, "split_ratio", "split_ratio");
    reports.push_back(std::move(r));
  }
  return reports;
}

ScanReport run_equivalence_scan(const FamilySpec& spec, const Exponent& p, Quantity quantity, const RuleSizes& sizes,
                                int workers) {
  return run_equivalence_scans(spec, {p}, quantity, sizes, workers).front();
}

ScanReport run_kernel_scan(const std::vector<Exponent>& ps, const std::vector<double>& radii,
                           const std::optional<RuleSizes>& sizes, int workers) {
  if (ps.empty() || radii.empty()) throw ConfigError("kernel scan needs at least one p and one radius");
  for (const double r : radii) {
    if (!(r >= 0 && r <= kKernelInteriorLimit)) throw ConfigError("kernel scan radii must lie in [0, 1 - 1e-6]");
  }
  struct Cell {
    double p, w;
    DiskRule<double> rule;
    double integral = 0, refined = 0;
  };
  std::vector<Cell> cells;
  for (const auto& p : ps) {
    for (const double w : radii) {
      DiskRule<double> rule = sizes ? build_disk_rule<double>(sizes->radial_order.value_or(16),
                                                              sizes->angular_count.value_or(4096), sizes->grading)
                                    : kernel_rule_for(w);
      cells.push_back({p.value(), w, std::move(rule)});
    }
  }
  parallel_for(cells.size(), workers, [&](std::size_t i) {
    Cell& c = cells[i];
    const Exponent p(c.p);
    c.integral = kernel_integral_value(c.w, p, c.rule);
    c.refined = kernel_integral_value(c.w, p, refine(c.rule));
  });

  ScanReport r;
  r.kind = "kernel-scan";
  r.config["band_min_radius"] = kKernelBandMinRadius;
  r.config["refinement_tolerance"] = kKernelRefinementTolerance;
  r.config["rule"] = sizes ? "fixed" : "auto";
  if (sizes) echo_rule(r, cells.front().rule);
  r.columns = {"p", "w_abs", "integral", "comparator", "ratio", "refined_integral", "relative_change",
               "radial_order", "angular_count"};
  for (const Cell& c : cells) {
    ScanRow row;
    row.id = "p=" + p_label(c.p) + ",w=" + p_label(c.w);
    const double comparator = std::pow(1.0 - c.w * c.w, -c.p);
    const double change = std::abs(c.refined - c.integral) / std::abs(c.refined);
    row.values = {c.p,
                  c.w,
                  finite_or_null(c.integral),
                  comparator,
                  finite_or_null(c.integral / comparator),
                  finite_or_null(c.refined),
                  finite_or_null(change),
                  double(c.rule.radial_order),
                  double(c.rule.angular_count)};
    if (!(change <= kKernelRefinementTolerance)) row.note = "accuracy error: refinement change above tolerance";
    r.rows.push_back(std::move(row));
  }
  for (const auto& p : ps) {
    double lo = INFINITY, hi = 0;
    for (const Cell& c : cells) {
      if (c.p != p.value() || c.w < kKernelBandMinRadius) continue;
      const double ratio = c.integral * std::pow(1.0 - c.w * c.w, c.p);
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
    if (hi == 0) continue;
    const std::string key = "p=" + p_label(p.value());
    r.aggregates["band_ratio_" + key] = hi / lo;
    r.aggregates["band_ok_" + key] = hi / lo <= 2.0 ? 1.0 : 0.0;
  }
  return r;
}

ScanReport run_multiplier_scan(const FamilySpec& spec, const Exponent& p, MultiplierKind kind,
                               std::complex<double> constant, const RuleSizes& sizes, int workers) {
  const std::vector<Series> family = generate_family(spec);
  const DiskRule<double> rule = sizes.disk_rule_for(spec.degree);
  const Eigen::Index len = spec.degree + 1;

  struct Result {
    NormResult<double> f, mf;
    double constant = 0;
  };
  std::vector<Result> results(family.size());
  parallel_for(family.size(), workers, [&](std::size_t i) {
    MultiplierSequence m;
    switch (kind) {
      case MultiplierKind::Identity: m = MultiplierSequence::identity(len); break;
      case MultiplierKind::Constant: m = MultiplierSequence::constant(len, constant); break;
      case MultiplierKind::DyadicSign:
        m = MultiplierSequence::random_dyadic_signs(len, spec.seed * 0x9E3779B97F4A7C15ULL + i + 1);
        break;
    }
    results[i] = {bergman_norm(family[i], p, rule), bergman_norm(apply_multiplier(family[i], m), p, rule),
                  multiplier_constant(m)};
  });

  ScanReport r;
  r.kind = "multiplier-scan";
  echo_family(r, spec);
  echo_rule(r, rule);
  r.config["p"] = p.value();
  r.config["multiplier"] = to_string(kind);
  if (kind == MultiplierKind::Constant) {
    r.config["constant_re"] = constant.real();
    r.config["constant_im"] = constant.imag();
  }
  r.columns = {"norm_f", "norm_mf", "constant", "ratio", "ratio_p_power"};
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const Result& res = results[i];
    ScanRow row;
    row.id = std::to_string(i);
    const double denom = res.constant * res.f.norm;
    if (!(denom > kZeroNorm)) {
      ++skipped;
      row.note = "skipped: zero norm";
      row.values = {res.f.norm, res.mf.norm, res.constant, std::nullopt, std::nullopt};
    } else {
      row.values = {res.f.norm, res.mf.norm, res.constant, finite_or_null(res.mf.norm / denom),
                    finite_or_null(res.mf.p_power / (std::pow(res.constant, p.value()) * res.f.p_power))};
    }
    r.rows.push_back(std::move(row));
  }
  r.aggregates["members"] = double(results.size());
  r.aggregates["skipped"] = double(skipped);
  add_bracket(r, "ratio", "ratio");
  add_bracket(r, "ratio_p_power", "ratio_p_power");
  return r;
}

}  // namespace blp
