// blp: Littlewood-Paley square functions, Bergman/Hardy norms and equivalence scans.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blp/atoms.hpp"
#include "blp/errors.hpp"
#include "blp/harness.hpp"
#include "blp/norms.hpp"
#include "blp/operators.hpp"
#include "blp/parallel.hpp"
#include "blp/quadrature.hpp"
#include "blp/report.hpp"
#include "blp/series.hpp"
#include "blp/squarefuncs.hpp"

namespace {

using blp::cplx;

constexpr int kExitConfig = 2;
constexpr int kExitAccuracy = 3;

struct Options {
  std::vector<double> p{2.0};
  int degree = 32;
  int count = 200;
  std::uint64_t seed = 0;
  double decay = 1.0;
  std::string family = "random_decay";
  std::optional<int> radial_order;
  std::optional<long> angular_count;
  std::string grading = "uniform";
  std::string format = "json";
  std::string out;
  std::string series;
  int member = 0;
  std::string space = "bergman";
  std::vector<std::string> points;
  bool grid = false;
  std::string system;
  std::optional<int> truncate;
  double tol = 1e-10;
  std::string quantity = "dyadic";
  std::string multiplier = "dyadic_sign";
  std::string constant = "2,0";
  std::vector<double> radii{0.0, 0.9, 0.99, 0.999};
};

std::string read_text(const std::string& arg) {
  if (!arg.empty() && (arg.front() == '[' || arg.front() == '{')) return arg;
  std::ifstream in(arg);
  if (!in) throw blp::ConfigError("cannot read '" + arg + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

cplx parse_complex(const std::string& text) {
  double re = 0, im = 0;
  char comma = 0;
  std::istringstream is(text);
  if (!(is >> re)) throw blp::ConfigError("bad complex number '" + text + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw blp::ConfigError("bad complex number '" + text + "', expected re,im");
  }
  return {re, im};
}

blp::Exponent single_p(const Options& o) {
  if (o.p.size() != 1) throw blp::ConfigError("this subcommand takes exactly one --p");
  return blp::Exponent(o.p.front());
}

blp::FamilySpec family_spec(const Options& o) {
  blp::FamilySpec spec;
  spec.kind = blp::parse_family_kind(o.family);
  spec.degree = o.degree;
  spec.count = o.count;
  spec.seed = o.seed;
  spec.decay = o.decay;
  spec.atom_p = o.p.front();
  return spec;
}

blp::RuleSizes rule_sizes(const Options& o) {
  blp::RuleSizes sizes;
  sizes.radial_order = o.radial_order;
  if (o.angular_count) sizes.angular_count = *o.angular_count;
  sizes.grading = blp::parse_grading(o.grading);
  return sizes;
}

blp::Series input_series(const Options& o) {
  if (!o.series.empty()) return blp::parse_series_json(read_text(o.series));
  if (o.member < 0) throw blp::ConfigError("--member must be nonnegative");
  blp::FamilySpec spec = family_spec(o);
  spec.count = o.member + 1;
  const auto family = blp::generate_family(spec);
  return family[static_cast<std::size_t>(o.member)];
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw blp::ConfigError("cannot write '" + o.out + "'");
  out << text;
}

std::string rule_meta(const blp::DiskRule<double>& rule) {
  return "{\"angular_count\": " + std::to_string(rule.angular_count) + ", \"grading\": \"" +
         blp::to_string(rule.grading) + "\", \"radial_order\": " + std::to_string(rule.radial_order) + "}";
}

int cmd_norm(const Options& o) {
  const blp::Series f = input_series(o);
  const blp::Exponent p = single_p(o);
  const blp::RuleSizes sizes = rule_sizes(o);
  std::string meta;
  blp::NormResult<double> res;
  if (o.space == "bergman") {
    const auto rule = sizes.disk_rule_for(f.degree());
    res = blp::bergman_norm(f, p, rule);
    meta = rule_meta(rule);
  } else if (o.space == "hardy") {
    const Eigen::Index m = sizes.angular_count.value_or(blp::default_angular_count(f.degree()));
    res = blp::hardy_norm(f, p, m);
    meta = "{\"angular_count\": " + std::to_string(m) + "}";
  } else {
    throw blp::ConfigError("--space must be hardy or bergman");
  }
  write_output(o, "{\"norm\": " + blp::format_double(res.norm) + ", \"norm_p_power\": " +
                      blp::format_double(res.p_power) + ", \"p\": " + blp::format_double(p.value()) +
                      ", \"rule_meta\": " + meta + ", \"space\": \"" + o.space + "\"}\n");
  return 0;
}

// Pointwise values at --z points, or a dump over the disk rule nodes with --grid.
template <typename PointFn>
int dump_field(const Options& o, const blp::Series& f, PointFn&& value) {
  std::vector<cplx> zs;
  if (o.grid) {
    const auto rule = rule_sizes(o).disk_rule_for(f.degree());
    for (Eigen::Index i = 0; i < rule.radial_nodes.size(); ++i) {
      for (Eigen::Index j = 0; j < rule.angular_count; ++j) zs.push_back(std::polar(rule.radial_nodes(i), rule.angle(j)));
    }
  } else {
    for (const auto& s : o.points) zs.push_back(parse_complex(s));
    if (zs.empty()) throw blp::ConfigError("give --z points or --grid");
  }
  std::string text;
  if (o.format == "csv") {
    text = "z_re,z_im,value\n";
    for (const cplx z : zs) {
      text += blp::format_double(z.real()) + "," + blp::format_double(z.imag()) + "," +
              blp::format_double(value(z)) + "\n";
    }
  } else {
    text = "[";
    for (std::size_t k = 0; k < zs.size(); ++k) {
      text += std::string(k ? ",\n " : "") + "{\"value\": " + blp::format_double(value(zs[k])) +
              ", \"z\": [" + blp::format_double(zs[k].real()) + ", " + blp::format_double(zs[k].imag()) + "]}";
    }
    text += "]\n";
  }
  write_output(o, text);
  return 0;
}

int cmd_dyadic(const Options& o) {
  const blp::Series f = input_series(o);
  return dump_field(o, f, [&](cplx z) { return blp::dyadic_square_function(f, z); });
}

int cmd_gfun(const Options& o) {
  const blp::Series f = input_series(o);
  const auto cfg = blp::make_g_config(f);
  return dump_field(o, f, [&](cplx z) { return blp::g_function(f, z, cfg); });
}

int cmd_atoms(const Options& o) {
  if (o.system.empty()) throw blp::ConfigError("atoms needs --system");
  const blp::AtomSystem sys = blp::parse_atom_system(read_text(o.system));
  const int n = o.truncate.value_or(blp::auto_truncation_degree(sys, o.tol));
  const blp::Series truncated = blp::taylor_truncate(sys, n);
  const auto rule = rule_sizes(o).disk_rule_for(n);
  const auto norm = blp::bergman_norm(truncated, sys.p, rule);
  const double lp = blp::coefficient_lp_norm(sys);
  int stressed = 0;
  for (std::size_t k = 0; k < sys.terms.size(); ++k) stressed += sys.atom(k).boundary_stressed() ? 1 : 0;

  std::string points = "[";
  for (std::size_t k = 0; k < o.points.size(); ++k) {
    const cplx z = parse_complex(o.points[k]);
    const cplx a = blp::synthesize_evaluate(sys, z);
    const cplx b = blp::evaluate(truncated, z);
    points += std::string(k ? ", " : "") + "{\"synthesized\": [" + blp::format_double(a.real()) + ", " +
              blp::format_double(a.imag()) + "], \"truncated\": [" + blp::format_double(b.real()) + ", " +
              blp::format_double(b.imag()) + "], \"z\": [" + blp::format_double(z.real()) + ", " +
              blp::format_double(z.imag()) + "]}";
  }
  points += "]";
  write_output(o, "{\"atoms\": " + std::to_string(sys.terms.size()) +
                      ", \"bergman_norm\": " + blp::format_double(norm.norm) +
                      ", \"bergman_norm_p_power\": " + blp::format_double(norm.p_power) +
                      ", \"boundary_stressed\": " + std::to_string(stressed) +
                      ", \"coefficient_lp_norm\": " + blp::format_double(lp) +
                      ", \"norm_ratio\": " + blp::format_double(norm.norm / lp) +
                      ", \"p\": " + blp::format_double(sys.p.value()) + ", \"points\": " + points +
                      ", \"rule_meta\": " + rule_meta(rule) +
                      ", \"series\": " + blp::series_to_json(truncated) +
                      ", \"tail_estimate\": " + blp::format_double(blp::taylor_tail_estimate(sys, n)) +
                      ", \"truncation_degree\": " + std::to_string(n) + "}\n");
  return 0;
}

int cmd_multiplier(const Options& o) {
  const blp::Exponent p = single_p(o);
  const auto kind = blp::parse_multiplier_kind(o.multiplier);
  const cplx c = parse_complex(o.constant);
  if (o.series.empty()) {
    const auto report = blp::run_multiplier_scan(family_spec(o), p, kind, c, rule_sizes(o));
    write_output(o, blp::emit(report, blp::parse_format(o.format)));
    return 0;
  }
  const blp::Series f = blp::parse_series_json(read_text(o.series));
  const Eigen::Index len = f.degree() + 1;
  blp::MultiplierSequence m;
  switch (kind) {
    case blp::MultiplierKind::Identity: m = blp::MultiplierSequence::identity(len); break;
    case blp::MultiplierKind::Constant: m = blp::MultiplierSequence::constant(len, c); break;
    case blp::MultiplierKind::DyadicSign: m = blp::MultiplierSequence::random_dyadic_signs(len, o.seed); break;
  }
  const blp::Series mf = blp::apply_multiplier(f, m);
  const auto rule = rule_sizes(o).disk_rule_for(f.degree());
  const auto nf = blp::bergman_norm(f, p, rule);
  const auto nmf = blp::bergman_norm(mf, p, rule);
  const double constant = blp::multiplier_constant(m);
  write_output(o, "{\"constant\": " + blp::format_double(constant) + ", \"norm_f\": " + blp::format_double(nf.norm) +
                      ", \"norm_mf\": " + blp::format_double(nmf.norm) +
                      ", \"ratio\": " + blp::format_double(nmf.norm / (constant * nf.norm)) +
                      ", \"rule_meta\": " + rule_meta(rule) + ", \"series\": " + blp::series_to_json(mf) + "}\n");
  return 0;
}

int cmd_equiv_scan(const Options& o) {
  const auto report = blp::run_equivalence_scan(family_spec(o), single_p(o), blp::parse_quantity(o.quantity),
                                                rule_sizes(o));
  write_output(o, blp::emit(report, blp::parse_format(o.format)));
  return 0;
}

// Kernel rules default to geometric grading; --grading overrides only when given.
int cmd_kernel_scan(const Options& o, bool explicit_grading) {
  std::vector<blp::Exponent> ps;
  for (const double p : o.p) ps.emplace_back(p);
  std::optional<blp::RuleSizes> sizes;
  if (o.radial_order || o.angular_count) {
    sizes = rule_sizes(o);
    if (!explicit_grading) sizes->grading = blp::Grading::geometric();
  }
  const auto report = blp::run_kernel_scan(ps, o.radii, sizes);
  write_output(o, blp::emit(report, blp::parse_format(o.format)));
  for (const auto& row : report.rows) {
    if (!row.note.empty()) return kExitAccuracy;
  }
  return 0;
}

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--p", o.p, "exponent p > 0 (kernel-scan accepts a comma list)")->delimiter(',');
  sub->add_option("--degree", o.degree, "series degree for generated families");
  sub->add_option("--count", o.count, "family size");
  sub->add_option("--seed", o.seed, "family seed");
  sub->add_option("--decay", o.decay, "decay exponent s of random_decay coefficients");
  sub->add_option("--family", o.family, "random_decay | lacunary | monomial | atom_truncation");
  sub->add_option("--radial-order", o.radial_order, "Gauss-Legendre order per radial panel");
  sub->add_option("--angular-count", o.angular_count, "number of uniform angles");
  sub->add_option("--grading", o.grading, "uniform | geometric");
  sub->add_option("--format", o.format, "json | csv");
  sub->add_option("--out", o.out, "output path (default stdout)");
}

void add_series_input(CLI::App* sub, Options& o) {
  sub->add_option("--series", o.series, "series as inline JSON [[re,im],...] or a file path");
  sub->add_option("--member", o.member, "family member used when --series is absent");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Littlewood-Paley square functions and Bergman space norms on the unit disk"};
  app.require_subcommand(1);
  Options o;

  auto* norm = app.add_subcommand("norm", "Hardy or Bergman p-norm of a series");
  add_common(norm, o);
  add_series_input(norm, o);
  norm->add_option("--space", o.space, "hardy | bergman");

  auto* gfun = app.add_subcommand("gfun", "g-function values (CSV z_re,z_im,value)");
  auto* dyadic = app.add_subcommand("dyadic", "dyadic square function values (CSV z_re,z_im,value)");
  for (auto* sub : {gfun, dyadic}) {
    add_common(sub, o);
    add_series_input(sub, o);
    sub->add_option("--z", o.points, "evaluation point re,im (repeatable)");
    sub->add_flag("--grid", o.grid, "evaluate at every disk rule node");
  }

  auto* atoms = app.add_subcommand("atoms", "synthesize and truncate an atom system");
  add_common(atoms, o);
  atoms->add_option("--system", o.system, "atom system JSON or file path")->required();
  atoms->add_option("--truncate", o.truncate, "Taylor truncation degree (default: automatic)");
  atoms->add_option("--tol", o.tol, "tail tolerance for the automatic truncation degree");
  atoms->add_option("--z", o.points, "evaluation point re,im (repeatable)");

  auto* mult = app.add_subcommand("multiplier", "apply a coefficient multiplier or scan a family");
  add_common(mult, o);
  add_series_input(mult, o);
  mult->add_option("--kind", o.multiplier, "identity | constant | dyadic_sign");
  mult->add_option("--constant", o.constant, "value re,im for --kind constant");

  auto* equiv = app.add_subcommand("equiv-scan", "norm equivalence brackets over a family");
  add_common(equiv, o);
  equiv->add_option("--quantity", o.quantity, "dyadic | g");

  auto* kernel = app.add_subcommand("kernel-scan", "kernel integral ratio table over p and |w|");
  add_common(kernel, o);
  kernel->add_option("--radii", o.radii, "comma list of |w| values")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*norm) return cmd_norm(o);
    if (*gfun) return cmd_gfun(o);
    if (*dyadic) return cmd_dyadic(o);
    if (*atoms) return cmd_atoms(o);
    if (*mult) return cmd_multiplier(o);
    if (*equiv) return cmd_equiv_scan(o);
    if (*kernel) return cmd_kernel_scan(o, kernel->count("--grading") > 0);
  } catch (const blp::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << " (relative change " << e.relative_change() << ")\n";
    return kExitAccuracy;
  } catch (const blp::EvaluationError& e) {
    std::cerr << "evaluation error: " << e.what() << " at " << e.node() << "\n";
    return kExitAccuracy;
  } catch (const blp::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const blp::DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
