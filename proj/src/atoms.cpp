#include "blp/atoms.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "blp/errors.hpp"
#include "blp/squarefuncs.hpp"

namespace blp {

namespace {

constexpr int kMaxTruncation = 4096;

void check_atom_point(cplx a) {
  if (!(std::abs(a) <= 1.0 - kAtomMargin)) throw DomainError("atom point must lie strictly inside the unit disk");
}

// Principal-branch Log(1 - z conj(a)); Re(1 - z conj(a)) > 0 whenever |z| <= 1 and |a| < 1.
cplx log_base(const Atom& atom, cplx z) {
  detail::check_in_closed_disk(z);
  return std::log(1.0 - z * std::conj(atom.point));
}

}  // namespace

Atom::Atom(cplx a, Exponent exponent) : point(a), p(exponent) { check_atom_point(a); }

double AtomSystem::max_point_modulus() const {
  double m = 0;
  for (const auto& t : terms) m = std::max(m, std::abs(t.a));
  return m;
}

cplx atom_evaluate(const Atom& atom, cplx z) {
  const double scale = 1.0 - std::norm(atom.point);
  return scale * std::exp(-atom.power() * log_base(atom, z));
}

cplx atom_derivative(const Atom& atom, cplx z) {
  const double scale = 1.0 - std::norm(atom.point);
  return atom.power() * std::conj(atom.point) * scale * std::exp(-(atom.power() + 1.0) * log_base(atom, z));
}

double atom_g_majorant(const Atom& atom, cplx z) {
  detail::check_in_closed_disk(z);
  const double scale = 1.0 - std::norm(atom.point);
  return scale / std::pow(std::abs(1.0 - z * std::conj(atom.point)), atom.power());
}

double atom_g_function(const Atom& atom, cplx z, const RadialRule<double>& rule) {
  return g_from_derivative([&](cplx w) { return atom_derivative(atom, w); }, z, rule);
}

cplx synthesize_evaluate(const AtomSystem& sys, cplx z) {
  cplx sum = 0;
  for (std::size_t k = 0; k < sys.terms.size(); ++k) sum += sys.terms[k].c * atom_evaluate(sys.atom(k), z);
  return sum;
}

Series taylor_truncate(const AtomSystem& sys, int degree) {
  if (degree < 0) throw ConfigError("truncation degree must be nonnegative");
  const double s = 2.0 / sys.p.value() + 1.0;
  CoeffVector<double> b = CoeffVector<double>::Zero(degree + 1);
  for (const auto& term : sys.terms) {
    check_atom_point(term.a);
    const cplx abar = std::conj(term.a);
    cplx weight = term.c * (1.0 - std::norm(term.a));  // c (1-|a|^2) C(m) conj(a)^m
    for (int m = 0; m <= degree; ++m) {
      b(m) += weight;
      weight *= abar * ((s + m) / (m + 1.0));
    }
  }
  return Series(std::move(b));
}

double taylor_tail_estimate(const AtomSystem& sys, int degree) {
  const double s = 2.0 / sys.p.value() + 1.0;
  double tail = 0;
  for (const auto& term : sys.terms) {
    const double r = std::abs(term.a);
    double w = std::abs(term.c) * (1.0 - r * r);
    for (int m = 0; m <= degree; ++m) w *= r * ((s + m) / (m + 1.0));
    tail += w;
  }
  return tail;
}

int auto_truncation_degree(const AtomSystem& sys, double tol) {
  if (!(tol > 0 && tol < 1)) throw ConfigError("truncation tolerance must lie in (0, 1)");
  const double rmax = sys.max_point_modulus();
  if (rmax == 0) return 0;
  int n = static_cast<int>(std::ceil(std::log(tol) / std::log(rmax)));
  n = std::clamp(n, 0, kMaxTruncation);
  while (n < kMaxTruncation && taylor_tail_estimate(sys, n) > tol) n = std::min(kMaxTruncation, n + std::max(8, n / 8));
  return n;
}

double coefficient_lp_norm(const AtomSystem& sys) {
  const double p = sys.p.value();
  double sum = 0;
  for (const auto& t : sys.terms) sum += std::pow(std::abs(t.c), p);
  return std::pow(sum, 1.0 / p);
}

bool check_comparability(double t, cplx z) {
  if (!(t > 0 && t <= 1)) throw DomainError("comparability parameter t must lie in (0, 1]");
  detail::check_in_closed_disk(z);
  const double lhs = std::abs(1.0 - t * z);
  const double mid = (1.0 - t) + std::abs(1.0 - z);
  // Rounding slack on both sides; the inequality is tight at t = 1 and at z = 1.
  const double slack = 8 * std::numeric_limits<double>::epsilon() * (1.0 + mid);
  return lhs <= mid + slack && mid <= 3.0 * lhs + slack;
}

AtomSystem parse_atom_system(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("atom system is not valid JSON: ") + e.what());
  }
  auto pair = [](const nlohmann::json& v, const char* what) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw ConfigError(std::string("atom field '") + what + "' must be [re, im]");
    }
    return cplx(v[0].get<double>(), v[1].get<double>());
  };
  if (!j.is_object() || !j.contains("p") || !j["p"].is_number() || !j.contains("atoms") || !j["atoms"].is_array()) {
    throw ConfigError("atom system must be {\"p\": p, \"atoms\": [...]}");
  }
  AtomSystem sys;
  sys.p = Exponent(j["p"].get<double>());
  for (const auto& entry : j["atoms"]) {
    if (!entry.is_object() || !entry.contains("c") || !entry.contains("a")) {
      throw ConfigError("each atom needs fields \"c\" and \"a\"");
    }
    const cplx a = pair(entry["a"], "a");
    check_atom_point(a);
    sys.terms.push_back({pair(entry["c"], "c"), a});
  }
  return sys;
}

std::string atom_system_to_json(const AtomSystem& sys) {
  nlohmann::json j;
  j["p"] = sys.p.value();
  j["atoms"] = nlohmann::json::array();
  for (const auto& t : sys.terms) {
    j["atoms"].push_back({{"c", {t.c.real(), t.c.imag()}}, {"a", {t.a.real(), t.a.imag()}}});
  }
  return j.dump();
}

}  // namespace blp
