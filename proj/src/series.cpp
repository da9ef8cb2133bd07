#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <json.hpp>

#include "blp/atoms.hpp"
#include "blp/errors.hpp"
#include "blp/series.hpp"

namespace blp {

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::RandomDecay: return "random_decay";
    case FamilyKind::Lacunary: return "lacunary";
    case FamilyKind::Monomial: return "monomial";
    case FamilyKind::AtomTruncation: return "atom_truncation";
  }
  return "unknown";
}

FamilyKind parse_family_kind(const std::string& name) {
  if (name == "random_decay") return FamilyKind::RandomDecay;
  if (name == "lacunary") return FamilyKind::Lacunary;
  if (name == "monomial") return FamilyKind::Monomial;
  if (name == "atom_truncation") return FamilyKind::AtomTruncation;
  throw ConfigError("unknown family kind '" + name + "'");
}

std::vector<Series> generate_family(const FamilySpec& spec) {
  if (spec.count < 1) throw ConfigError("family count must be at least 1");
  if (spec.degree < 0 || spec.degree > 4096) throw ConfigError("family degree must lie in [0, 4096]");
  if (!std::isfinite(spec.decay)) throw ConfigError("decay exponent must be finite");

  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  constexpr double two_pi = 2 * std::numbers::pi;

  std::vector<Series> family;
  family.reserve(static_cast<std::size_t>(spec.count));
  for (int m = 0; m < spec.count; ++m) {
    switch (spec.kind) {
      case FamilyKind::RandomDecay: {
        CoeffVector<double> a(spec.degree + 1);
        for (int k = 0; k <= spec.degree; ++k) {
          const double re = gauss(rng);
          const double im = gauss(rng);
          a(k) = cplx(re, im) * std::pow(1.0 + k, -spec.decay);
        }
        family.emplace_back(std::move(a));
        break;
      }
      case FamilyKind::Lacunary: {
        CoeffVector<double> a = CoeffVector<double>::Zero(spec.degree + 1);
        for (long k = 1; k <= spec.degree; k *= 2) a(k) = std::polar(1.0, two_pi * unit(rng));
        family.emplace_back(std::move(a));
        break;
      }
      case FamilyKind::Monomial:
        family.push_back(Series::monomial(spec.degree));
        break;
      case FamilyKind::AtomTruncation: {
        // |a| uniform in [0, 0.9] keeps the truncation tail small at moderate degree.
        const double radius = 0.9 * unit(rng);
        const double angle = two_pi * unit(rng);
        AtomSystem sys;
        sys.p = Exponent(spec.atom_p);
        sys.terms.push_back({cplx(1.0, 0.0), std::polar(radius, angle)});
        family.push_back(taylor_truncate(sys, spec.degree));
        break;
      }
    }
  }
  return family;
}

Series parse_series_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("series is not valid JSON: ") + e.what());
  }
  if (!j.is_array() || j.empty()) throw ConfigError("series must be a nonempty array of [re, im] pairs");
  if (j.size() > 4097) throw ConfigError("series capacity is limited to degree 4096");
  CoeffVector<double> a(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto& c = j[k];
    if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number()) {
      throw ConfigError("series coefficient " + std::to_string(k) + " is not an [re, im] pair");
    }
    a(static_cast<Eigen::Index>(k)) = cplx(c[0].get<double>(), c[1].get<double>());
  }
  return Series(std::move(a));
}

std::string series_to_json(const Series& f) {
  std::string out = "[";
  for (Eigen::Index k = 0; k <= f.degree(); ++k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s[%.17g, %.17g]", k ? ", " : "", f[k].real(), f[k].imag());
    out += buf;
  }
  return out + "]";
}

}  // namespace blp
