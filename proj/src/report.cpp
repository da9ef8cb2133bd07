#include "blp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "blp/errors.hpp"

namespace blp {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (const char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  return out + "\"";
}

std::string json_value(const ConfigValue& v) {
  if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
  return quote(std::get<std::string>(v));
}

std::string json_optional(const std::optional<double>& v) { return v ? format_double(*v) : "null"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string emit_json(const ScanReport& r) {
  std::ostringstream os;
  os << "{\n  \"aggregates\": {";
  bool first = true;
  for (const auto& [k, v] : r.aggregates) {
    os << (first ? "\n" : ",\n") << "    " << quote(k) << ": " << format_double(v);
    first = false;
  }
  os << (r.aggregates.empty() ? "}" : "\n  }") << ",\n  \"columns\": [";
  for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? ", " : "") << quote(r.columns[i]);
  os << "],\n  \"config\": {";
  first = true;
  for (const auto& [k, v] : r.config) {
    os << (first ? "\n" : ",\n") << "    " << quote(k) << ": " << json_value(v);
    first = false;
  }
  os << (r.config.empty() ? "}" : "\n  }") << ",\n  \"kind\": " << quote(r.kind) << ",\n  \"rows\": [";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const auto& row = r.rows[i];
    os << (i ? ",\n" : "\n") << "    {\"id\": " << quote(row.id) << ", \"note\": " << quote(row.note)
       << ", \"values\": [";
    for (std::size_t c = 0; c < row.values.size(); ++c) os << (c ? ", " : "") << json_optional(row.values[c]);
    os << "]}";
  }
  os << (r.rows.empty() ? "]" : "\n  ]") << ",\n  \"version\": " << quote(r.version) << "\n}\n";
  return os.str();
}

std::string emit_csv(const ScanReport& r) {
  std::ostringstream os;
  os << "id";
  for (const auto& c : r.columns) os << ',' << csv_field(c);
  os << ",note\n";
  for (const auto& row : r.rows) {
    os << csv_field(row.id);
    for (const auto& v : row.values) os << ',' << (v && std::isfinite(*v) ? format_double(*v) : "");
    os << ',' << csv_field(row.note) << '\n';
  }
  return os.str();
}

}  // namespace

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw ConfigError("unknown format '" + name + "'");
}

std::size_t ScanReport::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ConfigError("report has no column '" + name + "'");
}

std::optional<double> ScanReport::value(std::size_t row, const std::string& name) const {
  return rows.at(row).values.at(column(name));
}

std::string emit(const ScanReport& report, Format format) {
  return format == Format::Json ? emit_json(report) : emit_csv(report);
}

ScanReport parse_report(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("report is not valid JSON: ") + e.what());
  }
  ScanReport r;
  try {
    r.kind = j.at("kind").get<std::string>();
    r.version = j.at("version").get<std::string>();
    r.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& [k, v] : j.at("aggregates").items()) {
      r.aggregates[k] = v.is_null() ? std::nan("") : v.get<double>();
    }
    for (const auto& [k, v] : j.at("config").items()) {
      if (v.is_number_integer()) {
        r.config[k] = v.get<std::int64_t>();
      } else if (v.is_number()) {
        r.config[k] = v.get<double>();
      } else if (v.is_null()) {
        r.config[k] = std::nan("");
      } else {
        r.config[k] = v.get<std::string>();
      }
    }
    for (const auto& jr : j.at("rows")) {
      ScanRow row;
      row.id = jr.at("id").get<std::string>();
      row.note = jr.at("note").get<std::string>();
      for (const auto& v : jr.at("values")) {
        row.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
      }
      r.rows.push_back(std::move(row));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  return r;
}

}  // namespace blp
