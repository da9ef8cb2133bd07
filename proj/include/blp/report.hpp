#ifndef BLP_REPORT_HPP
#define BLP_REPORT_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace blp {

inline constexpr const char* kVersion = "blp 1.0.0";

using ConfigValue = std::variant<std::int64_t, double, std::string>;

struct ScanRow {
  std::string id;
  std::vector<std::optional<double>> values;  // aligned with ScanReport::columns; nullopt = undefined
  std::string note;

  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

/// Result of one experiment: config echo, per-member rows and aggregate brackets.
struct ScanReport {
  std::string kind;
  std::string version = kVersion;
  std::map<std::string, ConfigValue> config;
  std::vector<std::string> columns;
  std::vector<ScanRow> rows;
  std::map<std::string, double> aggregates;

  std::size_t column(const std::string& name) const;
  std::optional<double> value(std::size_t row, const std::string& name) const;

  friend bool operator==(const ScanReport&, const ScanReport&) = default;
};

enum class Format { Json, Csv };

Format parse_format(const std::string& name);

/// Canonical bytes: sorted keys, %.17g floats, doubles always carry a '.' or exponent.
std::string emit(const ScanReport& report, Format format);

/// Inverse of emit(report, Format::Json).
ScanReport parse_report(const std::string& json_text);

/// %.17g, with ".0" appended to integral values; "null" for non-finite values.
std::string format_double(double x);

}  // namespace blp

#endif  // BLP_REPORT_HPP
