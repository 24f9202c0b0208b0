#pragma once

// Tabular experiment results and their CSV / JSON / SVG renderings.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace esddfd::harness {

/// An empty (monostate) cell renders as an empty CSV field / JSON null.
using Cell = std::variant<std::monostate, double, std::int64_t, bool, std::string>;

struct ReportMetadata {
  /// Canonical config document that produced the report.
  std::string config_echo;
  std::string tool_version;
  /// UTC ISO-8601; the only field that differs between identical runs.
  std::string timestamp;
};

struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  ReportMetadata metadata;

  /// Throws std::invalid_argument unless the row width matches the columns.
  void add_row(std::vector<Cell> row);
  /// Throws std::out_of_range for an unknown column.
  std::size_t column_index(const std::string& column) const;
  /// Rectangular, unique column names, every double finite or the row
  /// carrying a true "diverged" flag.
  void validate() const;
};

/// Optional "# ..." line with version and timestamp, then header and rows.
/// Doubles use 17 significant digits, bools true/false.
std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);

struct PlotSpec {
  std::string x;
  std::vector<std::string> y;
  /// Columns splitting each y-series into one polyline per distinct value
  /// combination.
  std::vector<std::string> group_by;
  bool log_x = false;
  bool log_y = false;
  std::string title;
};

/// One polyline per (y column, group). Throws std::out_of_range when the
/// plot names a column the report does not have.
std::string to_svg(const ExperimentReport& report, const PlotSpec& plot);

/// File writers; throw std::runtime_error on I/O failure.
void emit_csv(const ExperimentReport& report, const std::filesystem::path& path);
void emit_json(const ExperimentReport& report, const std::filesystem::path& path);
void emit_svg(const ExperimentReport& report, const PlotSpec& plot, const std::filesystem::path& path);

}  // namespace esddfd::harness
