#pragma once

#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include "pvb/config.hpp"

namespace pvb {

inline constexpr const char* kVersion = PVB_VERSION;

struct ReportRow {
  static constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

  std::string experiment;
  std::string representation;
  int n = 0;
  int nx = 0;
  int np = 0;
  double prune_parameter = kNaN;
  double fraction = 1.0;
  double cond_s = kNaN;
  double h_norm = kNaN;
  int level = -1;  // -1 marks a row that carries only flags
  double eigenvalue = kNaN;
  double reference = kNaN;
  std::string reference_kind;  // analytic | direct | none
  double abs_error = kNaN;
  /// Sorted-multiset deviation of this spectrum from the direct DVR spectrum.
  double deviation = kNaN;
  std::string flags;  // ';'-separated: regularized-S, heuristic-lattice, empty-mask, error:<...>
};

/// Column names in file order.
const std::vector<std::string>& report_columns();

/// Metadata block written before the column header: version, command, the
/// fixed design conventions and, if requested, the full config.
std::string report_header(const ExperimentConfig& config, std::string_view command);

std::string format_row(const ReportRow& row);

/// Writes header + rows to `path`, creating parent directories.
void write_report(const std::filesystem::path& path, const ExperimentConfig& config,
                  std::string_view command, const std::vector<ReportRow>& rows);

/// Reads back the data rows (non-comment, non-header lines) of a report.
std::vector<std::string> read_report_rows(const std::filesystem::path& path);

/// Shortest round-trip text for a double; "nan"/"inf" for non-finite values.
std::string format_value(double v);

}  // namespace pvb
