#include "pvb/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "pvb/errors.hpp"

namespace pvb {

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "experiment", "representation", "n",          "nx",        "np",
      "prune_parameter", "fraction", "cond_s",      "h_norm",    "level",
      "eigenvalue", "reference",     "reference_kind", "abs_error", "deviation",
      "flags"};
  return columns;
}

std::string format_value(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

std::string report_header(const ExperimentConfig& config, std::string_view command) {
  std::string out;
  out += fmt::format("# pvbsolve {}\n", kVersion);
  out += fmt::format("# command: {}\n", command);
  out += fmt::format("# experiment: {}\n", config.id);
  out += "# lattice-offset: half-cell (X_i = x0 + (i + 1/2) dx, P_j = -K/2 + (j + 1/2) dp)\n";
  out += "# alpha-rule: alpha = dp / (2 dx), dx * dp = 2 pi\n";
  out += fmt::format("# gaussian-sampling: {}\n", to_string(config.sampling));
  out += "# frame-weighting: G(m, n) = sqrt(w_m) g_n(x_m)\n";
  out += "# inversion-policy: Cholesky solve; truncated eigen pseudo-solve above cond_S 1e8, "
         "dropping eigenvalues below 1e-12 lambda_max\n";
  out += "# biorth-both-metric: (S^-1)_MM from the full overlap (invert-then-prune)\n";
  out += "# prune-rule: shell energy P^2/2m + V(X), ties by ascending lattice index "
         "(selection rule is an artifact choice)\n";
  if (config.family == DvrFamily::GaussLegendre) {
    out += "# lattice-placement: heuristic (uniform-grid K = 2 pi N / (b - a) on a Gauss-Legendre DVR)\n";
  }
  if (std::holds_alternative<QuarticDoubleWell>(config.model)) {
    out += "# reference: no closed-form levels for this model\n";
  }
  if (config.echo_config) {
    out += "# --- config ---\n";
    std::istringstream cfg(serialize_config(config));
    std::string line;
    while (std::getline(cfg, line)) {
      if (!line.empty()) out += "# " + line + "\n";
    }
    out += "# --- end config ---\n";
  }
  return out;
}

std::string format_row(const ReportRow& r) {
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}", r.experiment,
                     r.representation, r.n, r.nx, r.np, format_value(r.prune_parameter),
                     format_value(r.fraction), format_value(r.cond_s), format_value(r.h_norm),
                     r.level, format_value(r.eigenvalue), format_value(r.reference),
                     r.reference_kind.empty() ? "none" : r.reference_kind,
                     format_value(r.abs_error), format_value(r.deviation), r.flags);
}

void write_report(const std::filesystem::path& path, const ExperimentConfig& config,
                  std::string_view command, const std::vector<ReportRow>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(fmt::format("cannot write report '{}'", path.string()));
  out << report_header(config, command);
  out << fmt::format("{}\n", fmt::join(report_columns(), ","));
  for (const auto& row : rows) out << format_row(row) << '\n';
}

std::vector<std::string> read_report_rows(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot read report '{}'", path.string()));
  std::vector<std::string> rows;
  std::string line;
  bool seen_columns = false;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    if (!seen_columns) {
      seen_columns = true;
      continue;
    }
    rows.push_back(line);
  }
  return rows;
}

}  // namespace pvb
