#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pvb/config.hpp"
#include "pvb/report.hpp"
#include "pvb/solver.hpp"

namespace pvb {

enum ExitCode : int { kExitSuccess = 0, kExitConfigError = 1, kExitNumericalFailure = 2 };

struct CommandResult {
  std::vector<ReportRow> rows;
  int exit_code = kExitSuccess;
  std::vector<std::string> diagnostics;
  std::vector<std::filesystem::path> files;
};

DvrBasis make_basis(const ExperimentConfig& config, int n);
PruneStrategy prune_strategy(const ExperimentConfig& config, double value);

/// Direct DVR plus every requested representation at a single N. A single
/// prune value in the config is applied to the pvb solves; otherwise the
/// full basis is used. Writes <dir>/<id>_solve.csv.
CommandResult cmd_solve(const ExperimentConfig& config);

/// Unpruned sweep over the configured N list. Writes <dir>/<id>_converge.csv.
CommandResult cmd_converge(const ExperimentConfig& config);

/// Sweep over prune parameters at a single N; PvbSymmetric and PvbBiorthBoth
/// always run. Writes <dir>/<id>_prune_scan.csv and a side-by-side table
/// <dir>/<id>_prune_scan_side_by_side.csv.
CommandResult cmd_prune_scan(const ExperimentConfig& config);

/// Traces of contracted lattice functions, one file per index:
/// <dir>/<id>_basis_<index>.csv with columns x, re_g, re_gt, im_gt, abs_gt.
/// The boundary-adjacent index is always added.
CommandResult cmd_basis_dump(const ExperimentConfig& config, std::vector<int> indices,
                             int plot_points);

}  // namespace pvb
