#include "pvb/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

struct Problem {
  DvrBasis dvr;
  HamiltonianMatrix h;
  Spectrum direct;
  double h_norm = 0.0;
  VnLattice lattice;
};

Problem setup(const ExperimentConfig& c, int n) {
  Problem p;
  p.dvr = make_basis(c, n);
  p.h = build_hamiltonian(p.dvr, c.model, c.mass);
  p.direct = solve_direct(p.h);
  p.h_norm = std::max(std::abs(p.direct.values.front()), std::abs(p.direct.values.back()));
  const auto [nx, np] = lattice_shape(c, n);
  p.lattice = build_lattice(p.dvr, nx, np, c.sampling);
  return p;
}

std::filesystem::path output_path(const ExperimentConfig& c, std::string_view suffix) {
  return std::filesystem::path(c.output_dir) / fmt::format("{}_{}", c.id, suffix);
}

std::optional<double> analytic_reference(const ExperimentConfig& c, int level) {
  if (std::holds_alternative<QuarticDoubleWell>(c.model)) return std::nullopt;
  if (const auto* m = std::get_if<Morse>(&c.model)) {
    if (level >= morse_bound_state_count(*m, c.mass)) return std::nullopt;
  }
  return analytic_level(c.model, c.mass, level);
}

ReportRow base_row(const ExperimentConfig& c, const Problem& p, std::string_view rep) {
  ReportRow row;
  row.experiment = c.id;
  row.representation = std::string(rep);
  row.n = p.dvr.size();
  row.nx = p.lattice.nx;
  row.np = p.lattice.np;
  row.h_norm = p.h_norm;
  return row;
}

std::string join_flags(std::initializer_list<std::pair<bool, std::string_view>> flags) {
  std::string out;
  for (const auto& [on, name] : flags) {
    if (!on) continue;
    if (!out.empty()) out += ';';
    out += name;
  }
  return out;
}

void append_direct(std::vector<ReportRow>& rows, const ExperimentConfig& c, const Problem& p) {
  const int count = std::min(c.levels, p.direct.size());
  for (int i = 0; i < count; ++i) {
    ReportRow row = base_row(c, p, to_string(Representation::DirectDvr));
    row.level = i;
    row.eigenvalue = p.direct.values[i];
    if (const auto ref = analytic_reference(c, i)) {
      row.reference = *ref;
      row.reference_kind = "analytic";
      row.abs_error = std::abs(row.eigenvalue - row.reference);
    } else {
      row.reference_kind = "none";
    }
    row.flags = join_flags({{p.lattice.heuristic, "heuristic-lattice"}});
    rows.push_back(std::move(row));
  }
}

void append_pvb(std::vector<ReportRow>& rows, const ExperimentConfig& c, const Problem& p,
                const Spectrum& s, int count, double prune_parameter) {
  count = std::min({count, s.size(), p.direct.size()});
  const double deviation =
      s.meta.prune_fraction >= 1.0 ? max_spectrum_deviation(s, p.direct)
                                   : [&] {
                                       const auto e = compare_spectra(s, p.direct, count);
                                       return e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
                                     }();
  for (int i = 0; i < count; ++i) {
    ReportRow row = base_row(c, p, to_string(s.meta.representation));
    row.prune_parameter = prune_parameter;
    row.fraction = s.meta.prune_fraction;
    row.cond_s = s.meta.cond_s;
    row.level = i;
    row.eigenvalue = s.values[i];
    row.reference = p.direct.values[i];
    row.reference_kind = "direct";
    row.abs_error = std::abs(row.eigenvalue - row.reference);
    row.deviation = deviation;
    row.flags = join_flags({{s.meta.regularized, "regularized-S"},
                            {p.lattice.heuristic, "heuristic-lattice"}});
    rows.push_back(std::move(row));
  }
}

ReportRow failure_row(const ExperimentConfig& c, const Problem& p, std::string_view rep,
                      double prune_parameter, std::string_view flag) {
  ReportRow row = base_row(c, p, rep);
  row.prune_parameter = prune_parameter;
  row.fraction = ReportRow::kNaN;
  row.flags = std::string(flag);
  return row;
}

std::string_view error_kind(const Error& e) {
  if (dynamic_cast<const IllConditionedFrame*>(&e)) return "error:ill-conditioned-frame";
  if (dynamic_cast<const MetricSingular*>(&e)) return "error:metric-singular";
  if (dynamic_cast<const EmptyMask*>(&e)) return "empty-mask";
  return "error:numerical";
}

struct FrameOrError {
  std::optional<FrameMatrices> frame;
  std::string error_flag;
  std::string message;
};

FrameOrError try_frame(const Problem& p) {
  FrameOrError out;
  try {
    out.frame = build_frame_matrix(p.dvr, p.lattice);
  } catch (const Error& e) {
    out.error_flag = std::string(error_kind(e));
    out.message = e.what();
  }
  return out;
}

// Runs one representation, appending rows or a failure row. Returns false on failure.
bool run_representation(std::vector<ReportRow>& rows, std::vector<std::string>& diagnostics,
                        const ExperimentConfig& c, const Problem& p, const FrameOrError& frame,
                        const PruneMask& mask, Representation rep, int count,
                        double prune_parameter, std::optional<Spectrum>* keep = nullptr) {
  if (!frame.frame) {
    rows.push_back(failure_row(c, p, to_string(rep), prune_parameter, frame.error_flag));
    diagnostics.push_back(fmt::format("N={} {}: {}", p.dvr.size(), to_string(rep), frame.message));
    return false;
  }
  try {
    Spectrum s = solve_pvb(p.h, *frame.frame, mask, rep);
    append_pvb(rows, c, p, s, count, prune_parameter);
    if (keep) *keep = std::move(s);
    return true;
  } catch (const Error& e) {
    rows.push_back(failure_row(c, p, to_string(rep), prune_parameter, error_kind(e)));
    diagnostics.push_back(fmt::format("N={} {}: {}", p.dvr.size(), to_string(rep), e.what()));
    return false;
  }
}

int single_size(const ExperimentConfig& c, std::string_view command) {
  if (c.sizes.size() != 1) {
    throw ConfigError(fmt::format("{} needs exactly one value in basis.n, got {}", command,
                                  c.sizes.size()),
                      "basis.n");
  }
  return c.sizes.front();
}

}  // namespace

DvrBasis make_basis(const ExperimentConfig& c, int n) {
  if (c.family == DvrFamily::PeriodicSinc) {
    return make_sinc_dvr(build_periodic_grid(c.xmin, c.xmax - c.xmin, n));
  }
  return build_legendre_dvr(c.xmin, c.xmax, n);
}

PruneStrategy prune_strategy(const ExperimentConfig& c, double value) {
  switch (c.prune_kind) {
    case PruneKind::All: return KeepAll{};
    case PruneKind::EnergyShell: return EnergyShell{value};
    case PruneKind::TopK: return TopKByShellEnergy{static_cast<int>(value)};
  }
  return KeepAll{};
}

CommandResult cmd_solve(const ExperimentConfig& c) {
  validate_config(c);
  const int n = single_size(c, "solve");
  CommandResult result;
  const Problem p = setup(c, n);
  append_direct(result.rows, c, p);

  if (!c.representations.empty()) {
    const FrameOrError frame = try_frame(p);
    PruneMask mask = full_mask(n);
    double prune_parameter = ReportRow::kNaN;
    bool mask_ok = true;
    if (c.prune_kind != PruneKind::All && c.prune_values.size() == 1) {
      prune_parameter = c.prune_values.front();
      try {
        mask = build_mask(p.lattice, c.model, c.mass, prune_strategy(c, prune_parameter));
      } catch (const Error& e) {
        mask_ok = false;
        for (auto rep : c.representations) {
          result.rows.push_back(failure_row(c, p, to_string(rep), prune_parameter, error_kind(e)));
        }
        result.diagnostics.push_back(e.what());
        result.exit_code = kExitNumericalFailure;
      }
    }
    if (mask_ok) {
      const int count = mask.fraction >= 1.0 ? c.levels
                                             : c.tracked_levels.value_or(default_tracked_levels(mask.size()));
      for (auto rep : c.representations) {
        if (!run_representation(result.rows, result.diagnostics, c, p, frame, mask, rep, count,
                                prune_parameter)) {
          result.exit_code = kExitNumericalFailure;
        }
      }
    }
  }
  const auto path = output_path(c, "solve.csv");
  write_report(path, c, "solve", result.rows);
  result.files.push_back(path);
  return result;
}

CommandResult cmd_converge(const ExperimentConfig& c) {
  validate_config(c);
  if (c.sizes.size() < 2) {
    throw ConfigError("converge needs at least two values in basis.n", "basis.n");
  }
  CommandResult result;
  for (int n : c.sizes) {
    const Problem p = setup(c, n);
    append_direct(result.rows, c, p);
    if (c.representations.empty()) continue;
    const FrameOrError frame = try_frame(p);
    const PruneMask mask = full_mask(n);
    for (auto rep : c.representations) {
      if (!run_representation(result.rows, result.diagnostics, c, p, frame, mask, rep, c.levels,
                              ReportRow::kNaN)) {
        result.exit_code = kExitNumericalFailure;
      }
    }
  }
  const auto path = output_path(c, "converge.csv");
  write_report(path, c, "converge", result.rows);
  result.files.push_back(path);
  return result;
}

CommandResult cmd_prune_scan(const ExperimentConfig& c) {
  validate_config(c);
  const int n = single_size(c, "prune-scan");
  if (c.prune_kind == PruneKind::All) {
    throw ConfigError("prune-scan needs prune.strategy energy-shell or top-k", "prune.strategy");
  }
  if (c.prune_values.size() < 2) {
    throw ConfigError("prune-scan needs at least two values in prune.values", "prune.values");
  }
  CommandResult result;
  const Problem p = setup(c, n);
  append_direct(result.rows, c, p);
  const FrameOrError frame = try_frame(p);

  std::vector<Representation> reps = {Representation::PvbSymmetric, Representation::PvbBiorthBoth};
  if (std::find(c.representations.begin(), c.representations.end(),
                Representation::PvbBiorthLeft) != c.representations.end()) {
    reps.insert(reps.begin() + 1, Representation::PvbBiorthLeft);
  }

  std::string side_by_side =
      "prune_parameter,fraction,retained,level,direct,pvb_symmetric,pvb_symmetric_error,"
      "pvb_biorth_both,pvb_biorth_both_error\n";

  for (double value : c.prune_values) {
    PruneMask mask;
    try {
      mask = build_mask(p.lattice, c.model, c.mass, prune_strategy(c, value));
    } catch (const EmptyMask& e) {
      for (auto rep : reps) result.rows.push_back(failure_row(c, p, to_string(rep), value, "empty-mask"));
      result.diagnostics.push_back(fmt::format("prune parameter {} skipped: {}", format_value(value), e.what()));
      continue;
    }
    const int count = std::min(mask.size(), c.tracked_levels.value_or(default_tracked_levels(mask.size())));
    std::optional<Spectrum> sym;
    std::optional<Spectrum> both;
    for (auto rep : reps) {
      std::optional<Spectrum>* keep = rep == Representation::PvbSymmetric   ? &sym
                                      : rep == Representation::PvbBiorthBoth ? &both
                                                                             : nullptr;
      if (!run_representation(result.rows, result.diagnostics, c, p, frame, mask, rep, count, value,
                              keep)) {
        result.exit_code = kExitNumericalFailure;
      }
    }
    for (int i = 0; i < count; ++i) {
      const double ref = p.direct.values[i];
      const double s = sym ? sym->values[i] : ReportRow::kNaN;
      const double b = both ? both->values[i] : ReportRow::kNaN;
      side_by_side += fmt::format("{},{},{},{},{},{},{},{},{}\n", format_value(value),
                                  format_value(mask.fraction), mask.size(), i, format_value(ref),
                                  format_value(s), format_value(std::abs(s - ref)), format_value(b),
                                  format_value(std::abs(b - ref)));
    }
  }

  const auto path = output_path(c, "prune_scan.csv");
  write_report(path, c, "prune-scan", result.rows);
  result.files.push_back(path);

  const auto side_path = output_path(c, "prune_scan_side_by_side.csv");
  std::ofstream side(side_path, std::ios::binary | std::ios::trunc);
  side << report_header(c, "prune-scan") << side_by_side;
  result.files.push_back(side_path);
  return result;
}

CommandResult cmd_basis_dump(const ExperimentConfig& c, std::vector<int> indices, int plot_points) {
  validate_config(c);
  const int n = single_size(c, "basis-dump");
  if (plot_points < 2) {
    throw InvalidArgument(fmt::format("--plot-points must be at least 2, got {}", plot_points));
  }
  const DvrBasis dvr = make_basis(c, n);
  const auto [nx, np] = lattice_shape(c, n);
  const VnLattice lat = build_lattice(dvr, nx, np, c.sampling);
  for (int idx : indices) {
    if (idx < 0 || idx >= n) {
      throw InvalidArgument(fmt::format("basis index {} out of range [0, {})", idx, n));
    }
  }
  const int boundary = boundary_adjacent_index(lat);
  if (std::find(indices.begin(), indices.end(), boundary) == indices.end()) indices.push_back(boundary);
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());

  const FrameMatrices frame = build_frame_matrix(dvr, lat);
  CommandResult result;
  for (int idx : indices) {
    const ContractedFunction f = contracted_function(dvr, frame, idx, plot_points);
    const auto path = output_path(c, fmt::format("basis_{}.csv", idx));
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(fmt::format("cannot write '{}'", path.string()));
    out << report_header(c, "basis-dump");
    const auto& center = lat.centers[idx];
    out << fmt::format("# index: {} (i = {}, j = {})\n", idx, idx / lat.np, idx % lat.np);
    out << fmt::format("# center: X = {}, P = {}\n", format_value(center.x), format_value(center.p));
    out << fmt::format("# alpha: {}\n", format_value(lat.alpha));
    out << fmt::format("# boundary-adjacent: {}\n", idx == boundary ? "yes" : "no");
    out << "x,re_g,re_gt,im_gt,abs_gt\n";
    for (std::size_t k = 0; k < f.trace.size(); ++k) {
      const double x = f.trace_x[k];
      out << fmt::format("{},{},{},{},{}\n", format_value(x),
                         format_value(gaussian_value(lat, idx, x).real()),
                         format_value(f.trace[k].real()), format_value(f.trace[k].imag()),
                         format_value(std::abs(f.trace[k])));
    }
    result.files.push_back(path);
  }
  return result;
}

}  // namespace pvb
