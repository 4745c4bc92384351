// pvbsolve: run eigenvalue experiments in contracted von Neumann lattice bases.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pvb/commands.hpp"
#include "pvb/errors.hpp"

namespace {

int report(const pvb::CommandResult& result) {
  for (const auto& d : result.diagnostics) std::cerr << "pvbsolve: " << d << '\n';
  for (const auto& f : result.files) std::cout << f.string() << '\n';
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solve the 1-D Schroedinger equation in contracted von Neumann lattice bases"};
  app.require_subcommand(1);
  app.set_version_flag("--version", pvb::kVersion);

  std::string config_path;
  std::string out_dir;
  std::vector<int> indices;
  int plot_points = 1001;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides [output] dir)");
  };

  auto* solve = app.add_subcommand("solve", "Direct DVR and pvb spectra at one basis size");
  add_common(solve);
  auto* converge = app.add_subcommand("converge", "Unpruned spectra over a list of basis sizes");
  add_common(converge);
  auto* prune = app.add_subcommand("prune-scan", "Pruned pvb spectra over a list of prune parameters");
  add_common(prune);
  auto* dump = app.add_subcommand("basis-dump", "Write traces of contracted lattice functions");
  add_common(dump);
  dump->add_option("--indices", indices, "Lattice indices to dump (comma separated)")->delimiter(',');
  dump->add_option("--plot-points", plot_points, "Points in each trace")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : pvb::kExitConfigError;
  }

  try {
    pvb::ExperimentConfig config = pvb::load_config(config_path);
    if (!out_dir.empty()) config.output_dir = out_dir;

    if (*solve) return report(pvb::cmd_solve(config));
    if (*converge) return report(pvb::cmd_converge(config));
    if (*prune) return report(pvb::cmd_prune_scan(config));
    if (*dump) return report(pvb::cmd_basis_dump(config, indices, plot_points));
  } catch (const pvb::ConfigError& e) {
    std::cerr << "pvbsolve: config error: " << e.what() << '\n';
    return pvb::kExitConfigError;
  } catch (const pvb::InvalidArgument& e) {
    std::cerr << "pvbsolve: invalid argument: " << e.what() << '\n';
    return pvb::kExitConfigError;
  } catch (const pvb::Error& e) {
    std::cerr << "pvbsolve: numerical failure: " << e.what() << '\n';
    return pvb::kExitNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "pvbsolve: " << e.what() << '\n';
    return pvb::kExitNumericalFailure;
  }
  return pvb::kExitConfigError;
}
