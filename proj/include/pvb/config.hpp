#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pvb/grid_dvr.hpp"
#include "pvb/linalg.hpp"
#include "pvb/operators.hpp"
#include "pvb/vn_lattice.hpp"

namespace pvb {

/// How (Nx, Np) is chosen for each basis size.
enum class LatticeRule {
  Explicit,  // nx, np given
  Balanced,  // nx = largest divisor of N not exceeding sqrt(N)
  Square,    // nx = np = sqrt(N), N must be a perfect square
  Line,      // nx = N, np = 1
};

enum class PruneKind { All, EnergyShell, TopK };

struct ExperimentConfig {
  std::string id = "experiment";
  std::uint64_t seed = 0;

  PotentialModel model = Harmonic{};
  double mass = 1.0;

  DvrFamily family = DvrFamily::PeriodicSinc;
  double xmin = 0.0;
  double xmax = 0.0;
  std::vector<int> sizes;

  LatticeRule lattice_rule = LatticeRule::Balanced;
  int nx = 0;
  int np = 0;
  GaussianSampling sampling = GaussianSampling::Bare;

  std::vector<Representation> representations;
  int levels = 10;

  PruneKind prune_kind = PruneKind::All;
  std::vector<double> prune_values;
  std::optional<int> tracked_levels;

  std::string output_dir = "out";
  bool echo_config = true;

  bool operator==(const ExperimentConfig&) const = default;
};

bool operator==(const Harmonic& a, const Harmonic& b);
bool operator==(const Morse& a, const Morse& b);
bool operator==(const QuarticDoubleWell& a, const QuarticDoubleWell& b);

/// Parses and fully validates a configuration. Throws ConfigError naming the
/// offending field (and line, for syntax errors).
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_string(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config_string(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

/// Throws ConfigError if any referenced parameter is invalid.
void validate_config(const ExperimentConfig& config);

/// (nx, np) for basis size n under the configured rule.
std::pair<int, int> lattice_shape(const ExperimentConfig& config, int n);

}  // namespace pvb
