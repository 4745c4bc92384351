#pragma once

#include <string>
#include <variant>
#include <vector>

#include "pvb/linalg.hpp"
#include "pvb/operators.hpp"
#include "pvb/vn_lattice.hpp"

namespace pvb {

struct KeepAll {};

/// Keep centres whose classical energy P^2/2m + V(X) is at most `cutoff`.
struct EnergyShell {
  double cutoff = 0.0;
};

/// Keep the k centres of lowest classical energy; ties go to the lower index.
struct TopKByShellEnergy {
  int k = 1;
};

using PruneStrategy = std::variant<KeepAll, EnergyShell, TopKByShellEnergy>;

std::string describe(const PruneStrategy& strategy);

struct PruneMask {
  std::vector<int> retained;  // sorted, unique
  int total = 0;
  double fraction = 1.0;
  std::string strategy;

  int size() const { return static_cast<int>(retained.size()); }
};

PruneMask full_mask(int n);

double shell_energy(const LatticeCenter& c, const PotentialModel& model, double mass);

/// Throws EmptyMask when nothing survives.
PruneMask build_mask(const VnLattice& lat, const PotentialModel& model, double mass,
                     const PruneStrategy& strategy);

Spectrum solve_direct(const HamiltonianMatrix& h);

/// Solves the contracted-basis eigenproblem in the requested representation.
///
///   PvbSymmetric   G_M^† H G_M c = E S_M c, with S_M = G_M^† G_M.
///   PvbBiorthLeft  S_M^-1 G_M^† H G_M c = E c, non-Hermitian; real parts kept.
///   PvbBiorthBoth  B_M^† H B_M c = E (S^-1)_MM c, with B = G S^-1 and S^-1
///                  taken from the full overlap before restriction.
Spectrum solve_pvb(const HamiltonianMatrix& h, const FrameMatrices& frame, const PruneMask& mask,
                   Representation rep);

/// |a_i - b_i| over the lowest k sorted levels.
std::vector<double> compare_spectra(const Spectrum& a, const Spectrum& b, int k);

/// Largest sorted-multiset deviation over the full common length.
double max_spectrum_deviation(const Spectrum& a, const Spectrum& b);

/// Default number of tracked levels for a pruned spectrum: min(5, |M| / 4),
/// at least 1.
int default_tracked_levels(int retained);

}  // namespace pvb
