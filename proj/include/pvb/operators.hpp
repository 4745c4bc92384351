#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pvb/grid_dvr.hpp"

namespace pvb {

/// V(x) = omega^2 x^2 / 2. The mass enters only through the kinetic energy,
/// so the oscillator frequency is omega / sqrt(mass).
struct Harmonic {
  double omega = 1.0;
};

/// V(x) = D (1 - exp(-a (x - x_e)))^2.
struct Morse {
  double depth = 10.0;
  double width = 1.0;
  double center = 0.0;
};

/// V(x) = -c2 x^2 + c4 x^4.
struct QuarticDoubleWell {
  double c2 = 1.0;
  double c4 = 0.1;
};

using PotentialModel = std::variant<Harmonic, Morse, QuarticDoubleWell>;

void validate(const PotentialModel& model);
std::string describe(const PotentialModel& model);

double eval_potential(const PotentialModel& model, double x);

/// Default box for each model: harmonic (-10, 10), Morse (-2, 12) shifted by
/// x_e, double well (-6, 6).
std::pair<double, double> default_domain(const PotentialModel& model);

/// Number of bound levels n with n + 1/2 < sqrt(2 m D) / a.
int morse_bound_state_count(const Morse& morse, double mass);

/// Closed-form energy of level n. Harmonic and Morse only.
double analytic_level(const PotentialModel& model, double mass, int n);

/// Lowest `count` closed-form levels. Throws NotAvailable for the double
/// well, InvalidArgument when a Morse request exceeds the bound levels.
std::vector<double> analytic_levels(const PotentialModel& model, double mass, int count);

struct HamiltonianMatrix {
  RealMatrix matrix;
  DvrFamily family = DvrFamily::PeriodicSinc;
  double a = 0.0;
  double b = 0.0;
  double mass = 1.0;
  std::vector<double> potential;  // V(x_m), the diagonal potential part

  int size() const { return static_cast<int>(matrix.rows()); }
};

HamiltonianMatrix build_hamiltonian(const DvrBasis& dvr, const PotentialModel& model, double mass);

}  // namespace pvb
