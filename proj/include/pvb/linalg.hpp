#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pvb {

using ComplexMatrix = Eigen::MatrixXcd;

/// How a spectrum was obtained.
enum class Representation { DirectDvr, PvbSymmetric, PvbBiorthLeft, PvbBiorthBoth };

std::string_view to_string(Representation rep);
Representation representation_from_string(std::string_view name);

struct SpectrumMeta {
  Representation representation = Representation::DirectDvr;
  int basis_size = 0;
  double cond_s = std::numeric_limits<double>::quiet_NaN();
  double prune_fraction = 1.0;
  /// Largest |Im lambda| dropped by the general (non-Hermitian) solver.
  double max_imag = 0.0;
  bool regularized = false;
};

struct Spectrum {
  std::vector<double> values;  // ascending
  std::optional<ComplexMatrix> vectors;
  SpectrumMeta meta;

  int size() const { return static_cast<int>(values.size()); }
};

/// max_ij |A - A^†| relative to max_ij |A|.
double hermitian_defect(const ComplexMatrix& a);

Spectrum eigh(const ComplexMatrix& a, bool with_vectors = false);

/// A c = E M c with M Hermitian positive definite. Vectors are M-normalized.
Spectrum eigh_generalized(const ComplexMatrix& a, const ComplexMatrix& m, bool with_vectors = false);

/// Eigenvalues of a general square matrix. Real parts are returned sorted;
/// the largest discarded imaginary part goes to meta.max_imag.
Spectrum eig_general(const ComplexMatrix& a);

struct HermitianSolve {
  ComplexMatrix solution;
  double cond = 1.0;
  bool regularized = false;
  int dropped_modes = 0;
};

/// Above this condition number the solve switches to a truncated
/// eigenvalue pseudo-solve.
inline constexpr double kRegularizeAboveCond = 1e8;
/// Eigenvalues below this fraction of lambda_max are dropped when regularizing.
inline constexpr double kDropBelowRelative = 1e-12;

HermitianSolve solve_hermitian(const ComplexMatrix& s, const ComplexMatrix& rhs);

/// lambda_max / lambda_min; throws MetricSingular if S is not positive definite.
double condition_number(const ComplexMatrix& s);

/// Largest |lambda|.
double spectral_norm_hermitian(const ComplexMatrix& a);

}  // namespace pvb
