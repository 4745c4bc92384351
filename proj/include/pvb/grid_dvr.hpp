#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace pvb {

using RealMatrix = Eigen::MatrixXd;

/// Uniform periodic grid x_m = x0 + m*L/N on [x0, x0 + L).
struct Grid {
  double x0 = 0.0;
  double length = 0.0;
  int size = 0;
  std::vector<double> points;
  double weight = 0.0;

  double spacing() const { return length / size; }
};

Grid build_periodic_grid(double x0, double length, int n);

/// Symmetric Fourier wavenumbers carried by an n-point periodic grid of the
/// given length. For even n the last entry is the Nyquist wavenumber, which
/// is shared between +k and -k with half weight each.
std::vector<double> grid_wavenumbers(double length, int n);

/// Normalized periodic Dirichlet kernel centred on node m. Real for all n:
/// the Nyquist mode of an even grid enters as a cosine.
double sinc_dvr_theta(const Grid& grid, int m, double x);

/// Fourier-grid kinetic matrix F^† diag(k^2 / 2 mass) F for an n-point grid
/// spanning `length`. Accepts n = 1, which is the single k = 0 mode.
RealMatrix fgh_kinetic(double length, int n, double mass);
RealMatrix build_fgh_kinetic(const Grid& grid, double mass);

enum class DvrFamily { PeriodicSinc, GaussLegendre };

std::string_view to_string(DvrFamily family);
DvrFamily dvr_family_from_string(std::string_view name);

struct DvrBasis {
  DvrFamily family = DvrFamily::PeriodicSinc;
  std::vector<double> points;
  std::vector<double> weights;
  double a = 0.0;  // domain start
  double b = 0.0;  // domain end (exclusive for PeriodicSinc)
  /// Rows index orthonormal Legendre degree j, columns index node m:
  /// U(j, m) = sqrt(w_m) * P_j(x_m). Empty for PeriodicSinc.
  RealMatrix fbr_to_dvr;
  /// Quadrature rule recorded in report metadata.
  std::string_view quadrature = "uniform";

  int size() const { return static_cast<int>(points.size()); }
  double length() const { return b - a; }
};

DvrBasis make_sinc_dvr(const Grid& grid);
DvrBasis build_legendre_dvr(double a, double b, int n);

/// Orthonormal Legendre polynomials on (a, b), degrees 0..count-1, at x.
std::vector<double> legendre_values(double a, double b, int count, double x);
/// d/dx of the orthonormal Legendre polynomials on (a, b).
std::vector<double> legendre_derivatives(double a, double b, int count, double x);

/// Cardinal function theta_m(x) for either family; theta_m(x_k) = delta_mk.
/// GaussLegendre raises DomainError outside [a, b].
double dvr_theta_eval(const DvrBasis& basis, int m, double x);

RealMatrix kinetic_matrix(const DvrBasis& basis, double mass);

}  // namespace pvb
