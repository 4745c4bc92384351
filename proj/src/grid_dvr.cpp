#include "pvb/grid_dvr.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

constexpr double kPi = std::numbers::pi;

void check_index(int m, int n) {
  if (m < 0 || m >= n) {
    throw InvalidArgument(fmt::format("DVR index {} out of range [0, {})", m, n));
  }
}

// Legendre P_n(t) and P_n'(t) on [-1, 1].
std::pair<double, double> legendre_with_derivative(int n, double t) {
  double p_prev = 1.0;
  double p = t;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * t * p - (k - 1.0) * p_prev) / k;
    p_prev = p;
    p = next;
  }
  const double dp = n * (t * p - p_prev) / (t * t - 1.0);
  return {p, dp};
}

}  // namespace

Grid build_periodic_grid(double x0, double length, int n) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw InvalidArgument(fmt::format("grid length must be positive, got {}", length));
  }
  if (n < 2) {
    throw InvalidArgument(fmt::format("grid needs at least 2 points, got {}", n));
  }
  Grid grid;
  grid.x0 = x0;
  grid.length = length;
  grid.size = n;
  grid.weight = length / n;
  grid.points.resize(n);
  for (int m = 0; m < n; ++m) {
    grid.points[m] = x0 + m * (length / n);
  }
  return grid;
}

std::vector<double> grid_wavenumbers(double length, int n) {
  const double dk = 2.0 * kPi / length;
  std::vector<double> k;
  k.reserve(n);
  if (n % 2 == 1) {
    const int half = (n - 1) / 2;
    for (int j = -half; j <= half; ++j) k.push_back(j * dk);
  } else {
    const int half = n / 2;
    for (int j = -half + 1; j < half; ++j) k.push_back(j * dk);
    k.push_back(half * dk);
  }
  return k;
}

double sinc_dvr_theta(const Grid& grid, int m, double x) {
  check_index(m, grid.size);
  const int n = grid.size;
  const double d = x - grid.points[m];
  const double dk = 2.0 * kPi / grid.length;
  // Sum over the +/-k pairs explicitly so the result stays real.
  double sum = 1.0;
  const int paired = (n - 1) / 2;
  for (int j = 1; j <= paired; ++j) sum += 2.0 * std::cos(j * dk * d);
  if (n % 2 == 0) sum += std::cos((n / 2) * dk * d);
  return sum / n;
}

RealMatrix fgh_kinetic(double length, int n, double mass) {
  if (!(mass > 0.0)) {
    throw InvalidArgument(fmt::format("mass must be positive, got {}", mass));
  }
  if (!(length > 0.0) || n < 1) {
    throw InvalidArgument("kinetic matrix needs a positive length and at least one point");
  }
  const double dk = 2.0 * kPi / length;
  const double spacing = length / n;
  const int paired = (n - 1) / 2;
  // T depends only on the node separation, so tabulate one row.
  std::vector<double> row(n);
  for (int s = 0; s < n; ++s) {
    const double d = s * spacing;
    double sum = 0.0;
    for (int j = 1; j <= paired; ++j) {
      const double k = j * dk;
      sum += 2.0 * (k * k / (2.0 * mass)) * std::cos(k * d);
    }
    if (n % 2 == 0) {
      const double k = (n / 2) * dk;
      sum += (k * k / (2.0 * mass)) * std::cos(k * d);
    }
    row[s] = sum / n;
  }
  RealMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      t(i, j) = row[std::abs(i - j)];
    }
  }
  return t;
}

RealMatrix build_fgh_kinetic(const Grid& grid, double mass) {
  return fgh_kinetic(grid.length, grid.size, mass);
}

std::string_view to_string(DvrFamily family) {
  switch (family) {
    case DvrFamily::PeriodicSinc: return "periodic-sinc";
    case DvrFamily::GaussLegendre: return "gauss-legendre";
  }
  return "unknown";
}

DvrFamily dvr_family_from_string(std::string_view name) {
  if (name == "periodic-sinc" || name == "sinc" || name == "fgh") return DvrFamily::PeriodicSinc;
  if (name == "gauss-legendre" || name == "legendre") return DvrFamily::GaussLegendre;
  throw InvalidArgument(fmt::format("unknown DVR family '{}'", name));
}

DvrBasis make_sinc_dvr(const Grid& grid) {
  DvrBasis basis;
  basis.family = DvrFamily::PeriodicSinc;
  basis.points = grid.points;
  basis.weights.assign(grid.size, grid.weight);
  basis.a = grid.x0;
  basis.b = grid.x0 + grid.length;
  basis.quadrature = "uniform";
  return basis;
}

DvrBasis build_legendre_dvr(double a, double b, int n) {
  if (!(b > a)) {
    throw InvalidArgument(fmt::format("Legendre DVR needs b > a, got ({}, {})", a, b));
  }
  if (n < 2) {
    throw InvalidArgument(fmt::format("Legendre DVR needs at least 2 points, got {}", n));
  }
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::vector<double> t(n);
  std::vector<double> w(n);
  for (int i = 0; i < n; ++i) {
    // Newton on P_n from the standard asymptotic guess; nodes come out descending.
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, z);
      const double step = p / dp;
      z -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const auto [p, dp] = legendre_with_derivative(n, z);
    (void)p;
    t[n - 1 - i] = z;
    w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }

  DvrBasis basis;
  basis.family = DvrFamily::GaussLegendre;
  basis.a = a;
  basis.b = b;
  basis.quadrature = "gauss-legendre";
  basis.points.resize(n);
  basis.weights.resize(n);
  for (int m = 0; m < n; ++m) {
    basis.points[m] = mid + half * t[m];
    basis.weights[m] = half * w[m];
  }
  basis.fbr_to_dvr.resize(n, n);
  for (int m = 0; m < n; ++m) {
    const auto p = legendre_values(a, b, n, basis.points[m]);
    const double root_w = std::sqrt(basis.weights[m]);
    for (int j = 0; j < n; ++j) basis.fbr_to_dvr(j, m) = root_w * p[j];
  }
  return basis;
}

std::vector<double> legendre_values(double a, double b, int count, double x) {
  const double t = (2.0 * x - a - b) / (b - a);
  std::vector<double> p(count);
  if (count == 0) return p;
  p[0] = 1.0;
  if (count > 1) p[1] = t;
  for (int k = 2; k < count; ++k) {
    p[k] = ((2.0 * k - 1.0) * t * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
  }
  for (int k = 0; k < count; ++k) p[k] *= std::sqrt((2.0 * k + 1.0) / (b - a));
  return p;
}

std::vector<double> legendre_derivatives(double a, double b, int count, double x) {
  const double t = (2.0 * x - a - b) / (b - a);
  std::vector<double> p(count);
  std::vector<double> dp(count, 0.0);
  if (count == 0) return dp;
  p[0] = 1.0;
  if (count > 1) {
    p[1] = t;
    dp[1] = 1.0;
  }
  // P'_{k} = P'_{k-2} + (2k - 1) P_{k-1}, valid at the endpoints too.
  for (int k = 2; k < count; ++k) {
    p[k] = ((2.0 * k - 1.0) * t * p[k - 1] - (k - 1.0) * p[k - 2]) / k;
    dp[k] = dp[k - 2] + (2.0 * k - 1.0) * p[k - 1];
  }
  const double chain = 2.0 / (b - a);
  for (int k = 0; k < count; ++k) dp[k] *= chain * std::sqrt((2.0 * k + 1.0) / (b - a));
  return dp;
}

double dvr_theta_eval(const DvrBasis& basis, int m, double x) {
  check_index(m, basis.size());
  if (basis.family == DvrFamily::PeriodicSinc) {
    Grid grid;
    grid.x0 = basis.a;
    grid.length = basis.length();
    grid.size = basis.size();
    grid.points = basis.points;
    grid.weight = basis.weights.front();
    return sinc_dvr_theta(grid, m, x);
  }
  if (x < basis.a || x > basis.b) {
    throw DomainError(fmt::format("x = {} outside Legendre domain [{}, {}]", x, basis.a, basis.b));
  }
  const int n = basis.size();
  const auto p = legendre_values(basis.a, basis.b, n, x);
  double sum = 0.0;
  for (int j = 0; j < n; ++j) sum += p[j] * basis.fbr_to_dvr(j, m);
  return std::sqrt(basis.weights[m]) * sum;
}

RealMatrix kinetic_matrix(const DvrBasis& basis, double mass) {
  if (!(mass > 0.0)) {
    throw InvalidArgument(fmt::format("mass must be positive, got {}", mass));
  }
  const int n = basis.size();
  if (basis.family == DvrFamily::PeriodicSinc) {
    return fgh_kinetic(basis.length(), n, mass);
  }
  // FBR kinetic (1/2m) * integral P_i' P_j', exact on the n-point rule
  // (degree <= 2n - 4), then rotated into the DVR.
  RealMatrix deriv(n, n);  // deriv(m, j) = sqrt(w_m) P_j'(x_m)
  for (int m = 0; m < n; ++m) {
    const auto dp = legendre_derivatives(basis.a, basis.b, n, basis.points[m]);
    const double root_w = std::sqrt(basis.weights[m]);
    for (int j = 0; j < n; ++j) deriv(m, j) = root_w * dp[j];
  }
  const RealMatrix t_fbr = (deriv.transpose() * deriv) / (2.0 * mass);
  RealMatrix t_dvr = basis.fbr_to_dvr.transpose() * t_fbr * basis.fbr_to_dvr;
  return 0.5 * (t_dvr + t_dvr.transpose());
}

}  // namespace pvb
