#include "pvb/vn_lattice.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

constexpr double kPi = std::numbers::pi;

void check_index(int n, int size) {
  if (n < 0 || n >= size) {
    throw InvalidArgument(fmt::format("lattice index {} out of range [0, {})", n, size));
  }
}

}  // namespace

std::string_view to_string(GaussianSampling sampling) {
  return sampling == GaussianSampling::Bare ? "bare" : "periodized";
}

GaussianSampling gaussian_sampling_from_string(std::string_view name) {
  if (name == "bare") return GaussianSampling::Bare;
  if (name == "periodized") return GaussianSampling::Periodized;
  throw InvalidArgument(fmt::format("unknown Gaussian sampling '{}'", name));
}

double VnLattice::peak() const { return std::pow(2.0 * alpha / kPi, 0.25); }

VnLattice build_lattice(const DvrBasis& dvr, int nx, int np, GaussianSampling sampling) {
  const int n = dvr.size();
  if (nx < 1 || np < 1) {
    throw InvalidArgument(fmt::format("lattice counts must be positive, got Nx={} Np={}", nx, np));
  }
  if (nx * np != n) {
    throw InvalidArgument(
        fmt::format("lattice requires Nx * Np == N, got {} * {} != {}", nx, np, n));
  }
  VnLattice lat;
  lat.nx = nx;
  lat.np = np;
  lat.x0 = dvr.a;
  lat.length = dvr.length();
  lat.dx = lat.length / nx;
  lat.momentum_span = 2.0 * kPi * n / lat.length;
  lat.dp = lat.momentum_span / np;
  lat.alpha = lat.dp / (2.0 * lat.dx);
  if (sampling == GaussianSampling::Periodized && dvr.family != DvrFamily::PeriodicSinc) {
    throw InvalidArgument("periodized sampling needs a periodic DVR");
  }
  lat.sampling = sampling;
  lat.heuristic = dvr.family != DvrFamily::PeriodicSinc;
  lat.centers.reserve(n);
  for (int i = 0; i < nx; ++i) {
    for (int j = 0; j < np; ++j) {
      lat.centers.push_back({lat.x0 + (i + 0.5) * lat.dx,
                             -0.5 * lat.momentum_span + (j + 0.5) * lat.dp});
    }
  }
  return lat;
}

std::vector<std::pair<int, int>> factorizations(int n) {
  std::vector<std::pair<int, int>> out;
  for (int nx = 1; nx <= n; ++nx) {
    if (n % nx == 0) out.emplace_back(nx, n / nx);
  }
  return out;
}

std::complex<double> gaussian_value(const VnLattice& lat, int n, double x) {
  check_index(n, lat.size());
  const auto& c = lat.centers[n];
  const double d = x - c.x;
  return lat.peak() * std::exp(std::complex<double>(-lat.alpha * d * d, c.p * d));
}

std::complex<double> periodic_gaussian_value(const VnLattice& lat, int n, double x) {
  check_index(n, lat.size());
  const auto& c = lat.centers[n];
  // Nearest image first, then outward until exp(-alpha d^2) < 1e-20.
  const double shift = std::round((x - c.x) / lat.length);
  const double base = x - c.x - shift * lat.length;
  const int images = static_cast<int>(std::ceil(std::sqrt(46.0 / lat.alpha) / lat.length)) + 1;
  std::complex<double> sum = 0.0;
  for (int k = -images; k <= images; ++k) {
    const double d = base + k * lat.length;
    // Phase from the true offset x - X + kL; P * L is not a multiple of 2*pi.
    const double unwrapped = d + shift * lat.length;
    sum += std::exp(std::complex<double>(-lat.alpha * d * d, c.p * unwrapped));
  }
  return lat.peak() * sum;
}

std::complex<double> lattice_sample_value(const VnLattice& lat, int n, double x) {
  return lat.sampling == GaussianSampling::Periodized ? periodic_gaussian_value(lat, n, x)
                                                     : gaussian_value(lat, n, x);
}

FrameMatrices build_frame_matrix(const DvrBasis& dvr, const VnLattice& lat) {
  const int n = dvr.size();
  if (lat.size() != n) {
    throw InvalidArgument(
        fmt::format("lattice has {} cells but the DVR has {} points", lat.size(), n));
  }
  FrameMatrices f;
  f.g.resize(n, n);
  for (int col = 0; col < n; ++col) {
    for (int m = 0; m < n; ++m) {
      f.g(m, col) = std::sqrt(dvr.weights[m]) * lattice_sample_value(lat, col, dvr.points[m]);
    }
  }
  if (!f.g.allFinite()) {
    throw IllConditionedFrame("frame matrix has non-finite entries",
                              std::numeric_limits<double>::infinity());
  }
  f.s = f.g.adjoint() * f.g;
  f.s = 0.5 * (f.s + f.s.adjoint()).eval();

  const auto inverse = solve_hermitian(f.s, ComplexMatrix::Identity(n, n));
  f.cond_s = inverse.cond;
  f.regularized = inverse.regularized;
  f.dropped_modes = inverse.dropped_modes;
  if (inverse.dropped_modes >= n) {
    throw IllConditionedFrame(
        fmt::format("overlap is singular beyond regularization (cond_S = {:.3e})", f.cond_s),
        f.cond_s);
  }
  f.s_inv = 0.5 * (inverse.solution + inverse.solution.adjoint());
  // B^† = S^-1 G^† solved directly rather than multiplied by the inverse.
  f.b = solve_hermitian(f.s, f.g.adjoint()).solution.adjoint();
  return f;
}

ContractedFunction contracted_function(const DvrBasis& dvr, const FrameMatrices& frame, int n,
                                       int plot_points) {
  check_index(n, frame.size());
  if (plot_points < 2) {
    throw InvalidArgument(fmt::format("need at least 2 plot points, got {}", plot_points));
  }
  const int size = dvr.size();
  ContractedFunction out;
  out.samples = frame.g.col(n);

  std::vector<std::complex<double>> node_values(size);
  for (int m = 0; m < size; ++m) node_values[m] = frame.g(m, n) / std::sqrt(dvr.weights[m]);

  out.trace_x.resize(plot_points);
  for (int k = 0; k < plot_points; ++k) {
    out.trace_x[k] = dvr.family == DvrFamily::PeriodicSinc
                         ? dvr.a + k * dvr.length() / (plot_points - 1)
                         : dvr.a + (k + 0.5) * dvr.length() / plot_points;
  }
  out.trace.resize(plot_points);
  for (int k = 0; k < plot_points; ++k) {
    std::complex<double> sum = 0.0;
    for (int m = 0; m < size; ++m) sum += dvr_theta_eval(dvr, m, out.trace_x[k]) * node_values[m];
    out.trace[k] = sum;
  }
  return out;
}

int boundary_adjacent_index(const VnLattice& lat) {
  int best_j = 0;
  for (int j = 1; j < lat.np; ++j) {
    if (std::abs(lat.centers[lat.index(0, j)].p) < std::abs(lat.centers[lat.index(0, best_j)].p)) {
      best_j = j;
    }
  }
  return lat.index(lat.nx - 1, best_j);
}

}  // namespace pvb
