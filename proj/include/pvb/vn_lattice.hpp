#pragma once

#include <complex>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pvb/grid_dvr.hpp"
#include "pvb/linalg.hpp"

namespace pvb {

/// How lattice Gaussians are sampled onto the DVR nodes. Periodized samples
/// make the basis exactly translation covariant on a periodic grid but put the
/// Gaussian's Zak-transform zero on the lattice for most even N, leaving S
/// singular; bare samples do not.
enum class GaussianSampling { Bare, Periodized };

std::string_view to_string(GaussianSampling sampling);
GaussianSampling gaussian_sampling_from_string(std::string_view name);

struct LatticeCenter {
  double x = 0.0;
  double p = 0.0;
};

/// Von Neumann lattice with one Gaussian per phase-space cell of area 2*pi.
///
/// Cells are indexed row-major over (i, j): n = i * np + j, with centres
/// X_i = x0 + (i + 1/2) dx and P_j = -K/2 + (j + 1/2) dp, where K = 2 pi N / L
/// is the momentum span of an N-point DVR on a box of length L.
struct VnLattice {
  int nx = 0;
  int np = 0;
  double x0 = 0.0;
  double length = 0.0;
  double dx = 0.0;
  double dp = 0.0;
  double momentum_span = 0.0;
  double alpha = 0.0;  // Gaussian width, dp / (2 dx)
  std::vector<LatticeCenter> centers;
  GaussianSampling sampling = GaussianSampling::Bare;
  /// Lattice placement reused from the uniform case on a non-uniform DVR.
  bool heuristic = false;

  int size() const { return static_cast<int>(centers.size()); }
  int index(int i, int j) const { return i * np + j; }
  double peak() const;  // (2 alpha / pi)^(1/4)
};

VnLattice build_lattice(const DvrBasis& dvr, int nx, int np,
                        GaussianSampling sampling = GaussianSampling::Bare);

/// All (nx, np) with nx * np == n, ordered by nx.
std::vector<std::pair<int, int>> factorizations(int n);

/// Bare lattice Gaussian g_n(x), unit L2 norm on the real line.
std::complex<double> gaussian_value(const VnLattice& lat, int n, double x);

/// g_n summed over all images x + k L; equals gaussian_value to round-off when
/// the Gaussian is narrow compared with the box.
std::complex<double> periodic_gaussian_value(const VnLattice& lat, int n, double x);

/// Value sampled into the frame under the lattice's sampling rule.
std::complex<double> lattice_sample_value(const VnLattice& lat, int n, double x);

struct FrameMatrices {
  ComplexMatrix g;      // G(m, n) = sqrt(w_m) g_n(x_m)
  ComplexMatrix s;      // G^† G
  ComplexMatrix s_inv;  // S^-1 (regularized if cond_s > 1e8)
  ComplexMatrix b;      // G S^-1, columns biorthogonal to those of G
  double cond_s = 1.0;
  bool regularized = false;
  int dropped_modes = 0;

  int size() const { return static_cast<int>(g.cols()); }
};

FrameMatrices build_frame_matrix(const DvrBasis& dvr, const VnLattice& lat);

struct ContractedFunction {
  Eigen::VectorXcd samples;  // column n of G
  std::vector<double> trace_x;
  std::vector<std::complex<double>> trace;  // sum_m theta_m(x) g_n(x_m)
};

/// Fine trace of the contracted function over the DVR domain. PeriodicSinc
/// traces include both box endpoints; GaussLegendre traces use cell midpoints.
ContractedFunction contracted_function(const DvrBasis& dvr, const FrameMatrices& frame, int n,
                                       int plot_points);

/// Lattice index of the cell adjacent to the right box edge with momentum
/// closest to zero.
int boundary_adjacent_index(const VnLattice& lat);

}  // namespace pvb
