#include "pvb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

ComplexMatrix restrict_columns(const ComplexMatrix& m, const std::vector<int>& cols) {
  ComplexMatrix out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) out.col(c) = m.col(cols[c]);
  return out;
}

ComplexMatrix restrict_square(const ComplexMatrix& m, const std::vector<int>& idx) {
  const auto k = static_cast<Eigen::Index>(idx.size());
  ComplexMatrix out(k, k);
  for (Eigen::Index r = 0; r < k; ++r) {
    for (Eigen::Index c = 0; c < k; ++c) out(r, c) = m(idx[r], idx[c]);
  }
  return out;
}

void check_mask(const PruneMask& mask, int n) {
  if (mask.retained.empty()) throw EmptyMask("prune mask retains no basis functions");
  for (std::size_t i = 0; i < mask.retained.size(); ++i) {
    const int idx = mask.retained[i];
    if (idx < 0 || idx >= n) throw InvalidArgument(fmt::format("mask index {} out of range", idx));
    if (i > 0 && idx <= mask.retained[i - 1]) {
      throw InvalidArgument("mask indices must be sorted and unique");
    }
  }
}

}  // namespace

std::string describe(const PruneStrategy& strategy) {
  return std::visit(overloaded{
                        [](const KeepAll&) { return std::string("all"); },
                        [](const EnergyShell& e) { return fmt::format("energy-shell(E_cut={})", e.cutoff); },
                        [](const TopKByShellEnergy& t) { return fmt::format("top-k(k={})", t.k); },
                    },
                    strategy);
}

PruneMask full_mask(int n) {
  PruneMask mask;
  mask.retained.resize(n);
  std::iota(mask.retained.begin(), mask.retained.end(), 0);
  mask.total = n;
  mask.fraction = 1.0;
  mask.strategy = "all";
  return mask;
}

double shell_energy(const LatticeCenter& c, const PotentialModel& model, double mass) {
  return c.p * c.p / (2.0 * mass) + eval_potential(model, c.x);
}

PruneMask build_mask(const VnLattice& lat, const PotentialModel& model, double mass,
                     const PruneStrategy& strategy) {
  const int n = lat.size();
  PruneMask mask;
  mask.total = n;
  mask.strategy = describe(strategy);

  std::visit(overloaded{
                 [&](const KeepAll&) { mask.retained = full_mask(n).retained; },
                 [&](const EnergyShell& e) {
                   if (std::isnan(e.cutoff)) throw InvalidArgument("energy cutoff is NaN");
                   for (int i = 0; i < n; ++i) {
                     if (shell_energy(lat.centers[i], model, mass) <= e.cutoff) mask.retained.push_back(i);
                   }
                 },
                 [&](const TopKByShellEnergy& t) {
                   if (t.k < 1 || t.k > n) {
                     throw InvalidArgument(fmt::format("top-k needs 1 <= k <= {}, got {}", n, t.k));
                   }
                   std::vector<int> order(n);
                   std::iota(order.begin(), order.end(), 0);
                   std::vector<double> energy(n);
                   for (int i = 0; i < n; ++i) energy[i] = shell_energy(lat.centers[i], model, mass);
                   std::stable_sort(order.begin(), order.end(),
                                    [&](int a, int b) { return energy[a] < energy[b]; });
                   mask.retained.assign(order.begin(), order.begin() + t.k);
                   std::sort(mask.retained.begin(), mask.retained.end());
                 },
             },
             strategy);

  if (mask.retained.empty()) {
    throw EmptyMask(fmt::format("{} retains no lattice centres", mask.strategy));
  }
  mask.fraction = static_cast<double>(mask.retained.size()) / n;
  return mask;
}

Spectrum solve_direct(const HamiltonianMatrix& h) {
  Spectrum s = eigh(h.matrix.cast<std::complex<double>>());
  s.meta.representation = Representation::DirectDvr;
  s.meta.basis_size = h.size();
  return s;
}

Spectrum solve_pvb(const HamiltonianMatrix& h, const FrameMatrices& frame, const PruneMask& mask,
                   Representation rep) {
  const int n = h.size();
  if (frame.size() != n || frame.g.rows() != n) {
    throw InvalidArgument(
        fmt::format("frame is {}x{} but the Hamiltonian is {}x{}", frame.g.rows(), frame.size(), n, n));
  }
  check_mask(mask, n);
  const ComplexMatrix hc = h.matrix.cast<std::complex<double>>();

  Spectrum out;
  switch (rep) {
    case Representation::DirectDvr:
      throw InvalidArgument("solve_pvb does not handle the direct DVR representation");
    case Representation::PvbSymmetric: {
      const ComplexMatrix gm = restrict_columns(frame.g, mask.retained);
      const ComplexMatrix hm = gm.adjoint() * hc * gm;
      const ComplexMatrix sm = gm.adjoint() * gm;
      out = eigh_generalized(0.5 * (hm + hm.adjoint()), 0.5 * (sm + sm.adjoint()));
      break;
    }
    case Representation::PvbBiorthLeft: {
      const ComplexMatrix gm = restrict_columns(frame.g, mask.retained);
      const ComplexMatrix hm = gm.adjoint() * hc * gm;
      ComplexMatrix sm = gm.adjoint() * gm;
      sm = 0.5 * (sm + sm.adjoint()).eval();
      const double lmin = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(sm, Eigen::EigenvaluesOnly)
                              .eigenvalues()
                              .minCoeff();
      if (!(lmin > 0.0)) throw MetricSingular("retained overlap S_M is not positive definite", lmin);
      const auto solved = solve_hermitian(sm, hm);
      out = eig_general(solved.solution);
      out.meta.cond_s = solved.cond;
      out.meta.regularized = solved.regularized;
      break;
    }
    case Representation::PvbBiorthBoth: {
      const ComplexMatrix bm = restrict_columns(frame.b, mask.retained);
      const ComplexMatrix hm = bm.adjoint() * hc * bm;
      const ComplexMatrix metric = restrict_square(frame.s_inv, mask.retained);
      out = eigh_generalized(0.5 * (hm + hm.adjoint()), 0.5 * (metric + metric.adjoint()));
      break;
    }
  }
  out.meta.representation = rep;
  out.meta.basis_size = mask.size();
  out.meta.prune_fraction = mask.fraction;
  out.meta.cond_s = frame.cond_s;
  out.meta.regularized = out.meta.regularized || frame.regularized;
  return out;
}

std::vector<double> compare_spectra(const Spectrum& a, const Spectrum& b, int k) {
  if (k < 0 || k > a.size() || k > b.size()) {
    throw InvalidArgument(fmt::format("cannot compare {} levels of spectra with {} and {} values", k,
                                      a.size(), b.size()));
  }
  auto va = a.values;
  auto vb = b.values;
  std::sort(va.begin(), va.end());
  std::sort(vb.begin(), vb.end());
  std::vector<double> err(k);
  for (int i = 0; i < k; ++i) err[i] = std::abs(va[i] - vb[i]);
  return err;
}

double max_spectrum_deviation(const Spectrum& a, const Spectrum& b) {
  const auto err = compare_spectra(a, b, std::min(a.size(), b.size()));
  return err.empty() ? 0.0 : *std::max_element(err.begin(), err.end());
}

int default_tracked_levels(int retained) { return std::max(1, std::min(5, retained / 4)); }

}  // namespace pvb
