#include "pvb/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "pvb/errors.hpp"

namespace pvb {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kMetricFloor = 1e-12;

void require_square(const ComplexMatrix& a, std::string_view what) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument(fmt::format("{} must be square, got {}x{}", what, a.rows(), a.cols()));
  }
}

void require_finite(const ComplexMatrix& a, std::string_view what) {
  if (!a.allFinite()) throw InvalidArgument(fmt::format("{} has non-finite entries", what));
}

void require_hermitian(const ComplexMatrix& a, std::string_view what) {
  require_square(a, what);
  require_finite(a, what);
  const double defect = hermitian_defect(a);
  if (defect > kHermitianTolerance) {
    throw InvalidArgument(fmt::format("{} is not Hermitian (relative defect {:.3e})", what, defect));
  }
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return 0.5 * (a + a.adjoint()); }

}  // namespace

std::string_view to_string(Representation rep) {
  switch (rep) {
    case Representation::DirectDvr: return "direct-dvr";
    case Representation::PvbSymmetric: return "pvb-symmetric";
    case Representation::PvbBiorthLeft: return "pvb-biorth-left";
    case Representation::PvbBiorthBoth: return "pvb-biorth-both";
  }
  return "unknown";
}

Representation representation_from_string(std::string_view name) {
  if (name == "direct-dvr" || name == "direct") return Representation::DirectDvr;
  if (name == "pvb-symmetric" || name == "symmetric") return Representation::PvbSymmetric;
  if (name == "pvb-biorth-left" || name == "left") return Representation::PvbBiorthLeft;
  if (name == "pvb-biorth-both" || name == "both") return Representation::PvbBiorthBoth;
  throw InvalidArgument(fmt::format("unknown representation '{}'", name));
}

double hermitian_defect(const ComplexMatrix& a) {
  const double scale = a.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

Spectrum eigh(const ComplexMatrix& a, bool with_vectors) {
  require_hermitian(a, "eigh input");
  Spectrum out;
  out.meta.basis_size = static_cast<int>(a.rows());
  if (a.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      hermitian_part(a), with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  if (with_vectors) out.vectors = solver.eigenvectors();
  return out;
}

Spectrum eigh_generalized(const ComplexMatrix& a, const ComplexMatrix& m, bool with_vectors) {
  require_hermitian(a, "generalized eigenproblem matrix");
  require_hermitian(m, "generalized eigenproblem metric");
  if (a.rows() != m.rows()) throw InvalidArgument("pencil matrices differ in size");

  Spectrum out;
  out.meta.basis_size = static_cast<int>(a.rows());
  if (a.rows() == 0) return out;

  const ComplexMatrix mh = hermitian_part(m);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> metric(mh, Eigen::EigenvaluesOnly);
  const double lmin = metric.eigenvalues().minCoeff();
  const double lmax = metric.eigenvalues().maxCoeff();
  if (!(lmax > 0.0) || !(lmin > kMetricFloor * lmax)) {
    throw MetricSingular(
        fmt::format("metric is not positive definite (lambda_min = {:.3e}, lambda_max = {:.3e})",
                    lmin, lmax),
        lmin);
  }
  out.meta.cond_s = lmax / lmin;

  // Congruence through the Cholesky factor: L^-1 A L^-† y = E y, c = L^-† y.
  Eigen::LLT<ComplexMatrix> chol(mh);
  if (chol.info() != Eigen::Success) {
    throw MetricSingular("Cholesky factorization of the metric failed", lmin);
  }
  const auto lower = chol.matrixL();
  ComplexMatrix reduced = lower.solve(hermitian_part(a));
  reduced = lower.solve(reduced.adjoint().eval()).adjoint();
  Spectrum inner = eigh(hermitian_part(reduced), with_vectors);
  out.values = std::move(inner.values);
  if (with_vectors) out.vectors = chol.matrixU().solve(*inner.vectors);
  return out;
}

Spectrum eig_general(const ComplexMatrix& a) {
  require_square(a, "eig_general input");
  require_finite(a, "eig_general input");
  Spectrum out;
  out.meta.basis_size = static_cast<int>(a.rows());
  if (a.rows() == 0) return out;
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, false);
  if (solver.info() != Eigen::Success) throw NumericalError("general eigensolver did not converge");
  const auto& ev = solver.eigenvalues();
  out.values.reserve(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    out.values.push_back(ev[i].real());
    out.meta.max_imag = std::max(out.meta.max_imag, std::abs(ev[i].imag()));
  }
  std::sort(out.values.begin(), out.values.end());
  return out;
}

HermitianSolve solve_hermitian(const ComplexMatrix& s, const ComplexMatrix& rhs) {
  require_hermitian(s, "solve_hermitian matrix");
  if (s.rows() != rhs.rows()) throw InvalidArgument("right-hand side has the wrong row count");
  HermitianSolve out;
  if (s.rows() == 0) {
    out.solution = rhs;
    return out;
  }
  const ComplexMatrix sh = hermitian_part(s);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(sh);
  const auto& lambda = eig.eigenvalues();
  const double lmax = lambda.maxCoeff();
  const double lmin = lambda.minCoeff();
  if (!(lmax > 0.0)) {
    throw IllConditionedFrame("overlap has no positive eigenvalues",
                              std::numeric_limits<double>::infinity());
  }
  out.cond = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();

  if (out.cond <= kRegularizeAboveCond) {
    Eigen::LLT<ComplexMatrix> chol(sh);
    if (chol.info() == Eigen::Success) {
      out.solution = chol.solve(rhs);
      return out;
    }
  }

  // Truncated pseudo-solve on the retained eigenspace.
  out.regularized = true;
  const double floor = kDropBelowRelative * lmax;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda[i] > floor) {
      inv[i] = 1.0 / lambda[i];
    } else {
      ++out.dropped_modes;
    }
  }
  const auto& v = eig.eigenvectors();
  out.solution = v * inv.asDiagonal() * (v.adjoint() * rhs);
  return out;
}

double condition_number(const ComplexMatrix& s) {
  require_hermitian(s, "condition_number input");
  if (s.rows() == 0) return 1.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(s), Eigen::EigenvaluesOnly);
  const double lmin = eig.eigenvalues().minCoeff();
  const double lmax = eig.eigenvalues().maxCoeff();
  if (!(lmin > 0.0)) {
    throw MetricSingular(fmt::format("matrix is not positive definite (lambda_min = {:.3e})", lmin),
                         lmin);
  }
  return lmax / lmin;
}

double spectral_norm_hermitian(const ComplexMatrix& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(a), Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace pvb
