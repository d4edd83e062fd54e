#include "kwayneg/spectral.hpp"

#include <fmt/format.h>

namespace kwayneg {

namespace {

Matrix hermitian_part(const Matrix& m) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    throw InvalidArgument(fmt::format("expected a nonempty square matrix, got {}x{}", m.rows(), m.cols()));
  }
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= kSpectralHermitianTol)) {
    throw InvalidArgument(fmt::format("matrix is not Hermitian: max |M - M^dagger| = {:.3e}", asym));
  }
  return 0.5 * (m + m.adjoint());
}

}  // namespace

std::size_t SpectralResult::negative_count() const {
  std::size_t n = 0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) n += eigenvalues[i] < -zero_tol ? 1 : 0;
  return n;
}

double SpectralResult::negative_sum() const {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) s += eigenvalues[i] < 0.0 ? eigenvalues[i] : 0.0;
  return s;
}

double SpectralResult::negative_expectation(const Matrix& x) const {
  return (negative_projector.cwiseProduct(x.transpose())).sum().real();
}

SpectralResult eigendecompose(const Matrix& m, double zero_tol) {
  if (!(zero_tol > 0.0)) throw InvalidArgument("zero_tol must be positive");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  if (solver.info() != Eigen::Success) throw InvalidArgument("Hermitian eigensolver did not converge");

  SpectralResult out;
  out.zero_tol = zero_tol;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  // Eigenvalues come back ascending, so the negative block is a leading slab.
  Eigen::Index neg = 0;
  while (neg < out.eigenvalues.size() && out.eigenvalues[neg] < -zero_tol) ++neg;
  const auto v = out.eigenvectors.leftCols(neg);
  out.negative_projector = v * v.adjoint();
  return out;
}

double trace_norm(const Matrix& m) { return eigendecompose(m).trace_norm(); }

std::size_t count_negative(const Matrix& m, double zero_tol) {
  return eigendecompose(m, zero_tol).negative_count();
}

}  // namespace kwayneg
