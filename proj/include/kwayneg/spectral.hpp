#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "kwayneg/multistate.hpp"

namespace kwayneg {

inline constexpr double kZeroTol = 1e-10;
inline constexpr double kSpectralHermitianTol = 1e-10;

struct SpectralResult {
  Eigen::VectorXd eigenvalues;  // ascending
  Matrix eigenvectors;          // columns, matching eigenvalues
  Matrix negative_projector;    // onto span of eigenvectors with eigenvalue < -zero_tol
  double zero_tol = kZeroTol;

  std::size_t negative_count() const;
  /// Sum of all strictly negative eigenvalues, no tolerance applied.
  double negative_sum() const;
  double trace_norm() const { return eigenvalues.cwiseAbs().sum(); }
  /// Tr(P_- X), real part.
  double negative_expectation(const Matrix& x) const;
};

/// Dense Hermitian eigendecomposition of (M + M^dagger)/2.
/// Throws InvalidArgument on empty input or if M is not Hermitian within 1e-10.
SpectralResult eigendecompose(const Matrix& m, double zero_tol = kZeroTol);

double trace_norm(const Matrix& m);
std::size_t count_negative(const Matrix& m, double zero_tol = kZeroTol);

}  // namespace kwayneg
