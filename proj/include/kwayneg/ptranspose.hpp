#pragma once

#include <cstddef>

#include "kwayneg/multistate.hpp"

namespace kwayneg {

/// Which selective transpose produced an operator.
struct TransposeProvenance {
  enum class Kind { kGlobal, kKWay, kSubset };

  Subsystem party{1};
  Kind kind = Kind::kGlobal;
  std::size_t k = 0;    // kKWay
  SubsystemSet subset;  // kSubset

  bool operator==(const TransposeProvenance&) const = default;
};

/// Hermitian, unit-trace result of a (possibly selective) partial transpose.
/// Generally not positive semidefinite.
class TransposedOperator {
 public:
  TransposedOperator(SubsystemDims dims, Matrix matrix, TransposeProvenance provenance)
      : dims_(std::move(dims)), matrix_(std::move(matrix)), provenance_(provenance) {}

  const SubsystemDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }
  const TransposeProvenance& provenance() const { return provenance_; }

 private:
  SubsystemDims dims_;
  Matrix matrix_;
  TransposeProvenance provenance_;
};

/// Ordinary partial transpose with respect to `party`.
TransposedOperator global_pt(const DensityOperator& rho, Subsystem party);

/// Transposes only elements whose bra and ket differ in exactly k positions
/// (2 <= k <= N). Coherences that differ in `party` alone are handled by the
/// k = N transpose, so that the k-way family sums to the global transpose.
TransposedOperator kway_pt(const DensityOperator& rho, Subsystem party, std::size_t k);

/// Transposes only elements whose set of differing positions is exactly
/// `subset` (party in subset, |subset| >= 2).
TransposedOperator subset_pt(const DensityOperator& rho, Subsystem party, SubsystemSet subset);

/// Same selection rules, applied to an arbitrary operator (used for the
/// involution property and for re-transposing results).
Matrix apply_transpose(const Matrix& m, const SubsystemDims& dims, const TransposeProvenance& how);

/// max |rho_2^{T_p} - rho^{T_p-pq} - rho^{T_p-pr} + rho| for a tripartite state.
double verify_tripartite_decomposition(const DensityOperator& rho, Subsystem party);

/// max |rho_G^{T_p} - sum_{K=2}^{N} rho_K^{T_p} + (N-2) rho|.
double verify_global_decomposition(const DensityOperator& rho, Subsystem party);

}  // namespace kwayneg
