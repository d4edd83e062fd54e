#include "kwayneg/ptranspose.hpp"

#include <fmt/format.h>

#include "kwayneg/kernels.hpp"

namespace kwayneg {

namespace {

kernels::TransposeSelector selector_for(const SubsystemDims& dims, const TransposeProvenance& how) {
  const std::size_t p = dims.checked(how.party);
  const std::size_t n = dims.count();
  switch (how.kind) {
    case TransposeProvenance::Kind::kGlobal:
      return kernels::TransposeSelector::global(p, n);
    case TransposeProvenance::Kind::kKWay:
      if (how.k < 2 || how.k > n) {
        throw InvalidArgument(fmt::format("K = {} outside [2, {}]", how.k, n));
      }
      return kernels::TransposeSelector::k_way(p, n, how.k);
    case TransposeProvenance::Kind::kSubset:
      if (!how.subset.contains(how.party)) {
        throw InvalidArgument(fmt::format("subsystem {} is not in the transpose subset", how.party.label()));
      }
      if (how.subset.size() < 2) throw InvalidArgument("transpose subset needs at least two subsystems");
      for (auto q : how.subset.members()) dims.checked(q);
      return kernels::TransposeSelector::exact(p, n, how.subset.mask());
  }
  throw InvalidArgument("unknown transpose kind");
}

TransposedOperator transpose(const DensityOperator& rho, const TransposeProvenance& how) {
  return TransposedOperator(rho.dims(), apply_transpose(rho.matrix(), rho.dims(), how), how);
}

}  // namespace

Matrix apply_transpose(const Matrix& m, const SubsystemDims& dims, const TransposeProvenance& how) {
  return kernels::parallel::partial_transpose(m, dims, selector_for(dims, how));
}

TransposedOperator global_pt(const DensityOperator& rho, Subsystem party) {
  return transpose(rho, {party, TransposeProvenance::Kind::kGlobal, 0, {}});
}

TransposedOperator kway_pt(const DensityOperator& rho, Subsystem party, std::size_t k) {
  return transpose(rho, {party, TransposeProvenance::Kind::kKWay, k, {}});
}

TransposedOperator subset_pt(const DensityOperator& rho, Subsystem party, SubsystemSet subset) {
  return transpose(rho, {party, TransposeProvenance::Kind::kSubset, 0, subset});
}

double verify_tripartite_decomposition(const DensityOperator& rho, Subsystem party) {
  const auto& dims = rho.dims();
  if (dims.count() != 3) {
    throw InvalidArgument(fmt::format("tripartite decomposition needs N = 3, got {}", dims.count()));
  }
  dims.checked(party);
  Matrix residual = kway_pt(rho, party, 2).matrix() + rho.matrix();
  for (std::size_t m = 1; m <= 3; ++m) {
    if (m == party.label()) continue;
    residual -= subset_pt(rho, party, {party, Subsystem{m}}).matrix();
  }
  return residual.cwiseAbs().maxCoeff();
}

double verify_global_decomposition(const DensityOperator& rho, Subsystem party) {
  const std::size_t n = rho.dims().count();
  if (n < 2) throw InvalidArgument("global decomposition needs at least two subsystems");
  Matrix residual = global_pt(rho, party).matrix() + static_cast<double>(n - 2) * rho.matrix();
  for (std::size_t k = 2; k <= n; ++k) residual -= kway_pt(rho, party, k).matrix();
  return residual.cwiseAbs().maxCoeff();
}

}  // namespace kwayneg
