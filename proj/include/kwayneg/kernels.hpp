#pragma once

// Dense index-permutation kernels. Each kernel has a serial reference
// implementation, written for clarity in multi-index form, and an
// OpenMP-parallel implementation working on flat indices. The two must
// produce bit-identical results; the unit tests and the benchmark compare them.

#include <bit>
#include <cstddef>
#include <cstdint>

#include "kwayneg/multistate.hpp"

namespace kwayneg::kernels {

/// Which matrix elements a selective partial transpose acts on, expressed
/// through the set of positions where bra and ket labels differ.
struct TransposeSelector {
  enum class Mode { kAll, kDistance, kExactSet };

  std::size_t party = 0;  // zero-based offset of the transposed subsystem
  std::size_t parties = 0;
  Mode mode = Mode::kAll;
  std::size_t distance = 0;     // kDistance
  std::uint64_t exact_set = 0;  // kExactSet

  static TransposeSelector global(std::size_t party, std::size_t parties) {
    return {party, parties, Mode::kAll, 0, 0};
  }
  static TransposeSelector k_way(std::size_t party, std::size_t parties, std::size_t k) {
    return {party, parties, Mode::kDistance, k, 0};
  }
  static TransposeSelector exact(std::size_t party, std::size_t parties, std::uint64_t set) {
    return {party, parties, Mode::kExactSet, 0, set};
  }

  // Coherences that differ only in the transposed party (diff == {p}) belong
  // to no K >= 2 class. They are assigned to the N-way transpose so that the
  // K-way family partitions the global transpose exactly; for real operators
  // their transpose is the identity, so the assignment only matters for
  // complex entries.
  bool selects(std::uint64_t diff) const {
    const std::uint64_t bit = std::uint64_t{1} << party;
    if ((diff & bit) == 0) return false;
    switch (mode) {
      case Mode::kAll:
        return true;
      case Mode::kDistance: {
        const auto n = static_cast<std::size_t>(std::popcount(diff));
        return n == distance || (distance == parties && diff == bit);
      }
      case Mode::kExactSet: {
        const std::uint64_t full = parties == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << parties) - 1;
        return diff == exact_set || (exact_set == full && diff == bit);
      }
    }
    return false;
  }
};

namespace serial {

Matrix partial_transpose(const Matrix& in, const SubsystemDims& dims, const TransposeSelector& sel);
Matrix partial_trace(const Matrix& in, const SubsystemDims& dims, SubsystemSet keep);
Vector apply_gate(const Vector& in, const SubsystemDims& dims, std::span<const Subsystem> targets,
                  const Matrix& gate);

}  // namespace serial

namespace parallel {

Matrix partial_transpose(const Matrix& in, const SubsystemDims& dims, const TransposeSelector& sel);
Matrix partial_trace(const Matrix& in, const SubsystemDims& dims, SubsystemSet keep);
Vector apply_gate(const Vector& in, const SubsystemDims& dims, std::span<const Subsystem> targets,
                  const Matrix& gate);

}  // namespace parallel

}  // namespace kwayneg::kernels
