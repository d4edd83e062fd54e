#pragma once

#include <cstdint>
#include <vector>

#include "kwayneg/catalog.hpp"
#include "kwayneg/multistate.hpp"
#include "oracle.hpp"

namespace fixtures {

inline std::vector<std::size_t> raw_dims(const kwayneg::SubsystemDims& d) {
  return {d.dims().begin(), d.dims().end()};
}

inline double max_abs_diff(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline const std::vector<kwayneg::SubsystemDims>& profiles() {
  static const std::vector<kwayneg::SubsystemDims> p{{2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 2, 2, 2}};
  return p;
}

/// 200 seeded states across the dims profiles, alternating pure and mixed
/// (rank 1..4).
inline std::vector<kwayneg::DensityOperator> random_states(std::uint64_t base = 1000) {
  std::vector<kwayneg::DensityOperator> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto& dims = profiles()[i % profiles().size()];
    if (i % 2 == 0) {
      out.push_back(kwayneg::pure_to_density(kwayneg::random_pure(dims, base + i)));
    } else {
      out.push_back(kwayneg::random_mixed(dims, 1 + (i / 2) % 4, base + i));
    }
  }
  return out;
}

}  // namespace fixtures
