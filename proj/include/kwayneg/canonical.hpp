#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "kwayneg/multistate.hpp"
#include "kwayneg/spectral.hpp"

namespace kwayneg {

struct NuProfile {
  Subsystem party{1};
  std::map<std::size_t, std::size_t> nu_kway;  // K = 2..N
  std::size_t nu_global = 0;
  std::size_t total() const;                   // sum over K
};

NuProfile nu_profile(const DensityOperator& rho, Subsystem party, double zero_tol = kZeroTol);

struct GhzPair {
  std::size_t first = 0;   // flat index
  std::size_t second = 0;  // flat index, differs from `first` in every position
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
};

struct GhzProjection {
  bool matched = false;
  std::vector<GhzPair> pairs;
  double n_way = 0.0;      // N_N^p, only computed when matched
  double predicted = 0.0;  // 2 sum |a_i||b_i|
  double residual() const { return matched ? std::abs(n_way - predicted) : 0.0; }
};

/// Matches when the support (amplitudes above the LBPS threshold) splits into
/// pairs of basis states differing in every position, each support state has
/// exactly one such partner, and the p-swapped images of all pairs are
/// distinct and outside the support. N_N^p is then compared with 2 sum |a||b|.
GhzProjection ghz_projection_check(const PureState& psi, Subsystem party);

/// d x d unitary from d^2 angles: Givens rotations (theta, phi) for each
/// pair j < k in lexicographic order, followed by a diagonal phase per level.
Matrix euler_unitary(std::size_t d, std::span<const double> angles);

struct CanonicalOptions {
  std::size_t restarts = 50;
  std::uint64_t seed = 0;
  double initial_step = 0.7853981633974483;  // pi/4
  double min_step = 1e-10;
  std::size_t max_evaluations = 200000;      // per restart
  double threshold = kLbpsThreshold;
};

struct CanonicalSearchResult {
  PureState best_state;
  std::size_t input_lbps = 0;
  std::size_t best_lbps = 0;
  double best_l1 = 0.0;
  std::vector<Matrix> unitaries;  // one per subsystem
  std::vector<NuProfile> nu_before;
  std::vector<NuProfile> nu_after;
  std::size_t best_restart = 0;
  std::size_t iterations = 0;     // objective evaluations, all restarts
  bool converged = false;         // winning restart reached min_step
  bool heuristic = true;
};

/// Local-unitary search for a representative with few product-basis terms.
/// Objective, compared lexicographically: (LBPS count, sum of amplitude moduli).
/// Restart 0 starts from the identity, so the result never has more terms
/// than the input. Not a certified minimum.
CanonicalSearchResult heuristic_canonicalize(const PureState& psi, const CanonicalOptions& options = {});

/// Applies one unitary per subsystem.
PureState apply_local_unitaries(const PureState& psi, std::span<const Matrix> unitaries);

}  // namespace kwayneg
