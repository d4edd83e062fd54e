#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "kwayneg/multistate.hpp"
#include "kwayneg/ptranspose.hpp"
#include "kwayneg/spectral.hpp"

namespace kwayneg {

inline constexpr double kSplittingTol = 1e-9;
inline constexpr double kSingleNegativeTol = 1e-8;

/// The two algebraically equivalent ways of reading a negativity off a
/// unit-trace transposed operator:
///   (||X||_1 - 1) / (d_p - 1)   and   -2 / (d_p - 1) * sum of negative eigenvalues.
struct NegativityRoutes {
  double trace_norm = 0.0;
  double eigenvalue_sum = 0.0;
};

NegativityRoutes negativity_routes(const TransposedOperator& t);
double negativity(const TransposedOperator& t);

double global_negativity(const DensityOperator& rho, Subsystem party);
double kway_negativity(const DensityOperator& rho, Subsystem party, std::size_t k);
double subset_negativity(const DensityOperator& rho, Subsystem party, SubsystemSet subset);

/// Global, K-way, and partial K-way negativities of one subsystem.
struct NegativityReport {
  Subsystem party{1};
  std::size_t party_dim = 2;
  double n_global = 0.0;
  std::map<std::size_t, double> n_kway;       // N_K, K = 2..N
  std::map<std::size_t, double> e_kway;       // E_K, K = 2..N
  double e_zero = 0.0;                        // E_0
  std::map<std::size_t, std::size_t> nu_kway; // negative eigenvalue counts of rho_K^{T_p}
  std::size_t nu_global = 0;

  /// |N_G - (sum_K E_K - E_0)|
  double splitting_residual() const;
};

/// E_K = -2/(d_p-1) Tr(P_- rho_K^{T_p}), E_0 = -2(N-2)/(d_p-1) Tr(P_- rho), with
/// P_- the projector onto the negative eigenspace of rho_G^{T_p}.
/// Throws InvariantViolation if N_G = sum_K E_K - E_0 fails by more than 1e-9.
NegativityReport partial_kway_negativities(const DensityOperator& rho, Subsystem party,
                                           double zero_tol = kZeroTol);

/// Same values without the splitting check, for callers that report the
/// residual themselves.
NegativityReport partial_kway_negativities_unchecked(const DensityOperator& rho, Subsystem party,
                                                     double zero_tol = kZeroTol);

/// E_2^{p-S}: the same projector expectation taken against a subset transpose.
double subset_partial_negativity(const DensityOperator& rho, Subsystem party, SubsystemSet subset,
                                 double zero_tol = kZeroTol);

struct SingleNegativeCheck {
  bool applicable = false;
  double residual = 0.0;         // |N_G^2 - 4 sum_K sum_m (lambda_m^{K-})^2|, when applicable
  double part_mismatch = 0.0;    // max |neg(rho_G^{T_p}) - sum_K neg(rho_K^{T_p})|
  std::size_t nu_global = 0;
};

/// Applicable when the global transpose has one negative eigenvalue and its
/// negative part equals the sum of the K-way negative parts (elementwise 1e-8).
SingleNegativeCheck single_negative_identity_check(const DensityOperator& rho, Subsystem party,
                                                   double zero_tol = kZeroTol);

struct ConvexityBranch {
  std::size_t outcome = 0;
  double probability = 0.0;
  double negativity = 0.0;
};

struct ConvexityCheck {
  double lhs = 0.0;  // negativity of the reduced pair
  double rhs = 0.0;  // outcome-averaged negativity after measuring the third party
  std::vector<ConvexityBranch> branches;
};

/// Compares the negativity of the pair (p, q) after tracing out `measured`
/// against the average pair negativity after measuring it. Requires N = 3.
ConvexityCheck reduced_convexity_check(const PureState& psi, Subsystem measured, Subsystem p,
                                       Subsystem q);

}  // namespace kwayneg
