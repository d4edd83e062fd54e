#include "kwayneg/negativity.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace kwayneg {

namespace {

double scale(std::size_t party_dim) { return 1.0 / static_cast<double>(party_dim - 1); }

// ||X||_1 >= |Tr X| = 1, so a trace norm just under 1 is rounding.
NegativityRoutes routes_from(const SpectralResult& s, std::size_t party_dim) {
  return {std::max(0.0, (s.trace_norm() - 1.0) * scale(party_dim)), -2.0 * s.negative_sum() * scale(party_dim)};
}

// Sum of lambda v v^dagger over eigenvalues below -zero_tol.
Matrix negative_part(const SpectralResult& s) {
  Eigen::Index neg = 0;
  while (neg < s.eigenvalues.size() && s.eigenvalues[neg] < -s.zero_tol) ++neg;
  const auto v = s.eigenvectors.leftCols(neg);
  return v * s.eigenvalues.head(neg).asDiagonal() * v.adjoint();
}

double negative_square_sum(const SpectralResult& s) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    if (s.eigenvalues[i] < -s.zero_tol) acc += s.eigenvalues[i] * s.eigenvalues[i];
  }
  return acc;
}

}  // namespace

NegativityRoutes negativity_routes(const TransposedOperator& t) {
  return routes_from(eigendecompose(t.matrix()), t.dims().dim(t.provenance().party));
}

double negativity(const TransposedOperator& t) { return negativity_routes(t).trace_norm; }

double global_negativity(const DensityOperator& rho, Subsystem party) {
  return negativity(global_pt(rho, party));
}

double kway_negativity(const DensityOperator& rho, Subsystem party, std::size_t k) {
  return negativity(kway_pt(rho, party, k));
}

double subset_negativity(const DensityOperator& rho, Subsystem party, SubsystemSet subset) {
  return negativity(subset_pt(rho, party, subset));
}

double NegativityReport::splitting_residual() const {
  double sum = 0.0;
  for (const auto& [k, e] : e_kway) sum += e;
  return std::abs(n_global - (sum - e_zero));
}

NegativityReport partial_kway_negativities_unchecked(const DensityOperator& rho, Subsystem party,
                                                     double zero_tol) {
  const auto& dims = rho.dims();
  const std::size_t n = dims.count();
  NegativityReport report;
  report.party = party;
  report.party_dim = dims.dim(party);
  const double c = scale(report.party_dim);

  const SpectralResult global = eigendecompose(global_pt(rho, party).matrix(), zero_tol);
  report.n_global = routes_from(global, report.party_dim).trace_norm;
  report.nu_global = global.negative_count();

  for (std::size_t k = 2; k <= n; ++k) {
    const Matrix rho_k = kway_pt(rho, party, k).matrix();
    const SpectralResult sk = eigendecompose(rho_k, zero_tol);
    report.n_kway[k] = routes_from(sk, report.party_dim).trace_norm;
    report.nu_kway[k] = sk.negative_count();
    report.e_kway[k] = -2.0 * c * global.negative_expectation(rho_k);
  }
  report.e_zero = -2.0 * static_cast<double>(n - 2) * c * global.negative_expectation(rho.matrix());
  return report;
}

NegativityReport partial_kway_negativities(const DensityOperator& rho, Subsystem party,
                                           double zero_tol) {
  NegativityReport report = partial_kway_negativities_unchecked(rho, party, zero_tol);
  const double residual = report.splitting_residual();
  if (!(residual < kSplittingTol)) {
    throw InvariantViolation("negativity splitting",
                             fmt::format("|N_G - (sum E_K - E_0)| = {:.3e} for subsystem {}", residual,
                                         party.label()));
  }
  return report;
}

double subset_partial_negativity(const DensityOperator& rho, Subsystem party, SubsystemSet subset,
                                 double zero_tol) {
  const SpectralResult global = eigendecompose(global_pt(rho, party).matrix(), zero_tol);
  const Matrix t = subset_pt(rho, party, subset).matrix();
  return -2.0 * scale(rho.dims().dim(party)) * global.negative_expectation(t);
}

SingleNegativeCheck single_negative_identity_check(const DensityOperator& rho, Subsystem party,
                                                   double zero_tol) {
  SingleNegativeCheck out;
  const SpectralResult global = eigendecompose(global_pt(rho, party).matrix(), zero_tol);
  out.nu_global = global.negative_count();
  if (out.nu_global != 1) return out;

  Matrix parts = -negative_part(global);
  double squares = 0.0;
  for (std::size_t k = 2; k <= rho.dims().count(); ++k) {
    const SpectralResult sk = eigendecompose(kway_pt(rho, party, k).matrix(), zero_tol);
    parts += negative_part(sk);
    squares += negative_square_sum(sk);
  }
  out.part_mismatch = parts.cwiseAbs().maxCoeff();
  out.applicable = out.part_mismatch <= kSingleNegativeTol;
  if (out.applicable) {
    const double ng = routes_from(global, rho.dims().dim(party)).trace_norm;
    out.residual = std::abs(ng * ng - 4.0 * squares);
  }
  return out;
}

ConvexityCheck reduced_convexity_check(const PureState& psi, Subsystem measured, Subsystem p,
                                       Subsystem q) {
  const auto& dims = psi.dims();
  if (dims.count() != 3) {
    throw InvalidArgument(fmt::format("convexity check needs N = 3, got {}", dims.count()));
  }
  dims.checked(measured);
  dims.checked(p);
  dims.checked(q);
  if (p == q || measured == p || measured == q) {
    throw InvalidArgument("measured subsystem and the pair must be three distinct subsystems");
  }
  const SubsystemSet pair{p, q};
  // position of p among the kept pair, in original order
  const Subsystem reduced_p{p < q ? 1U : 2U};

  ConvexityCheck out;
  out.lhs = global_negativity(partial_trace(pure_to_density(psi), pair), reduced_p);
  for (std::size_t k = 0; k < dims.dim(measured); ++k) {
    const auto outcome = project_and_renormalize(psi, measured, k);
    ConvexityBranch branch{k, outcome.probability, 0.0};
    if (outcome.state) {
      branch.negativity = global_negativity(partial_trace(pure_to_density(*outcome.state), pair), reduced_p);
    }
    out.rhs += branch.probability * branch.negativity;
    out.branches.push_back(branch);
  }
  return out;
}

}  // namespace kwayneg
