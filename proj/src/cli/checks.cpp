#include "checks.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "kwayneg/negativity.hpp"
#include "kwayneg/ptranspose.hpp"

namespace kwayneg::cli {

namespace {

constexpr double kElementwiseTol = 1e-12;

class Collector {
 public:
  void equal(std::string name, double got, double want, double tol) {
    const double r = std::abs(got - want);
    out_.push_back({std::move(name), r <= tol ? Status::kPass : Status::kFail, r, tol,
                    fmt::format("computed {:.12g}, expected {:.12g}", got, want)});
  }

  void residual(std::string name, double r, double tol) {
    out_.push_back({std::move(name), r <= tol ? Status::kPass : Status::kFail, r, tol, ""});
  }

  // lhs <= rhs + tol
  void at_most(std::string name, double lhs, double rhs, double tol) {
    const double v = lhs - rhs;
    out_.push_back({std::move(name), v <= tol ? Status::kPass : Status::kFail, v, tol,
                    fmt::format("lhs {:.12g}, rhs {:.12g}", lhs, rhs)});
  }

  void not_applicable(std::string name, std::string why) {
    out_.push_back({std::move(name), Status::kNotApplicable, 0.0, 0.0, std::move(why)});
  }

  std::vector<CheckResult> take() { return std::move(out_); }

 private:
  std::vector<CheckResult> out_;
};

void structural(Collector& c, const CheckContext& ctx) {
  const DensityOperator& rho = *ctx.rho;
  const std::size_t n = rho.dims().count();
  for (auto p : ctx.parties) {
    const std::size_t pl = p.label();
    double route = std::abs(negativity_routes(global_pt(rho, p)).trace_norm -
                            negativity_routes(global_pt(rho, p)).eigenvalue_sum);
    for (std::size_t k = 2; k <= n; ++k) {
      const auto r = negativity_routes(kway_pt(rho, p, k));
      route = std::max(route, std::abs(r.trace_norm - r.eigenvalue_sum));
    }
    c.residual(fmt::format("two-route agreement p={}", pl), route, kSplittingTol);

    if (n >= 2) c.residual(fmt::format("global decomposition p={}", pl), verify_global_decomposition(rho, p), kElementwiseTol);
    if (n == 3) {
      c.residual(fmt::format("tripartite decomposition p={}", pl), verify_tripartite_decomposition(rho, p),
                 kElementwiseTol);
    }

    const auto report = partial_kway_negativities_unchecked(rho, p, ctx.zero_tol);
    c.residual(fmt::format("negativity splitting p={}", pl), report.splitting_residual(), kSplittingTol);

    const auto single = single_negative_identity_check(rho, p, ctx.zero_tol);
    const std::string name = fmt::format("single-negative identity p={}", pl);
    if (single.applicable) {
      c.residual(name, single.residual, kSingleNegativeTol);
    } else if (single.nu_global != 1) {
      c.not_applicable(name, fmt::format("nu_G = {}", single.nu_global));
    } else {
      c.not_applicable(name, fmt::format("negative parts differ by {:.3e}", single.part_mismatch));
    }
  }

  if (n == 3 && ctx.pure != nullptr) {
    for (std::size_t m = 1; m <= 3; ++m) {
      std::vector<Subsystem> pair;
      for (std::size_t q = 1; q <= 3; ++q) {
        if (q != m) pair.push_back(Subsystem{q});
      }
      const auto cv = reduced_convexity_check(*ctx.pure, Subsystem{m}, pair[0], pair[1]);
      c.at_most(fmt::format("pair convexity measure={} pair=({},{})", m, pair[0].label(), pair[1].label()), cv.lhs,
                cv.rhs, kSplittingTol);
    }
  }
}

void ghz_family(Collector& c, const NamedState& s, double tol) {
  const DensityOperator rho = pure_to_density(s.state);
  for (std::size_t p = 1; p <= s.n; ++p) {
    c.equal(fmt::format("ghz N_G p={}", p), global_negativity(rho, Subsystem{p}), 1.0, tol);
    c.equal(fmt::format("ghz N_{} p={}", s.n, p), kway_negativity(rho, Subsystem{p}, s.n), 1.0, tol);
  }
}

void w_family(Collector& c, const NamedState& s, double tol) {
  const DensityOperator rho = pure_to_density(s.state);
  const double nn = static_cast<double>(s.n);
  const double expected = 2.0 * std::sqrt(nn - 1.0) / nn;
  for (std::size_t p = 1; p <= s.n; ++p) {
    c.equal(fmt::format("w N_G p={}", p), global_negativity(rho, Subsystem{p}), expected, tol);
    c.equal(fmt::format("w N_2 p={}", p), kway_negativity(rho, Subsystem{p}, 2), expected, tol);
    for (std::size_t k = 3; k <= s.n; ++k) {
      c.equal(fmt::format("w N_{} p={}", k, p), kway_negativity(rho, Subsystem{p}, k), 0.0, tol);
    }
  }
}

void mu_checks(Collector& c, const NamedState& s, double tol) {
  const double mu0 = s.parameter;
  const auto cf = mu_family_closed_form(mu0);
  const DensityOperator rho = pure_to_density(s.state);
  const Subsystem a{1}, b{2}, cc{3};
  const auto r = partial_kway_negativities_unchecked(rho, a);
  const double n_ab = subset_negativity(rho, a, {a, b});
  const double n_ac = subset_negativity(rho, a, {a, cc});
  c.equal("mu family N_G^A", r.n_global, cf.n_global, tol);
  c.equal("mu family N_2^A", r.n_kway.at(2), cf.n_2, tol);
  c.equal("mu family N_3^A", r.n_kway.at(3), cf.n_3, tol);
  c.equal("mu family N^{A-AB}", n_ab, cf.n_ab, tol);
  c.equal("mu family N^{A-AC}", n_ac, cf.n_ac, tol);
  c.equal("mu family E_2^A", r.e_kway.at(2), cf.e_2, tol);
  c.equal("mu family E_3^A", r.e_kway.at(3), cf.e_3, tol);
  c.equal("mu family monogamy", r.n_kway.at(2) * r.n_kway.at(2), n_ab * n_ab + n_ac * n_ac, tol);

  const auto m0 = project_and_renormalize(s.state, cc, 0);
  const auto m1 = project_and_renormalize(s.state, cc, 1);
  c.equal("mu family P(C=0)", m0.probability, (2.0 * mu0 + 1.0) / 3.0, tol);
  c.equal("mu family P(C=1)", m1.probability, 2.0 * (1.0 - mu0) / 3.0, tol);
  const auto cv = reduced_convexity_check(s.state, cc, a, b);
  c.equal("mu family measured-pair negativity", cv.rhs, cf.measured_pair, tol);
}

void qutrit_checks(Collector& c, const NamedState& s, double tol) {
  const auto cf = qutrit_closed_form(s.coefficients);
  const DensityOperator rho = pure_to_density(s.state);
  const Subsystem a{1}, b{2}, cc{3};

  const auto sa = schmidt_coefficients(s.state, a);
  const auto sb = schmidt_coefficients(s.state, b);
  c.equal("qutrit Schmidt A (larger)", sa[0], std::max(cf.mu0a, cf.mu1a), tol);
  c.equal("qutrit Schmidt A (smaller)", sa[1], std::min(cf.mu0a, cf.mu1a), tol);
  c.equal("qutrit Schmidt B (larger)", sb[0], std::max(cf.mu0b, cf.mu1b), tol);
  c.equal("qutrit Schmidt B (smaller)", sb[1], std::min(cf.mu0b, cf.mu1b), tol);

  const auto ra = partial_kway_negativities_unchecked(rho, a);
  const auto rb = partial_kway_negativities_unchecked(rho, b);
  c.equal("qutrit N_G^A", ra.n_global, cf.n_global_a, tol);
  c.equal("qutrit N_G^B", rb.n_global, cf.n_global_b, tol);
  c.equal("qutrit N_3^A", ra.n_kway.at(3), cf.n_3, tol);
  c.equal("qutrit N_3^B", rb.n_kway.at(3), cf.n_3, tol);
  c.equal("qutrit N_2^A", ra.n_kway.at(2), cf.n_2a, tol);
  c.equal("qutrit N_2^B", rb.n_kway.at(2), cf.n_2b, tol);
  c.at_most("qutrit squared inequality A", ra.n_global * ra.n_global,
            ra.n_kway.at(2) * ra.n_kway.at(2) + ra.n_kway.at(3) * ra.n_kway.at(3), tol);
  c.at_most("qutrit squared inequality B", rb.n_global * rb.n_global,
            rb.n_kway.at(2) * rb.n_kway.at(2) + rb.n_kway.at(3) * rb.n_kway.at(3), tol);
  c.equal("qutrit E_2^A", ra.e_kway.at(2), cf.e_2a, tol);
  c.equal("qutrit E_3^A", ra.e_kway.at(3), cf.e_3, tol);
  c.equal("qutrit E_3^B", rb.e_kway.at(3), cf.e_3, tol);
  c.equal("qutrit E_2^B", rb.e_kway.at(2), cf.e_2b, tol);

  c.equal("qutrit N^{A-AB}", subset_negativity(rho, a, {a, b}), cf.n_ab, tol);
  c.equal("qutrit N^{A-AC}", subset_negativity(rho, a, {a, cc}), cf.n_ac, tol);
  c.equal("qutrit N^{B-BC}", subset_negativity(rho, b, {b, cc}), cf.n_bc, tol);

  const double e_ab_a = subset_partial_negativity(rho, a, {a, b});
  const double e_ac = subset_partial_negativity(rho, a, {a, cc});
  const double e_ab_b = subset_partial_negativity(rho, b, {a, b});
  const double e_bc = subset_partial_negativity(rho, b, {b, cc});
  c.equal("qutrit E^{AB}", e_ab_a, cf.e_ab, tol);
  c.equal("qutrit E^{AC}", e_ac, cf.e_ac, tol);
  c.equal("qutrit E^{BC}", e_bc, cf.e_bc, tol);
  c.equal("qutrit sum rule A", ra.e_kway.at(2), e_ab_a + e_ac, tol);
  c.equal("qutrit sum rule B", rb.e_kway.at(2), e_ab_b + e_bc, tol);
}

void table_checks(Collector& c, const NamedState& s, double tol) {
  const std::string wanted = s.family == Family::kWLike ? "psiI" : "psiF";
  for (const auto& cell : table1(s.parameter)) {
    if (cell.state != wanted) continue;
    c.equal(fmt::format("table {} {}^{}", cell.state, measure_name(cell.measure), cell.p), cell.computed,
            cell.closed_form, tol);
  }
  if (s.family == Family::kGhzLike) {
    const PureState moved = apply_gate(w_like(s.parameter), cnot(Subsystem{1}, Subsystem{2}));
    c.residual("CNOT(1->2) maps psiI to psiF", (moved.amplitudes() - s.state.amplitudes()).cwiseAbs().maxCoeff(),
               0.0);
  }
}

}  // namespace

std::vector<CheckResult> run_checks(const CheckContext& ctx) {
  Collector c;
  structural(c, ctx);
  if (ctx.named != nullptr) {
    const NamedState& s = *ctx.named;
    switch (s.family) {
      case Family::kGhz: ghz_family(c, s, ctx.identity_tol); break;
      case Family::kW: w_family(c, s, ctx.identity_tol); break;
      case Family::kMu: mu_checks(c, s, ctx.identity_tol); break;
      case Family::kQutrit: qutrit_checks(c, s, ctx.identity_tol); break;
      case Family::kWLike:
      case Family::kGhzLike: table_checks(c, s, ctx.identity_tol); break;
    }
  }
  return c.take();
}

}  // namespace kwayneg::cli
