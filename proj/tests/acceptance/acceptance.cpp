// Acceptance run: one [PASS]/[FAIL] line per criterion, with the failing
// items listed underneath. Exit status is nonzero if any criterion fails.

#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "kwayneg/canonical.hpp"
#include "kwayneg/catalog.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/ptranspose.hpp"

using namespace kwayneg;

namespace {

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  void near(const std::string& what, double got, double want, double tol) {
    ++checks_;
    const double r = std::abs(got - want);
    worst_ = std::max(worst_, r);
    if (!(r <= tol)) fail(fmt::format("{}: got {:.12g}, want {:.12g}, |diff| {:.3e} > {:.0e}", what, got, want, r, tol));
  }

  void below(const std::string& what, double value, double tol) {
    ++checks_;
    worst_ = std::max(worst_, value);
    if (!(value < tol)) fail(fmt::format("{}: {:.3e} not below {:.0e}", what, value, tol));
  }

  void truth(const std::string& what, bool ok) {
    ++checks_;
    if (!ok) fail(what);
  }

  bool report() const {
    const bool ok = failures_.empty();
    std::printf("[%s] %s (%zu checks, worst residual %.3e)\n", ok ? "PASS" : "FAIL", title_.c_str(), checks_, worst_);
    const std::size_t shown = std::min<std::size_t>(failures_.size(), 8);
    for (std::size_t i = 0; i < shown; ++i) std::printf("       - %s\n", failures_[i].c_str());
    if (failures_.size() > shown) std::printf("       ... %zu more\n", failures_.size() - shown);
    return ok;
  }

 private:
  void fail(std::string msg) { failures_.push_back(std::move(msg)); }

  std::string title_;
  std::size_t checks_ = 0;
  double worst_ = 0.0;
  std::vector<std::string> failures_;
};

const std::array<double, 5> kMuSweep{0.1, 0.25, 0.5, 0.75, 0.9};

std::vector<DensityOperator> random_suite() {
  const std::vector<SubsystemDims> profiles{{2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 2, 2, 2}};
  std::vector<DensityOperator> out;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto& dims = profiles[i % profiles.size()];
    if (i % 2 == 0) {
      out.push_back(pure_to_density(random_pure(dims, 7000 + i)));
    } else {
      out.push_back(random_mixed(dims, 1 + (i / 2) % 4, 7000 + i));
    }
  }
  return out;
}

bool ac1() {
  Criterion c("AC1 GHZ and W benchmark negativities");
  const auto g = pure_to_density(ghz(3));
  const auto w = pure_to_density(w_state(3));
  const double w_exact = 2.0 * std::sqrt(2.0) / 3.0;
  for (std::size_t p = 1; p <= 3; ++p) {
    const Subsystem s{p};
    c.near(fmt::format("GHZ N_G^{}", p), global_negativity(g, s), 1.0, 1e-10);
    c.near(fmt::format("GHZ N_3^{}", p), kway_negativity(g, s, 3), 1.0, 1e-10);
    const double ng = global_negativity(w, s);
    c.near(fmt::format("W N_G^{} vs quoted 0.94", p), ng, 0.94, 5e-3);
    c.near(fmt::format("W N_G^{}", p), ng, w_exact, 1e-9);
    c.near(fmt::format("W N_2^{} = N_G^{}", p, p), kway_negativity(w, s, 2), ng, 1e-9);
    c.near(fmt::format("W N_3^{}", p), kway_negativity(w, s, 3), 0.0, 1e-10);
  }
  return c.report();
}

bool ac2() {
  Criterion c("AC2 mu-family closed forms");
  const Subsystem a{1}, b{2}, cc{3};
  for (double mu0 : kMuSweep) {
    const auto cf = mu_family_closed_form(mu0);
    const auto rho = pure_to_density(mu_family(mu0));
    const auto r = partial_kway_negativities_unchecked(rho, a);
    c.near(fmt::format("mu0={} N_G^A", mu0), r.n_global, cf.n_global, 1e-9);
    c.near(fmt::format("mu0={} N_2^A", mu0), r.n_kway.at(2), cf.n_2, 1e-9);
    c.near(fmt::format("mu0={} N_3^A", mu0), r.n_kway.at(3), cf.n_3, 1e-9);
    c.near(fmt::format("mu0={} N_2^(A-AB)", mu0), subset_negativity(rho, a, {a, b}), cf.n_ab, 1e-9);
    c.near(fmt::format("mu0={} N_2^(A-AC)", mu0), subset_negativity(rho, a, {a, cc}), cf.n_ac, 1e-9);
    c.near(fmt::format("mu0={} E_3^A", mu0), r.e_kway.at(3), cf.e_3, 1e-9);
    c.near(fmt::format("mu0={} E_2^A", mu0), r.e_kway.at(2), cf.e_2, 1e-9);
  }
  return c.report();
}

bool ac3() {
  Criterion c("AC3 monogamy of squared pair negativities");
  const Subsystem a{1}, b{2}, cc{3};
  for (double mu0 : kMuSweep) {
    const auto rho = pure_to_density(mu_family(mu0));
    const double n2 = kway_negativity(rho, a, 2);
    const double nab = subset_negativity(rho, a, {a, b});
    const double nac = subset_negativity(rho, a, {a, cc});
    c.near(fmt::format("mu0={} (N_2^A)^2 vs sum of pair squares", mu0), n2 * n2, nab * nab + nac * nac, 1e-9);
  }
  return c.report();
}

bool ac4() {
  Criterion c("AC4 decomposition and splitting identities on 200 random states");
  std::size_t i = 0;
  for (const auto& rho : random_suite()) {
    const std::size_t n = rho.dims().count();
    for (std::size_t p = 1; p <= n; ++p) {
      const Subsystem s{p};
      c.below(fmt::format("state {} p={} global decomposition", i, p), verify_global_decomposition(rho, s), 1e-12);
      if (n == 3) {
        c.below(fmt::format("state {} p={} tripartite decomposition", i, p), verify_tripartite_decomposition(rho, s), 1e-12);
      }
      c.below(fmt::format("state {} p={} splitting", i, p), partial_kway_negativities_unchecked(rho, s).splitting_residual(), 1e-9);
    }
    ++i;
  }
  return c.report();
}

bool ac5() {
  Criterion c("AC5 W-like table and CNOT relation");
  for (double a : {1.0 / 3.0, 0.4, 0.45, 0.5}) {
    for (const auto& cell : table1(a)) {
      c.near(fmt::format("a={:.4g} {} {}^{}", a, cell.state, measure_name(cell.measure), cell.p), cell.computed,
             cell.closed_form, 1e-9);
    }
    const auto moved = apply_gate(w_like(a), cnot(Subsystem{1}, Subsystem{2}));
    c.truth(fmt::format("a={:.4g} CNOT(1->2) psiI == psiF exactly", a), moved.amplitudes() == ghz_like(a).amplitudes());
  }
  return c.report();
}

bool ac6() {
  Criterion c("AC6 qubit-qubit-qutrit family");
  const Subsystem a{1}, b{2}, cc{3};
  for (std::uint64_t draw = 0; draw < 100; ++draw) {
    const auto raw = random_pure(SubsystemDims{4}, 8000 + draw).amplitudes();
    const std::array<Complex, 4> coef{raw[0], raw[1], raw[2], raw[3]};
    const auto psi = qutrit_family(coef);
    const auto rho = pure_to_density(psi);
    const auto cf = qutrit_closed_form(coef);
    const std::string tag = fmt::format("draw {}", draw);

    const auto sa = schmidt_coefficients(psi, a);
    const auto sb = schmidt_coefficients(psi, b);
    c.near(tag + " Schmidt A larger", sa[0], std::max(cf.mu0a, cf.mu1a), 1e-9);
    c.near(tag + " Schmidt A smaller", sa[1], std::min(cf.mu0a, cf.mu1a), 1e-9);
    c.near(tag + " Schmidt B larger", sb[0], std::max(cf.mu0b, cf.mu1b), 1e-9);
    c.near(tag + " Schmidt B smaller", sb[1], std::min(cf.mu0b, cf.mu1b), 1e-9);

    const auto ra = partial_kway_negativities_unchecked(rho, a);
    const auto rb = partial_kway_negativities_unchecked(rho, b);
    c.near(tag + " N_G^A", ra.n_global, cf.n_global_a, 1e-9);
    c.near(tag + " N_G^B", rb.n_global, cf.n_global_b, 1e-9);
    c.near(tag + " N_3^A", ra.n_kway.at(3), cf.n_3, 1e-9);
    c.near(tag + " N_3^B", rb.n_kway.at(3), cf.n_3, 1e-9);
    c.near(tag + " N_2^A", ra.n_kway.at(2), cf.n_2a, 1e-9);
    c.near(tag + " N_2^B", rb.n_kway.at(2), cf.n_2b, 1e-9);
    for (const auto* r : {&ra, &rb}) {
      const double lhs = r->n_global * r->n_global;
      const double rhs = r->n_kway.at(2) * r->n_kway.at(2) + r->n_kway.at(3) * r->n_kway.at(3);
      c.truth(fmt::format("{} squared inequality p={}: {:.12g} > {:.12g}", tag, r->party.label(), lhs, rhs),
              lhs <= rhs + 1e-9);
    }
    c.near(tag + " E_2^A", ra.e_kway.at(2), cf.e_2a, 1e-9);
    c.near(tag + " E_3^A", ra.e_kway.at(3), cf.e_3, 1e-9);
    c.near(tag + " E_3^B", rb.e_kway.at(3), cf.e_3, 1e-9);
    c.near(tag + " E_2^B", rb.e_kway.at(2), cf.e_2b, 1e-9);

    c.near(tag + " N^(A-AB)", subset_negativity(rho, a, {a, b}), cf.n_ab, 1e-9);
    c.near(tag + " N^(A-AC)", subset_negativity(rho, a, {a, cc}), cf.n_ac, 1e-9);
    c.near(tag + " N^(B-BC)", subset_negativity(rho, b, {b, cc}), cf.n_bc, 1e-9);
    const double e_ab = subset_partial_negativity(rho, a, {a, b});
    const double e_ac = subset_partial_negativity(rho, a, {a, cc});
    const double e_ab_b = subset_partial_negativity(rho, b, {a, b});
    const double e_bc = subset_partial_negativity(rho, b, {b, cc});
    c.near(tag + " E^AB", e_ab, cf.e_ab, 1e-9);
    c.near(tag + " E^AC", e_ac, cf.e_ac, 1e-9);
    c.near(tag + " E^BC", e_bc, cf.e_bc, 1e-9);
    c.near(tag + " sum rule A", ra.e_kway.at(2), e_ab + e_ac, 1e-9);
    c.near(tag + " sum rule B", rb.e_kway.at(2), e_ab_b + e_bc, 1e-9);
  }
  return c.report();
}

bool ac7() {
  Criterion c("AC7 reduced-pair convexity");
  const Subsystem a{1}, b{2}, cc{3};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto psi = random_pure(SubsystemDims{2, 2, 2}, 9000 + seed);
    for (const auto& [m, p, q] : {std::array{cc, a, b}, std::array{b, a, cc}, std::array{a, b, cc}}) {
      const auto r = reduced_convexity_check(psi, m, p, q);
      c.truth(fmt::format("state {} measure {}: lhs {:.12g} > rhs {:.12g}", seed, m.label(), r.lhs, r.rhs),
              r.lhs <= r.rhs + 1e-9);
    }
  }
  for (double mu0 : kMuSweep) {
    const auto r = reduced_convexity_check(mu_family(mu0), cc, a, b);
    c.near(fmt::format("mu0={} measured-pair rhs", mu0), r.rhs, mu_family_closed_form(mu0).measured_pair, 1e-9);
    c.truth(fmt::format("mu0={} lhs <= rhs", mu0), r.lhs <= r.rhs + 1e-9);
  }
  return c.report();
}

bool ac8() {
  Criterion c("AC8 single-negative-eigenvalue identity");
  for (std::size_t p = 1; p <= 3; ++p) {
    const auto g = single_negative_identity_check(pure_to_density(ghz(3)), Subsystem{p});
    c.truth(fmt::format("GHZ p={} applicable", p), g.applicable);
    if (g.applicable) c.below(fmt::format("GHZ p={} residual", p), g.residual, 1e-8);
  }
  for (double mu0 : kMuSweep) {
    const auto r = single_negative_identity_check(pure_to_density(mu_family(mu0)), Subsystem{1});
    if (r.nu_global != 1) continue;
    c.truth(fmt::format("mu0={} applicable (nu_G = 1, negative-part mismatch {:.3e})", mu0, r.part_mismatch),
            r.applicable);
    if (r.applicable) c.below(fmt::format("mu0={} residual", mu0), r.residual, 1e-8);
  }
  const DensityOperator mixed(SubsystemDims{2, 2, 2}, Matrix::Identity(8, 8) / 8.0);
  c.truth("maximally mixed reported not applicable", !single_negative_identity_check(mixed, Subsystem{1}).applicable);
  return c.report();
}

bool ac9() {
  Criterion c("AC9 product states have positive partial transpose");
  const std::vector<SubsystemDims> profiles{{2, 2}, {2, 2, 2}, {2, 2, 3}, {2, 2, 2, 2}};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto rho = random_product_mixed(profiles[seed % profiles.size()], 10000 + seed);
    for (std::size_t p = 1; p <= rho.dims().count(); ++p) {
      const double lo = eigendecompose(global_pt(rho, Subsystem{p}).matrix()).eigenvalues[0];
      c.truth(fmt::format("state {} p={} min eigenvalue {:.3e}", seed, p, lo), lo >= -1e-10);
    }
  }
  return c.report();
}

bool ac10() {
  Criterion c("AC10 heuristic canonicalization");
  const CanonicalOptions opts;  // 50 restarts
  const PureState product(SubsystemDims{2, 2}, Vector::Constant(4, Complex(0.5)));
  const auto rp = heuristic_canonicalize(product, opts);
  c.truth(fmt::format("product of superpositions reaches 1 term (got {})", rp.best_lbps), rp.best_lbps == 1);
  const auto again = heuristic_canonicalize(product, opts);
  c.truth("product search deterministic", again.best_state.amplitudes() == rp.best_state.amplitudes() &&
                                              again.iterations == rp.iterations);
  const auto rg = heuristic_canonicalize(ghz(3), opts);
  c.truth(fmt::format("GHZ stays at 2 terms (got {})", rg.best_lbps), rg.best_lbps == 2);
  const auto rq = heuristic_canonicalize(qutrit_family({0.5, 0.5, 0.5, 0.5}), opts);
  c.truth(fmt::format("qutrit family stays at 4 terms (got {})", rq.best_lbps), rq.best_lbps == 4);
  return c.report();
}

}  // namespace

int main() {
  bool ok = true;
  for (auto* criterion : {ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10}) ok = criterion() && ok;
  std::fflush(stdout);
  return ok ? 0 : 1;
}
