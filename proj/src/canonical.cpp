#include "kwayneg/canonical.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include <fmt/format.h>

#include "kwayneg/kernels.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/ptranspose.hpp"

namespace kwayneg {

std::size_t NuProfile::total() const {
  std::size_t t = 0;
  for (const auto& [k, nu] : nu_kway) t += nu;
  return t;
}

NuProfile nu_profile(const DensityOperator& rho, Subsystem party, double zero_tol) {
  NuProfile out;
  out.party = party;
  out.nu_global = count_negative(global_pt(rho, party).matrix(), zero_tol);
  for (std::size_t k = 2; k <= rho.dims().count(); ++k) {
    out.nu_kway[k] = count_negative(kway_pt(rho, party, k).matrix(), zero_tol);
  }
  return out;
}

GhzProjection ghz_projection_check(const PureState& psi, Subsystem party) {
  const auto& dims = psi.dims();
  const std::size_t p = dims.checked(party);
  const std::size_t n = dims.count();
  GhzProjection out;
  if (n < 2) return out;

  std::vector<std::size_t> support;
  std::set<std::size_t> in_support;
  for (Eigen::Index f = 0; f < psi.amplitudes().size(); ++f) {
    if (std::abs(psi.amplitudes()[f]) > kLbpsThreshold) {
      support.push_back(static_cast<std::size_t>(f));
      in_support.insert(static_cast<std::size_t>(f));
    }
  }
  if (support.empty()) return out;

  std::vector<MultiIndex> labels;
  for (auto f : support) labels.push_back(dims.decode(f));
  std::vector<std::size_t> partner(support.size(), support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    for (std::size_t j = 0; j < support.size(); ++j) {
      if (i == j || hamming_distance(labels[i], labels[j]) != n) continue;
      if (partner[i] != support.size()) return out;  // two all-differing partners
      partner[i] = j;
    }
    if (partner[i] == support.size()) return out;
  }

  std::set<std::size_t> images;
  for (std::size_t i = 0; i < support.size(); ++i) {
    const std::size_t j = partner[i];
    MultiIndex swapped = labels[i];
    swapped.digits[p] = labels[j].digits[p];
    const std::size_t image = dims.encode(swapped);
    if (in_support.count(image) || !images.insert(image).second) return out;
    if (i < j) {
      out.pairs.push_back({support[i], support[j], psi.amplitudes()[static_cast<Eigen::Index>(support[i])],
                           psi.amplitudes()[static_cast<Eigen::Index>(support[j])]});
    }
  }

  out.matched = true;
  for (const auto& pr : out.pairs) out.predicted += 2.0 * std::abs(pr.a) * std::abs(pr.b);
  out.n_way = kway_negativity(pure_to_density(psi), party, n);
  return out;
}

Matrix euler_unitary(std::size_t d, std::span<const double> angles) {
  if (angles.size() != d * d) {
    throw InvalidArgument(fmt::format("a {}-level unitary needs {} angles, got {}", d, d * d, angles.size()));
  }
  Matrix u = Matrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  std::size_t a = 0;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = j + 1; k < d; ++k) {
      const double c = std::cos(angles[a]);
      const double s = std::sin(angles[a]);
      const Complex ph = std::polar(1.0, angles[a + 1]);
      a += 2;
      const auto jj = static_cast<Eigen::Index>(j);
      const auto kk = static_cast<Eigen::Index>(k);
      // u <- G u, G acting on levels j, k
      const Eigen::RowVectorXcd rj = u.row(jj);
      const Eigen::RowVectorXcd rk = u.row(kk);
      u.row(jj) = c * rj - ph * s * rk;
      u.row(kk) = std::conj(ph) * s * rj + c * rk;
    }
  }
  for (std::size_t j = 0; j < d; ++j) u.row(static_cast<Eigen::Index>(j)) *= std::polar(1.0, angles[a++]);
  return u;
}

PureState apply_local_unitaries(const PureState& psi, std::span<const Matrix> unitaries) {
  const auto& dims = psi.dims();
  if (unitaries.size() != dims.count()) {
    throw InvalidArgument(fmt::format("expected {} local unitaries, got {}", dims.count(), unitaries.size()));
  }
  Vector v = psi.amplitudes();
  for (std::size_t m = 0; m < dims.count(); ++m) {
    const Subsystem target{m + 1};
    if (static_cast<std::size_t>(unitaries[m].rows()) != dims.dim(target)) {
      throw InvalidArgument(fmt::format("unitary {} has dimension {}, subsystem has {}", m + 1, unitaries[m].rows(),
                                        dims.dim(target)));
    }
    v = kernels::parallel::apply_gate(v, dims, std::span<const Subsystem>(&target, 1), unitaries[m]);
  }
  return PureState(dims, std::move(v), Normalization::kRenormalize);
}

namespace {

struct Objective {
  std::size_t lbps = std::numeric_limits<std::size_t>::max();
  double l1 = std::numeric_limits<double>::infinity();

  bool better_than(const Objective& o) const {
    if (lbps != o.lbps) return lbps < o.lbps;
    return l1 < o.l1;
  }
};

Objective measure(const Vector& v, double threshold) {
  Objective o{0, 0.0};
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]);
    o.l1 += m;
    if (m > threshold) ++o.lbps;
  }
  return o;
}

// Angles for all subsystems laid out back to back.
struct Layout {
  std::vector<std::size_t> start;
  std::size_t total = 0;

  explicit Layout(const SubsystemDims& dims) {
    for (auto d : dims.dims()) {
      start.push_back(total);
      total += d * d;
    }
  }
};

std::vector<Matrix> unitaries_for(const SubsystemDims& dims, const Layout& layout, const std::vector<double>& x) {
  std::vector<Matrix> us;
  for (std::size_t m = 0; m < dims.count(); ++m) {
    const std::size_t d = dims.dims()[m];
    us.push_back(euler_unitary(d, std::span<const double>(x).subspan(layout.start[m], d * d)));
  }
  return us;
}

Vector transform(const PureState& psi, const std::vector<Matrix>& us) {
  const auto& dims = psi.dims();
  Vector v = psi.amplitudes();
  for (std::size_t m = 0; m < dims.count(); ++m) {
    const Subsystem target{m + 1};
    v = kernels::serial::apply_gate(v, dims, std::span<const Subsystem>(&target, 1), us[m]);
  }
  return v;
}

struct RestartResult {
  std::vector<double> x;
  Objective best;
  std::size_t evaluations = 0;
  bool converged = false;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t r) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (r + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RestartResult descend(const PureState& psi, const Layout& layout, std::vector<double> x,
                      const CanonicalOptions& opt) {
  const auto& dims = psi.dims();
  RestartResult r;
  auto eval = [&](const std::vector<double>& at) {
    ++r.evaluations;
    return measure(transform(psi, unitaries_for(dims, layout, at)), opt.threshold);
  };
  r.best = eval(x);
  double step = opt.initial_step;
  while (step >= opt.min_step && r.evaluations < opt.max_evaluations) {
    bool improved = false;
    for (std::size_t i = 0; i < layout.total && r.evaluations < opt.max_evaluations; ++i) {
      for (double dir : {1.0, -1.0}) {
        std::vector<double> trial = x;
        trial[i] += dir * step;
        const Objective o = eval(trial);
        if (o.better_than(r.best)) {
          r.best = o;
          x = std::move(trial);
          improved = true;
          break;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  r.converged = step < opt.min_step;
  r.x = std::move(x);
  return r;
}

}  // namespace

CanonicalSearchResult heuristic_canonicalize(const PureState& psi, const CanonicalOptions& opt) {
  if (opt.restarts < 1) throw InvalidArgument("canonical search needs at least one restart");
  if (!(opt.min_step > 0.0) || !(opt.initial_step >= opt.min_step)) {
    throw InvalidArgument("canonical search step schedule is empty");
  }
  const auto& dims = psi.dims();
  const Layout layout(dims);

  std::vector<RestartResult> results(opt.restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(opt.restarts); ++r) {
    std::vector<double> x(layout.total, 0.0);
    if (r > 0) {
      std::mt19937_64 rng(mix_seed(opt.seed, static_cast<std::uint64_t>(r)));
      std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
      for (auto& v : x) v = angle(rng);
    }
    results[static_cast<std::size_t>(r)] = descend(psi, layout, std::move(x), opt);
  }

  std::size_t winner = 0;
  std::size_t evaluations = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    evaluations += results[r].evaluations;
    if (results[r].best.better_than(results[winner].best)) winner = r;
  }

  auto unitaries = unitaries_for(dims, layout, results[winner].x);
  PureState best = apply_local_unitaries(psi, unitaries);
  const DensityOperator rho_in = pure_to_density(psi);
  const DensityOperator rho_out = pure_to_density(best);

  CanonicalSearchResult out{best,
                            count_lbps(psi, opt.threshold),
                            count_lbps(best, opt.threshold),
                            measure(best.amplitudes(), opt.threshold).l1,
                            std::move(unitaries),
                            {},
                            {},
                            winner,
                            evaluations,
                            results[winner].converged,
                            true};
  for (std::size_t m = 1; m <= dims.count(); ++m) {
    out.nu_before.push_back(nu_profile(rho_in, Subsystem{m}));
    out.nu_after.push_back(nu_profile(rho_out, Subsystem{m}));
  }
  return out;
}

}  // namespace kwayneg
