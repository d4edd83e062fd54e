#include "kwayneg/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <random>

#include <fmt/format.h>

#include "kwayneg/kernels.hpp"
#include "kwayneg/negativity.hpp"

namespace kwayneg {

namespace {

PureState from_terms(const SubsystemDims& dims,
                     std::initializer_list<std::pair<std::vector<std::size_t>, Complex>> terms,
                     Normalization mode = Normalization::kStrict) {
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dims.total_dim()));
  for (const auto& [digits, value] : terms) amps[static_cast<Eigen::Index>(dims.encode({digits}))] += value;
  return PureState(dims, std::move(amps), mode);
}

SubsystemDims qubits(std::size_t n) { return SubsystemDims(std::vector<std::size_t>(n, 2)); }

void require_party_count(std::size_t n, std::string_view what) {
  if (n < 2) throw InvalidArgument(fmt::format("{} needs at least two subsystems, got {}", what, n));
}

}  // namespace

PureState ghz(std::size_t n) {
  require_party_count(n, "GHZ state");
  const SubsystemDims dims = qubits(n);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dims.total_dim()));
  amps[0] = amps[amps.size() - 1] = Complex{1.0 / std::sqrt(2.0), 0.0};
  return PureState(dims, std::move(amps), Normalization::kRenormalize);
}

PureState w_state(std::size_t n) {
  require_party_count(n, "W state");
  const SubsystemDims dims = qubits(n);
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dims.total_dim()));
  for (std::size_t m = 0; m < n; ++m) {
    amps[static_cast<Eigen::Index>(std::size_t{1} << m)] = Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0};
  }
  return PureState(dims, std::move(amps), Normalization::kRenormalize);
}

PureState mu_family(double mu0) {
  if (!(mu0 >= 0.0 && mu0 <= 1.0)) throw InvalidArgument(fmt::format("mu0 = {} outside [0, 1]", mu0));
  const double c0 = std::sqrt(mu0);
  const double c1 = std::sqrt((1.0 - mu0) / 3.0);
  return from_terms(qubits(3), {{{0, 0, 0}, c0}, {{1, 1, 0}, c1}, {{1, 0, 1}, c1}, {{1, 1, 1}, c1}},
                    Normalization::kRenormalize);
}

bool w_like_in_range(double a) { return a >= 1.0 / 3.0 - 1e-15 && a <= 0.5; }

PureState w_like(double a) {
  if (!(a >= 0.0 && a <= 0.5)) throw InvalidArgument(fmt::format("a = {} outside [0, 1/2]", a));
  const double s = std::sqrt(a);
  return from_terms(qubits(3), {{{1, 0, 0}, s}, {{0, 1, 0}, s}, {{0, 0, 1}, std::sqrt(1.0 - 2.0 * a)}});
}

PureState ghz_like(double a) {
  if (!(a >= 0.0 && a <= 0.5)) throw InvalidArgument(fmt::format("a = {} outside [0, 1/2]", a));
  const double s = std::sqrt(a);
  return from_terms(qubits(3), {{{0, 1, 0}, s}, {{1, 1, 0}, s}, {{0, 0, 1}, std::sqrt(1.0 - 2.0 * a)}});
}

PureState qutrit_family(const std::array<Complex, 4>& a) {
  return from_terms(SubsystemDims{2, 2, 3},
                    {{{0, 0, 0}, a[0]}, {{1, 0, 1}, a[1]}, {{0, 1, 1}, a[2]}, {{1, 1, 2}, a[3]}});
}

// ---- named-state grammar --------------------------------------------------

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return parts;
}

// from_chars rejects a leading '+'.
const char* read_double(const char* first, const char* last, double& out) {
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{}) return nullptr;
  return ptr;
}

double parse_real(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const char* ptr = read_double(text.data(), end, v);
  if (ptr != end || !std::isfinite(v)) throw ParseError(fmt::format("bad number for {}: '{}'", what, text));
  return v;
}

// x, yi, x+yi, x-yi
Complex parse_complex(std::string_view text, std::string_view what) {
  const char* p = text.data();
  const char* end = p + text.size();
  double first = 0.0;
  const char* q = read_double(p, end, first);
  if (q == nullptr) throw ParseError(fmt::format("bad number for {}: '{}'", what, text));
  if (q == end) return {first, 0.0};
  if (*q == 'i' && q + 1 == end) return {0.0, first};
  if (*q != '+' && *q != '-') throw ParseError(fmt::format("bad complex number for {}: '{}'", what, text));
  double second = 0.0;
  const char* r = read_double(q, end, second);
  if (r == nullptr || r + 1 != end || *r != 'i' || !std::isfinite(first) || !std::isfinite(second)) {
    throw ParseError(fmt::format("bad complex number for {}: '{}'", what, text));
  }
  return {first, second};
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError(fmt::format("bad integer for {}: '{}'", what, text));
  }
  return v;
}

struct Params {
  std::map<std::string, std::string_view> named;
  std::vector<std::string_view> positional;

  std::string_view take(const std::string& key, std::string_view name) {
    auto it = named.find(key);
    if (it == named.end()) throw ParseError(fmt::format("{} needs parameter '{}'", name, key));
    const auto v = it->second;
    named.erase(it);
    return v;
  }

  void finish(std::string_view name) const {
    if (!named.empty()) throw ParseError(fmt::format("unknown parameter '{}' for {}", named.begin()->first, name));
    if (!positional.empty()) throw ParseError(fmt::format("{} takes no positional parameters", name));
  }
};

Params parse_params(std::string_view body) {
  Params out;
  if (trim(body).empty()) return out;
  for (auto item : split(body, ',')) {
    if (item.empty()) throw ParseError("empty parameter in named-state spec");
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) {
      out.positional.push_back(item);
      continue;
    }
    const std::string key = lower(trim(item.substr(0, eq)));
    if (key.empty()) throw ParseError("empty parameter name in named-state spec");
    if (!out.named.emplace(key, trim(item.substr(eq + 1))).second) {
      throw ParseError(fmt::format("parameter '{}' given twice", key));
    }
  }
  return out;
}

// ghz3 -> ("ghz", 3); ghz -> ("ghz", 0)
std::pair<std::string, std::size_t> split_trailing_count(const std::string& name) {
  std::size_t i = name.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(name[i - 1]))) --i;
  if (i == name.size() || i == 0) return {name, 0};
  return {name.substr(0, i), parse_count(std::string_view(name).substr(i), "subsystem count")};
}

template <class F>
PureState guarded(F&& build) {
  try {
    return build();
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

}  // namespace

NamedState build_named(std::string_view spec) {
  spec = trim(spec);
  const auto colon = spec.find(':');
  const std::string full_name = lower(trim(spec.substr(0, colon)));
  Params params = parse_params(colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1));
  if (full_name.empty()) throw ParseError("empty state name");
  std::vector<std::string> warnings;

  auto [name, count] = split_trailing_count(full_name);
  if (name != "ghz" && name != "w") {
    name = full_name;
    count = 0;
  }
  if (name == "ghz" || name == "w") {
    if (params.named.count("n")) {
      if (count != 0) throw ParseError(fmt::format("subsystem count given twice in '{}'", spec));
      count = parse_count(params.take("n", name), "n");
    }
    params.finish(name);
    if (count == 0) throw ParseError(fmt::format("{} needs a subsystem count, e.g. {}3", name, name));
    PureState s = guarded([&] { return name == "ghz" ? ghz(count) : w_state(count); });
    return {std::string(spec), name == "ghz" ? Family::kGhz : Family::kW, count, 0.0, {}, std::move(s), warnings};
  }
  if (name == "eq9" || name == "mu") {
    const double mu0 = parse_real(params.take("mu0", name), "mu0");
    params.finish(name);
    if (!(mu0 >= 0.0 && mu0 <= 1.0)) throw ParseError(fmt::format("mu0 = {} outside [0, 1]", mu0));
    return {std::string(spec), Family::kMu, 3, mu0, {}, mu_family(mu0), warnings};
  }
  if (name == "psii" || name == "psif") {
    const double a = parse_real(params.take("a", name), "a");
    params.finish(name);
    if (!(a >= 0.0 && a <= 0.5)) throw ParseError(fmt::format("a = {} outside [0, 1/2]", a));
    if (!w_like_in_range(a)) warnings.push_back(fmt::format("a = {} is outside [1/3, 1/2]", a));
    const bool initial = name == "psii";
    return {std::string(spec), initial ? Family::kWLike : Family::kGhzLike, 3, a, {},
            initial ? w_like(a) : ghz_like(a), warnings};
  }
  if (name == "qutrit") {
    std::array<Complex, 4> a{};
    if (!params.positional.empty()) {
      if (params.positional.size() != 4 || !params.named.empty()) {
        throw ParseError("qutrit takes exactly four coefficients a0,a1,a2,a3");
      }
      for (std::size_t i = 0; i < 4; ++i) a[i] = parse_complex(params.positional[i], fmt::format("a{}", i));
      params.positional.clear();
    } else {
      for (std::size_t i = 0; i < 4; ++i) {
        const std::string key = fmt::format("a{}", i);
        a[i] = parse_complex(params.take(key, name), key);
      }
    }
    params.finish(name);
    double norm2 = 0.0;
    for (const auto& c : a) norm2 += std::norm(c);
    if (!(norm2 > 0.0)) throw ParseError("qutrit coefficients are all zero");
    if (std::abs(std::sqrt(norm2) - 1.0) > kNormTol) {
      warnings.push_back(fmt::format("qutrit coefficients renormalized (norm was {:.12g})", std::sqrt(norm2)));
      for (auto& c : a) c /= std::sqrt(norm2);
    }
    return {std::string(spec), Family::kQutrit, 3, 0.0, a, qutrit_family(a), warnings};
  }
  throw ParseError(fmt::format("unknown state '{}'", full_name));
}

std::vector<double> schmidt_coefficients(const PureState& psi, Subsystem party) {
  const auto& dims = psi.dims();
  const std::size_t stride = dims.stride(party);
  const std::size_t d = dims.dim(party);
  const std::size_t rest = dims.total_dim() / d;
  // Column index enumerates the other subsystems with the party digit removed.
  Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(rest));
  for (std::size_t f = 0; f < dims.total_dim(); ++f) {
    const std::size_t digit = (f / stride) % d;
    const std::size_t col = (f / (stride * d)) * stride + f % stride;
    m(static_cast<Eigen::Index>(digit), static_cast<Eigen::Index>(col)) = psi.amplitudes()[static_cast<Eigen::Index>(f)];
  }
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Matrix>(m).singularValues();
  return {sv.data(), sv.data() + sv.size()};
}

// ---- gates ----------------------------------------------------------------

GateSpec::GateSpec(std::vector<Subsystem> targets, Matrix matrix)
    : targets_(std::move(targets)), matrix_(std::move(matrix)) {
  if (targets_.empty()) throw InvalidArgument("gate needs at least one target");
  SubsystemSet seen;
  for (auto t : targets_) {
    if (t.label() < 1 || t.label() > 64) throw InvalidArgument(fmt::format("gate target {} out of range", t.label()));
    if (seen.contains(t)) throw InvalidArgument(fmt::format("gate target {} repeated", t.label()));
    seen.insert(t);
  }
  if (matrix_.rows() == 0 || matrix_.rows() != matrix_.cols()) throw InvalidArgument("gate matrix must be square");
  const Matrix defect = matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
  const double err = defect.cwiseAbs().maxCoeff();
  if (!(err <= kUnitaryTol)) throw InvalidArgument(fmt::format("gate is not unitary: max |U^dagger U - I| = {:.3e}", err));
}

GateSpec cnot(Subsystem control, Subsystem target) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
  return GateSpec({control, target}, std::move(m));
}

PureState apply_gate(const PureState& psi, const GateSpec& gate) {
  const auto& dims = psi.dims();
  std::size_t gate_dim = 1;
  for (auto t : gate.targets()) gate_dim *= dims.dim(t);
  if (static_cast<std::size_t>(gate.matrix().rows()) != gate_dim) {
    throw InvalidArgument(fmt::format("gate dimension {} does not match target dimension {}",
                                      gate.matrix().rows(), gate_dim));
  }
  return PureState(dims, kernels::parallel::apply_gate(psi.amplitudes(), dims, gate.targets(), gate.matrix()),
                   Normalization::kRenormalize);
}

// ---- random ---------------------------------------------------------------

namespace {

Vector gaussian_vector(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v[i] = {re, im};
  }
  return v;
}

Matrix mixture(std::size_t dim, std::size_t rank, std::mt19937_64& rng) {
  if (rank < 1) throw InvalidArgument("mixed state rank must be at least 1");
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(rank);
  double total = 0.0;
  for (auto& x : w) total += (x = expo(rng));
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < rank; ++r) {
    Vector v = gaussian_vector(dim, rng);
    v /= v.norm();
    m += (w[r] / total) * (v * v.adjoint());
  }
  return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

}  // namespace

PureState random_pure(const SubsystemDims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return PureState(dims, gaussian_vector(dims.total_dim(), rng), Normalization::kRenormalize);
}

DensityOperator random_mixed(const SubsystemDims& dims, std::size_t rank, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return DensityOperator(dims, mixture(dims.total_dim(), rank, rng));
}

Matrix random_unitary(std::size_t d, std::uint64_t seed) {
  if (d < 1) throw InvalidArgument("unitary dimension must be positive");
  std::mt19937_64 rng(seed);
  Matrix z(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (Eigen::Index c = 0; c < z.cols(); ++c) z.col(c) = gaussian_vector(d, rng);
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase freedom of QR so the result is Haar distributed.
  for (Eigen::Index i = 0; i < q.cols(); ++i) {
    const Complex rii = r(i, i);
    if (std::abs(rii) > 0.0) q.col(i) *= rii / std::abs(rii);
  }
  return q;
}

DensityOperator random_product_mixed(const SubsystemDims& dims, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Matrix rho = Matrix::Ones(1, 1);
  for (auto d : dims.dims()) rho = kron(rho, mixture(d, d, rng));
  return DensityOperator(dims, std::move(rho));
}

// ---- closed forms ---------------------------------------------------------

MuFamilyValues mu_family_closed_form(double mu0) {
  const double mu1 = 1.0 - mu0;
  const double g = std::sqrt(mu0 * mu1);
  const double third = 2.0 * std::sqrt(mu0 * mu1 / 3.0);
  return {2.0 * g, 2.0 * std::sqrt(2.0 * mu0 * mu1 / 3.0), third, third, third,
          4.0 / 3.0 * g, 2.0 / 3.0 * g, third};
}

QutritValues qutrit_closed_form(const std::array<Complex, 4>& a) {
  const double m0 = std::abs(a[0]), m1 = std::abs(a[1]), m2 = std::abs(a[2]), m3 = std::abs(a[3]);
  QutritValues v{};
  v.mu0a = std::sqrt(m0 * m0 + m2 * m2);
  v.mu1a = std::sqrt(m1 * m1 + m3 * m3);
  v.mu0b = std::sqrt(m0 * m0 + m1 * m1);
  v.mu1b = std::sqrt(m2 * m2 + m3 * m3);
  const double sa = v.mu0a * v.mu1a;
  const double sb = v.mu0b * v.mu1b;
  v.n_global_a = v.n_global_b = 2.0 * sa;
  v.n_3 = 2.0 * m0 * m3;
  v.n_2a = 2.0 * m0 * m1 + 2.0 * m2 * v.mu1a;
  v.n_2b = 2.0 * m0 * m2 + 2.0 * m1 * v.mu1b;
  v.e_2a = 2.0 * (m0 * m0 * m1 * m1 + m2 * m2 * v.mu1a * v.mu1a) / sa;
  v.e_3 = 2.0 * m0 * m0 * m3 * m3 / sa;
  v.e_2b = 2.0 * (m0 * m0 * m2 * m2 + m1 * m1 * v.mu1b * v.mu1b) / sb;
  v.n_ab = 2.0 * m1 * m2;
  v.n_ac = 2.0 * m0 * m1 + 2.0 * m2 * m3;
  v.n_bc = 2.0 * m1 * m3 + 2.0 * m0 * m2;
  v.e_ab = 2.0 * m2 * m2 * m1 * m1 / sa;
  v.e_ac = 2.0 * (m0 * m0 * m1 * m1 + m2 * m2 * m3 * m3) / sa;
  v.e_bc = 2.0 * (m0 * m0 * m2 * m2 + m1 * m1 * m3 * m3) / sb;
  return v;
}

// ---- table ----------------------------------------------------------------

std::string_view measure_name(TableMeasure m) {
  switch (m) {
    case TableMeasure::kNG: return "N_G";
    case TableMeasure::kN2: return "N_2";
    case TableMeasure::kN3: return "N_3";
    case TableMeasure::kE2: return "E_2";
    case TableMeasure::kE3: return "E_3";
  }
  return "?";
}

double TableCell::residual() const { return std::abs(computed - closed_form); }

std::vector<TableCell> table1(double a) {
  const double wi = 2.0 * std::sqrt(a - a * a);
  const double gf = 2.0 * std::sqrt(std::max(0.0, a - 2.0 * a * a));
  const double hf = std::sqrt(std::max(0.0, 2.0 * a * (1.0 - 2.0 * a)));
  const double w3 = 2.0 * hf;

  // closed[state][p-1] = {N_G, N_2, N_3, E_2, E_3}
  const std::array<std::array<std::array<double, 5>, 3>, 2> closed{{
      {{{wi, wi, 0.0, wi, 0.0}, {wi, wi, 0.0, wi, 0.0}, {w3, w3, 0.0, w3, 0.0}}},
      {{{gf, 0.0, gf, 0.0, gf}, {w3, gf, gf, hf, hf}, {w3, gf, gf, hf, hf}}},
  }};
  const std::array<PureState, 2> states{w_like(a), ghz_like(a)};
  const std::array<std::string, 2> names{"psiI", "psiF"};
  constexpr std::array<TableMeasure, 5> measures{TableMeasure::kNG, TableMeasure::kN2, TableMeasure::kN3,
                                                 TableMeasure::kE2, TableMeasure::kE3};

  std::vector<TableCell> cells;
  for (std::size_t p = 1; p <= 3; ++p) {
    for (std::size_t s = 0; s < 2; ++s) {
      const auto r = partial_kway_negativities(pure_to_density(states[s]), Subsystem{p});
      const std::array<double, 5> got{r.n_global, r.n_kway.at(2), r.n_kway.at(3), r.e_kway.at(2), r.e_kway.at(3)};
      for (std::size_t m = 0; m < 5; ++m) cells.push_back({names[s], p, measures[m], got[m], closed[s][p - 1][m]});
    }
  }
  return cells;
}

}  // namespace kwayneg
