#include "kwayneg/cli.hpp"

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "checks.hpp"
#include "kwayneg/canonical.hpp"
#include "kwayneg/catalog.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/state_json.hpp"
#include "output.hpp"

namespace kwayneg::cli {

namespace {

struct RunConfig {
  std::string named;
  std::string state_path;
  std::string random_pure;
  std::string random_mixed;
  std::size_t rank = 2;
  bool renormalize = false;
  std::string subsystems = "all";
  std::string ks = "all";
  std::string format = "text";
  double zero_tol = kZeroTol;
  double identity_tol = 1e-9;
  std::uint64_t seed = 0;
  std::size_t restarts = 50;
  double a = 0.0;
  std::string dump_state;
};

struct Input {
  std::string source;
  std::optional<NamedState> named;
  std::optional<PureState> pure;
  std::optional<DensityOperator> rho;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Format parse_format(const std::string& s) {
  if (s == "json") return Format::kJson;
  if (s == "csv") return Format::kCsv;
  return Format::kText;
}

std::vector<std::size_t> parse_list(const std::string& text, std::size_t lo, std::size_t hi, std::string_view what) {
  std::vector<std::size_t> out;
  if (text == "all") {
    for (std::size_t v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad {} '{}'", what, item));
    }
    if (pos != item.size() || v < lo || v > hi) {
      throw UsageError(fmt::format("{} '{}' outside [{}, {}]", what, item, lo, hi));
    }
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  if (out.empty()) throw UsageError(fmt::format("empty {} selection", what));
  std::sort(out.begin(), out.end());
  return out;
}

SubsystemDims parse_dims(const std::string& text) {
  std::vector<std::size_t> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &pos);
    } catch (const std::exception&) {
      throw UsageError(fmt::format("bad dimension '{}'", item));
    }
    if (pos != item.size()) throw UsageError(fmt::format("bad dimension '{}'", item));
    dims.push_back(v);
  }
  try {
    return SubsystemDims(std::move(dims));
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open state file '{}'", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Input load_input(const RunConfig& cfg, std::ostream& err) {
  const int sources = !cfg.named.empty() + !cfg.state_path.empty() + !cfg.random_pure.empty() + !cfg.random_mixed.empty();
  if (sources != 1) {
    throw UsageError("exactly one input source is required: --named, --state, --random-pure or --random-mixed");
  }
  Input in;
  if (!cfg.named.empty()) {
    in.named = build_named(cfg.named);
    for (const auto& w : in.named->warnings) err << "warning: " << w << '\n';
    in.source = cfg.named;
    in.pure = in.named->state;
  } else if (!cfg.state_path.empty()) {
    in.source = cfg.state_path;
    auto loaded = parse_state_json(read_file(cfg.state_path),
                                   cfg.renormalize ? Normalization::kRenormalize : Normalization::kStrict);
    if (auto* psi = std::get_if<PureState>(&loaded)) {
      in.pure = *psi;
    } else {
      in.rho = std::get<DensityOperator>(loaded);
      in.rho->check_positive();
    }
  } else if (!cfg.random_pure.empty()) {
    in.source = fmt::format("random-pure {} seed {}", cfg.random_pure, cfg.seed);
    in.pure = random_pure(parse_dims(cfg.random_pure), cfg.seed);
  } else {
    if (cfg.rank < 1) throw UsageError("--rank must be at least 1");
    in.source = fmt::format("random-mixed {} rank {} seed {}", cfg.random_mixed, cfg.rank, cfg.seed);
    in.rho = random_mixed(parse_dims(cfg.random_mixed), cfg.rank, cfg.seed);
  }
  if (!in.rho) in.rho = pure_to_density(*in.pure);

  if (!cfg.dump_state.empty()) {
    std::ofstream out(cfg.dump_state, std::ios::binary);
    if (!out) throw UsageError(fmt::format("cannot write '{}'", cfg.dump_state));
    out << (in.pure ? to_json(*in.pure) : to_json(*in.rho)).dump(2) << '\n';
  }
  return in;
}

std::vector<Subsystem> selected_parties(const RunConfig& cfg, const SubsystemDims& dims) {
  std::vector<Subsystem> out;
  for (auto v : parse_list(cfg.subsystems, 1, dims.count(), "subsystem")) out.emplace_back(v);
  return out;
}

std::vector<std::size_t> selected_ks(const RunConfig& cfg, const SubsystemDims& dims) {
  if (dims.count() < 2) return {};
  return parse_list(cfg.ks, 2, dims.count(), "K");
}

// Per-subsystem work runs concurrently; results land in subsystem order.
template <class T, class F>
std::vector<T> per_party(const std::vector<Subsystem>& parties, F&& work) {
  std::vector<std::optional<T>> slots(parties.size());
  std::vector<std::exception_ptr> errors(parties.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(parties.size()); ++i) {
    try {
      slots[static_cast<std::size_t>(i)].emplace(work(parties[static_cast<std::size_t>(i)]));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void add_input_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--named", cfg.named, "Named state, e.g. ghz3, w3, eq9:mu0=0.5, psiI:a=0.4, qutrit:0.5,0.5,0.5,0.5");
  cmd->add_option("--state", cfg.state_path, "State JSON file");
  cmd->add_option("--random-pure", cfg.random_pure, "Random pure state on comma-separated dims, e.g. 2,2,2");
  cmd->add_option("--random-mixed", cfg.random_mixed, "Random mixed state on comma-separated dims");
  cmd->add_option("--rank", cfg.rank, "Rank of --random-mixed")->check(CLI::PositiveNumber);
  cmd->add_flag("--renormalize", cfg.renormalize, "Renormalize pure states read with --state");
  cmd->add_option("--seed", cfg.seed, "Seed for random states and restarts");
  cmd->add_option("--subsystem", cfg.subsystems, "Subsystem (1-based), comma list, or 'all'");
  cmd->add_option("--k", cfg.ks, "K value(s) to report, or 'all'");
  cmd->add_option("--zero-tol", cfg.zero_tol, "Eigenvalues below -zero-tol count as negative")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dump-state", cfg.dump_state, "Also write the input state as JSON to this path");
}

void add_format(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
}

int dispatch(CLI::App* analyze, CLI::App* table, CLI::App* verify, CLI::App* canon, CLI::App* nu,
             const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Format fmt_out = parse_format(cfg.format);

  if (table->parsed()) {
    if (!w_like_in_range(cfg.a)) err << fmt::format("warning: a = {} is outside [1/3, 1/2]\n", cfg.a);
    if (!(cfg.a >= 0.0 && cfg.a <= 0.5)) throw UsageError(fmt::format("a = {} outside [0, 1/2]", cfg.a));
    write_table(out, fmt_out, cfg.a, table1(cfg.a));
    return kOk;
  }

  const Input in = load_input(cfg, err);
  const DensityOperator& rho = *in.rho;
  const auto parties = selected_parties(cfg, rho.dims());
  const auto ks = selected_ks(cfg, rho.dims());
  if (rho.dims().count() < 2) throw UsageError("negativities need at least two subsystems");

  if (analyze->parsed()) {
    const auto reports = per_party<NegativityReport>(
        parties, [&](Subsystem p) { return partial_kway_negativities(rho, p, cfg.zero_tol); });
    write_reports(out, fmt_out, in.source, reports, ks);
    return kOk;
  }
  if (verify->parsed()) {
    CheckContext ctx;
    ctx.rho = &rho;
    ctx.pure = in.pure ? &*in.pure : nullptr;
    ctx.named = in.named ? &*in.named : nullptr;
    ctx.parties = parties;
    ctx.zero_tol = cfg.zero_tol;
    ctx.identity_tol = cfg.identity_tol;
    const auto checks = run_checks(ctx);
    write_checks(out, fmt_out, in.source, checks);
    const bool ok = std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == Status::kFail; });
    return ok ? kOk : kVerificationFailed;
  }
  if (nu->parsed()) {
    const auto profiles = per_party<NuProfile>(parties, [&](Subsystem p) { return nu_profile(rho, p, cfg.zero_tol); });
    std::vector<GhzProjection> projections;
    if (in.pure) {
      for (auto p : parties) projections.push_back(ghz_projection_check(*in.pure, p));
    }
    write_nu(out, fmt_out, in.source, profiles, projections, ks);
    return kOk;
  }
  if (canon->parsed()) {
    if (!in.pure) throw UsageError("canonicalize needs a pure state");
    CanonicalOptions opt;
    opt.restarts = cfg.restarts;
    opt.seed = cfg.seed;
    const auto result = heuristic_canonicalize(*in.pure, opt);
    const DensityOperator best = pure_to_density(result.best_state);
    const auto reports = per_party<NegativityReport>(
        parties, [&](Subsystem p) { return partial_kway_negativities(best, p, cfg.zero_tol); });
    write_canonical(out, fmt_out, in.source, result, reports, ks);
    return kOk;
  }
  throw UsageError("no command given");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Global, K-way and subset partial transposes and negativities of multipartite states"};
  app.require_subcommand(1, 1);

  auto* analyze = app.add_subcommand("analyze", "Negativity report per subsystem");
  auto* table = app.add_subcommand("table1", "Negativity table of the W-like state and its CNOT image");
  auto* verify = app.add_subcommand("verify", "Run identity and closed-form checks");
  auto* canon = app.add_subcommand("canonicalize", "Heuristic local-unitary search for fewer product terms");
  auto* nu = app.add_subcommand("nu", "Negative-eigenvalue counts of the K-way transposes");

  for (auto* cmd : {analyze, verify, canon, nu}) {
    add_input_options(cmd, cfg);
    add_format(cmd, cfg);
  }
  verify->add_option("--identity-tol", cfg.identity_tol, "Tolerance for closed-form comparisons")
      ->check(CLI::PositiveNumber);
  canon->add_option("--restarts", cfg.restarts, "Number of search restarts")->check(CLI::PositiveNumber);
  table->add_option("--a", cfg.a, "Parameter a of the W-like family")->required();
  add_format(table, cfg);

  std::ostringstream buffer;
  try {
    app.parse(argc, argv);
    const int code = dispatch(analyze, table, verify, canon, nu, cfg, buffer, err);
    out << buffer.str();
    return code;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInputError;
  } catch (const InvariantViolation& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kInvariantViolated;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace kwayneg::cli
