#include "output.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "kwayneg/state_json.hpp"

namespace kwayneg::cli {

namespace {

constexpr std::string_view kHeuristicNote = "measures computed on heuristic canonical representative";

std::string_view status_name(Status s) {
  switch (s) {
    case Status::kPass: return "PASS";
    case Status::kFail: return "FAIL";
    case Status::kNotApplicable: return "n/a";
  }
  return "?";
}

// CSV field quoting for names that may carry commas.
std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

Json report_json(const NegativityReport& r, const std::vector<std::size_t>& ks) {
  Json j = to_json(r);
  for (const char* key : {"N_K", "E_K", "nu_K"}) {
    Json kept = Json::object();
    for (auto k : ks) {
      const auto name = std::to_string(k);
      if (j[key].contains(name)) kept[name] = j[key][name];
    }
    j[key] = kept;
  }
  return j;
}

Json reports_json(const std::vector<NegativityReport>& reports, const std::vector<std::size_t>& ks) {
  Json arr = Json::array();
  for (const auto& r : reports) arr.push_back(report_json(r, ks));
  return arr;
}

Json nu_json(const NuProfile& p, const std::vector<std::size_t>& ks) {
  Json nuk = Json::object();
  for (auto k : ks) {
    if (p.nu_kway.count(k)) nuk[std::to_string(k)] = p.nu_kway.at(k);
  }
  return {{"subsystem", p.party.label()}, {"nu_G", p.nu_global}, {"nu_K", nuk}, {"nu", p.total()}};
}

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(Json::array({round12(m(r, c).real()), round12(m(r, c).imag())}));
    rows.push_back(row);
  }
  return rows;
}

void text_reports(std::ostream& os, const std::vector<NegativityReport>& reports, const std::vector<std::size_t>& ks) {
  for (const auto& r : reports) {
    os << fmt::format("subsystem {} (d_p = {})\n", r.party.label(), r.party_dim);
    os << fmt::format("  N_G  {}\n", num(r.n_global));
    for (auto k : ks) os << fmt::format("  N_{}  {}\n", k, num(r.n_kway.at(k)));
    for (auto k : ks) os << fmt::format("  E_{}  {}\n", k, num(r.e_kway.at(k)));
    os << fmt::format("  E_0  {}\n", num(r.e_zero));
    os << fmt::format("  nu_G {}\n", r.nu_global);
    for (auto k : ks) os << fmt::format("  nu_{} {}\n", k, r.nu_kway.at(k));
  }
}

void csv_reports(std::ostream& os, const std::vector<NegativityReport>& reports, const std::vector<std::size_t>& ks) {
  os << "subsystem,d_p,N_G";
  for (auto k : ks) os << ",N_" << k;
  for (auto k : ks) os << ",E_" << k;
  os << ",E_0,nu_G";
  for (auto k : ks) os << ",nu_" << k;
  os << '\n';
  for (const auto& r : reports) {
    os << r.party.label() << ',' << r.party_dim << ',' << num(r.n_global);
    for (auto k : ks) os << ',' << num(r.n_kway.at(k));
    for (auto k : ks) os << ',' << num(r.e_kway.at(k));
    os << ',' << num(r.e_zero) << ',' << r.nu_global;
    for (auto k : ks) os << ',' << r.nu_kway.at(k);
    os << '\n';
  }
}

}  // namespace

std::string num(double x) {
  if (x == 0.0) x = 0.0;
  return fmt::format("{:.12g}", x);
}

void write_reports(std::ostream& os, Format f, std::string_view source, const std::vector<NegativityReport>& reports,
                   const std::vector<std::size_t>& ks) {
  switch (f) {
    case Format::kJson:
      os << Json{{"source", source}, {"reports", reports_json(reports, ks)}}.dump(2) << '\n';
      break;
    case Format::kCsv:
      csv_reports(os, reports, ks);
      break;
    case Format::kText:
      os << "state: " << source << '\n';
      text_reports(os, reports, ks);
      break;
  }
}

void write_table(std::ostream& os, Format f, double a, const std::vector<TableCell>& cells) {
  switch (f) {
    case Format::kJson: {
      Json arr = Json::array();
      for (const auto& c : cells) {
        arr.push_back({{"state", c.state},
                       {"p", c.p},
                       {"measure", measure_name(c.measure)},
                       {"computed", round12(c.computed)},
                       {"closed_form", round12(c.closed_form)},
                       {"residual", round12(c.residual())}});
      }
      os << Json{{"a", round12(a)}, {"cells", arr}}.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      os << "state,p,measure,computed,closed_form,residual\n";
      for (const auto& c : cells) {
        os << c.state << ',' << c.p << ',' << measure_name(c.measure) << ',' << num(c.computed) << ','
           << num(c.closed_form) << ',' << num(c.residual()) << '\n';
      }
      break;
    case Format::kText:
      os << fmt::format("a = {}\n", num(a));
      os << fmt::format("{:<6} {:>2} {:<4} {:>20} {:>20} {:>12}\n", "state", "p", "", "computed", "closed form",
                        "residual");
      for (const auto& c : cells) {
        os << fmt::format("{:<6} {:>2} {:<4} {:>20} {:>20} {:>12.3e}\n", c.state, c.p, measure_name(c.measure),
                          num(c.computed), num(c.closed_form), c.residual());
      }
      break;
  }
}

void write_checks(std::ostream& os, Format f, std::string_view source, const std::vector<CheckResult>& checks) {
  const auto failed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.status == Status::kFail; });
  const auto skipped =
      std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.status == Status::kNotApplicable; });
  switch (f) {
    case Format::kJson: {
      Json arr = Json::array();
      for (const auto& c : checks) {
        Json j{{"name", c.name}, {"status", status_name(c.status)}};
        if (c.status != Status::kNotApplicable) {
          j["value"] = round12(c.value);
          j["tolerance"] = c.tolerance;
        }
        if (!c.detail.empty()) j["detail"] = c.detail;
        arr.push_back(j);
      }
      os << Json{{"source", source}, {"passed", failed == 0}, {"checks", arr}}.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      os << "name,status,value,tolerance,detail\n";
      for (const auto& c : checks) {
        os << csv_field(c.name) << ',' << status_name(c.status) << ','
           << (c.status == Status::kNotApplicable ? "" : num(c.value)) << ','
           << (c.status == Status::kNotApplicable ? "" : num(c.tolerance)) << ',' << csv_field(c.detail) << '\n';
      }
      break;
    case Format::kText:
      os << "state: " << source << '\n';
      for (const auto& c : checks) {
        if (c.status == Status::kNotApplicable) {
          os << fmt::format("{:<4}  {:<46} ({})\n", status_name(c.status), c.name, c.detail);
        } else {
          os << fmt::format("{:<4}  {:<46} {:>10.3e} <= {:.0e}{}\n", status_name(c.status), c.name, c.value,
                            c.tolerance, c.detail.empty() ? "" : "  " + c.detail);
        }
      }
      os << fmt::format("{} checks, {} failed, {} not applicable\n", checks.size(), failed, skipped);
      break;
  }
}

void write_nu(std::ostream& os, Format f, std::string_view source, const std::vector<NuProfile>& profiles,
              const std::vector<GhzProjection>& projections, const std::vector<std::size_t>& ks) {
  switch (f) {
    case Format::kJson: {
      Json arr = Json::array();
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        Json j = nu_json(profiles[i], ks);
        if (i < projections.size()) {
          const auto& g = projections[i];
          Json gj{{"matched", g.matched}};
          if (g.matched) {
            Json pairs = Json::array();
            for (const auto& pr : g.pairs) pairs.push_back({{"first", pr.first}, {"second", pr.second}});
            gj["pairs"] = pairs;
            gj["N_N"] = round12(g.n_way);
            gj["predicted"] = round12(g.predicted);
            gj["residual"] = round12(g.residual());
          }
          j["ghz_projection"] = gj;
        }
        arr.push_back(j);
      }
      os << Json{{"source", source}, {"profiles", arr}}.dump(2) << '\n';
      break;
    }
    case Format::kCsv:
      os << "subsystem,nu_G";
      for (auto k : ks) os << ",nu_" << k;
      os << ",nu,ghz_matched,N_N,predicted\n";
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        os << p.party.label() << ',' << p.nu_global;
        for (auto k : ks) os << ',' << p.nu_kway.at(k);
        os << ',' << p.total();
        if (i < projections.size() && projections[i].matched) {
          os << ",true," << num(projections[i].n_way) << ',' << num(projections[i].predicted) << '\n';
        } else {
          os << (i < projections.size() ? ",false,," : ",,,") << '\n';
        }
      }
      break;
    case Format::kText:
      os << "state: " << source << '\n';
      for (std::size_t i = 0; i < profiles.size(); ++i) {
        const auto& p = profiles[i];
        os << fmt::format("subsystem {}: nu_G = {}", p.party.label(), p.nu_global);
        for (auto k : ks) os << fmt::format(", nu_{} = {}", k, p.nu_kway.at(k));
        os << fmt::format(", nu = {}\n", p.total());
        if (i < projections.size()) {
          const auto& g = projections[i];
          if (g.matched) {
            os << fmt::format("  GHZ-like pairs: {}, N_N = {}, 2 sum |a||b| = {}\n", g.pairs.size(), num(g.n_way),
                              num(g.predicted));
          } else {
            os << "  GHZ-like pairs: no match\n";
          }
        }
      }
      break;
  }
}

void write_canonical(std::ostream& os, Format f, std::string_view source, const CanonicalSearchResult& r,
                     const std::vector<NegativityReport>& reports, const std::vector<std::size_t>& ks) {
  switch (f) {
    case Format::kJson: {
      Json us = Json::array();
      for (const auto& u : r.unitaries) us.push_back(matrix_json(u));
      Json before = Json::array(), after = Json::array();
      for (const auto& p : r.nu_before) before.push_back(nu_json(p, ks));
      for (const auto& p : r.nu_after) after.push_back(nu_json(p, ks));
      os << Json{{"source", source},
                 {"heuristic", r.heuristic},
                 {"note", kHeuristicNote},
                 {"input_lbps", r.input_lbps},
                 {"best_lbps", r.best_lbps},
                 {"best_restart", r.best_restart},
                 {"evaluations", r.iterations},
                 {"converged", r.converged},
                 {"best_state", to_json(r.best_state)},
                 {"unitaries", us},
                 {"nu_before", before},
                 {"nu_after", after},
                 {"reports", reports_json(reports, ks)}}
                .dump(2)
         << '\n';
      break;
    }
    case Format::kCsv:
      os << "key,value\n";
      os << "input_lbps," << r.input_lbps << '\n';
      os << "best_lbps," << r.best_lbps << '\n';
      os << "best_restart," << r.best_restart << '\n';
      os << "evaluations," << r.iterations << '\n';
      os << "converged," << (r.converged ? "true" : "false") << '\n';
      os << "note," << csv_field(kHeuristicNote) << '\n';
      csv_reports(os, reports, ks);
      break;
    case Format::kText:
      os << "state: " << source << '\n';
      os << fmt::format("LBPS: {} -> {} (restart {}, {} evaluations, {})\n", r.input_lbps, r.best_lbps,
                        r.best_restart, r.iterations, r.converged ? "converged" : "evaluation budget reached");
      os << "note: " << kHeuristicNote << '\n';
      for (Eigen::Index i = 0; i < r.best_state.amplitudes().size(); ++i) {
        const Complex z = r.best_state.amplitudes()[i];
        if (std::abs(z) <= kLbpsThreshold) continue;
        std::string label;
        for (auto d : r.best_state.dims().decode(static_cast<std::size_t>(i)).digits) label += std::to_string(d);
        os << fmt::format("  |{}>  {} {:+.12g}i\n", label, num(z.real()), z.imag() == 0.0 ? 0.0 : z.imag());
      }
      text_reports(os, reports, ks);
      break;
  }
}

}  // namespace kwayneg::cli
