#include "kwayneg/state_json.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>

namespace kwayneg {

namespace {

using nlohmann::json;

const json& member(const json& obj, const char* key, std::string_view where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(fmt::format("{}: missing \"{}\"", where, key));
  return *it;
}

double real_field(const json& obj, const char* key, std::string_view where, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) throw ParseError(fmt::format("{}: missing \"{}\"", where, key));
    return 0.0;
  }
  if (!it->is_number()) throw ParseError(fmt::format("{}: \"{}\" must be a number", where, key));
  const double v = it->get<double>();
  if (!std::isfinite(v)) throw ParseError(fmt::format("{}: \"{}\" is not finite", where, key));
  return v;
}

SubsystemDims read_dims(const json& doc) {
  const json& d = member(doc, "dims", "state");
  if (!d.is_array() || d.empty()) throw ParseError("state: \"dims\" must be a nonempty array");
  std::vector<std::size_t> dims;
  for (const auto& v : d) {
    if (!v.is_number_integer() || v.get<long long>() < 2) {
      throw ParseError(fmt::format("state: every dimension must be an integer >= 2, got {}", v.dump()));
    }
    dims.push_back(v.get<std::size_t>());
  }
  try {
    return SubsystemDims(std::move(dims));
  } catch (const InvalidArgument& e) {
    throw ParseError(fmt::format("state: {}", e.what()));
  }
}

std::size_t read_index(const json& v, const SubsystemDims& dims, std::string_view where) {
  if (!v.is_array() || v.size() != dims.count()) {
    throw ParseError(fmt::format("{}: index must be an array of {} integers", where, dims.count()));
  }
  MultiIndex idx;
  for (std::size_t m = 0; m < dims.count(); ++m) {
    const auto& e = v[m];
    if (!e.is_number_integer() || e.get<long long>() < 0 ||
        e.get<unsigned long long>() >= dims.dims()[m]) {
      throw ParseError(fmt::format("{}: digit {} of {} is out of range", where, m + 1, v.dump()));
    }
    idx.digits.push_back(e.get<std::size_t>());
  }
  return dims.encode(idx);
}

Json index_json(const SubsystemDims& dims, std::size_t flat) {
  Json a = Json::array();
  for (auto d : dims.decode(flat).digits) a.push_back(d);
  return a;
}

Json dims_json(const SubsystemDims& dims) {
  Json a = Json::array();
  for (auto d : dims.dims()) a.push_back(d);
  return a;
}

Json entries_json(const SubsystemDims& dims, const Matrix& m) {
  Json entries = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c <= r; ++c) {
      const Complex z = m(r, c);
      if (z == Complex{0.0, 0.0}) continue;
      entries.push_back({{"row", index_json(dims, static_cast<std::size_t>(r))},
                         {"col", index_json(dims, static_cast<std::size_t>(c))},
                         {"re", z.real()},
                         {"im", z.imag()}});
    }
  }
  return entries;
}

std::string_view kind_name(TransposeProvenance::Kind k) {
  switch (k) {
    case TransposeProvenance::Kind::kGlobal: return "global";
    case TransposeProvenance::Kind::kKWay: return "kway";
    case TransposeProvenance::Kind::kSubset: return "subset";
  }
  return "?";
}

}  // namespace

double round12(double x) {
  if (!std::isfinite(x)) return x;
  const double r = std::strtod(fmt::format("{:.12g}", x).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;  // drop the sign of zero
}

LoadedState parse_state_json(std::string_view text, Normalization mode) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("malformed JSON at byte {}: {}", e.byte, e.what()), e.byte);
  }
  if (!doc.is_object()) throw ParseError("state: top level must be an object");
  const SubsystemDims dims = read_dims(doc);
  const bool has_pure = doc.contains("pure");
  const bool has_mixed = doc.contains("mixed");
  if (has_pure == has_mixed) throw ParseError("state: exactly one of \"pure\" or \"mixed\" is required");
  const auto n = static_cast<Eigen::Index>(dims.total_dim());

  if (has_pure) {
    const json& amps = member(doc["pure"], "amplitudes", "pure");
    if (!amps.is_array()) throw ParseError("pure: \"amplitudes\" must be an array");
    Vector v = Vector::Zero(n);
    std::vector<bool> seen(dims.total_dim(), false);
    for (std::size_t i = 0; i < amps.size(); ++i) {
      const std::string where = fmt::format("pure.amplitudes[{}]", i);
      const json& a = amps[i];
      if (!a.is_object()) throw ParseError(where + ": must be an object");
      const std::size_t f = read_index(member(a, "index", where), dims, where);
      if (seen[f]) throw ParseError(where + ": index listed twice");
      seen[f] = true;
      v[static_cast<Eigen::Index>(f)] = {real_field(a, "re", where, true), real_field(a, "im", where, false)};
    }
    return PureState(dims, std::move(v), mode);
  }

  const json& entries = member(doc["mixed"], "entries", "mixed");
  if (!entries.is_array()) throw ParseError("mixed: \"entries\" must be an array");
  Matrix m = Matrix::Zero(n, n);
  std::vector<bool> seen(dims.total_dim() * dims.total_dim(), false);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = fmt::format("mixed.entries[{}]", i);
    const json& e = entries[i];
    if (!e.is_object()) throw ParseError(where + ": must be an object");
    const std::size_t r = read_index(member(e, "row", where), dims, where + ".row");
    const std::size_t c = read_index(member(e, "col", where), dims, where + ".col");
    if (r < c) throw ParseError(where + ": entries must have row >= col in flat order");
    if (seen[r * dims.total_dim() + c]) throw ParseError(where + ": entry listed twice");
    seen[r * dims.total_dim() + c] = true;
    const Complex z{real_field(e, "re", where, true), real_field(e, "im", where, false)};
    const auto ri = static_cast<Eigen::Index>(r);
    const auto ci = static_cast<Eigen::Index>(c);
    m(ri, ci) = z;
    if (r != c) m(ci, ri) = std::conj(z);
  }
  return DensityOperator(dims, std::move(m));
}

DensityOperator as_density(const LoadedState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) return pure_to_density(*psi);
  return std::get<DensityOperator>(state);
}

Json to_json(const PureState& psi) {
  Json amps = Json::array();
  for (Eigen::Index f = 0; f < psi.amplitudes().size(); ++f) {
    const Complex z = psi.amplitudes()[f];
    if (z == Complex{0.0, 0.0}) continue;
    amps.push_back({{"index", index_json(psi.dims(), static_cast<std::size_t>(f))}, {"re", z.real()}, {"im", z.imag()}});
  }
  return {{"dims", dims_json(psi.dims())}, {"pure", {{"amplitudes", amps}}}};
}

Json to_json(const DensityOperator& rho) {
  return {{"dims", dims_json(rho.dims())}, {"mixed", {{"entries", entries_json(rho.dims(), rho.matrix())}}}};
}

Json to_json(const TransposedOperator& t) {
  const auto& how = t.provenance();
  Json prov{{"subsystem", how.party.label()}, {"kind", kind_name(how.kind)}};
  if (how.kind == TransposeProvenance::Kind::kKWay) prov["k"] = how.k;
  if (how.kind == TransposeProvenance::Kind::kSubset) {
    Json s = Json::array();
    for (auto q : how.subset.members()) s.push_back(q.label());
    prov["subset"] = s;
  }
  return {{"dims", dims_json(t.dims())},
          {"mixed", {{"entries", entries_json(t.dims(), t.matrix())}}},
          {"provenance", prov}};
}

Json to_json(const NegativityReport& r) {
  Json nk = Json::object(), ek = Json::object(), nuk = Json::object();
  for (const auto& [k, v] : r.n_kway) nk[std::to_string(k)] = round12(v);
  for (const auto& [k, v] : r.e_kway) ek[std::to_string(k)] = round12(v);
  for (const auto& [k, v] : r.nu_kway) nuk[std::to_string(k)] = v;
  return {{"subsystem", r.party.label()},
          {"d_p", r.party_dim},
          {"N_G", round12(r.n_global)},
          {"N_K", nk},
          {"E_K", ek},
          {"E_0", round12(r.e_zero)},
          {"nu_K", nuk},
          {"nu_G", r.nu_global}};
}

}  // namespace kwayneg
