#pragma once

#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "kwayneg/multistate.hpp"
#include "kwayneg/negativity.hpp"
#include "kwayneg/ptranspose.hpp"

namespace kwayneg {

using Json = nlohmann::ordered_json;
using LoadedState = std::variant<PureState, DensityOperator>;

/// Parses the state schema:
///   {"dims":[...], "pure":{"amplitudes":[{"index":[...],"re":x,"im":y},...]}}
///   {"dims":[...], "mixed":{"entries":[{"row":[...],"col":[...],"re":x,"im":y},...]}}
/// Omitted amplitudes/entries are zero; mixed entries are the lower triangle
/// (row >= col in flat order) and the upper triangle is implied.
/// Syntax and schema problems throw ParseError (with a byte offset for syntax
/// errors); a well-formed state that breaks a physical invariant throws
/// InvariantViolation.
LoadedState parse_state_json(std::string_view text, Normalization mode = Normalization::kStrict);

DensityOperator as_density(const LoadedState& state);

/// Full-precision dumps, readable by parse_state_json.
Json to_json(const PureState& psi);
Json to_json(const DensityOperator& rho);
Json to_json(const TransposedOperator& t);

/// Reports use 12 significant digits and a fixed field order.
Json to_json(const NegativityReport& report);

/// Rounds to 12 significant digits.
double round12(double x);

}  // namespace kwayneg
