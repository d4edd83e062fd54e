#pragma once

#include <string>
#include <vector>

#include "kwayneg/catalog.hpp"
#include "kwayneg/multistate.hpp"

namespace kwayneg::cli {

enum class Status { kPass, kFail, kNotApplicable };

struct CheckResult {
  std::string name;
  Status status = Status::kPass;
  double value = 0.0;      // residual, or lhs - rhs for inequalities
  double tolerance = 0.0;
  std::string detail;
};

struct CheckContext {
  const DensityOperator* rho = nullptr;
  const PureState* pure = nullptr;        // set when the input is a pure state
  const NamedState* named = nullptr;      // set when the input came from --named
  std::vector<Subsystem> parties;
  double zero_tol = 1e-10;
  double identity_tol = 1e-9;
};

/// Structural identities for every input, plus closed-form comparisons for
/// named families.
std::vector<CheckResult> run_checks(const CheckContext& ctx);

}  // namespace kwayneg::cli
