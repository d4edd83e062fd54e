#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kwayneg/multistate.hpp"

namespace kwayneg {

inline constexpr double kUnitaryTol = 1e-10;

// ---- named states ---------------------------------------------------------

PureState ghz(std::size_t n);
PureState w_state(std::size_t n);

/// sqrt(mu0)|000> + sqrt(1-mu0) (|110> + |101> + |111>)/sqrt(3), mu0 in [0, 1].
PureState mu_family(double mu0);

/// sqrt(a)|100> + sqrt(a)|010> + sqrt(1-2a)|001>
PureState w_like(double a);

/// sqrt(a)|010> + sqrt(a)|110> + sqrt(1-2a)|001>
PureState ghz_like(double a);

/// a0|000> + a1|101> + a2|011> + a3|112> on dims (2,2,3).
PureState qutrit_family(const std::array<Complex, 4>& a);

/// True when a lies in [1/3, 1/2], the range the W-like family is studied on.
bool w_like_in_range(double a);

enum class Family { kGhz, kW, kMu, kWLike, kGhzLike, kQutrit };

struct NamedState {
  std::string spec;
  Family family = Family::kGhz;
  std::size_t n = 0;                    // ghz, w
  double parameter = 0.0;               // mu0 or a
  std::array<Complex, 4> coefficients{};  // qutrit, after renormalization
  PureState state;
  std::vector<std::string> warnings;
};

/// Parses `name[:k=v,...]`:
///   ghz3, ghz:n=4, w3, w:n=4, eq9:mu0=0.5, psiI:a=0.4, psiF:a=0.4,
///   qutrit:0.5,0.5,0.5,0.5 or qutrit:a0=...,a1=...,a2=...,a3=...
/// Qutrit coefficients may be complex, written as `x+yi`. Throws ParseError.
NamedState build_named(std::string_view spec);

/// Schmidt coefficients of the split (party | rest), descending.
std::vector<double> schmidt_coefficients(const PureState& psi, Subsystem party);

// ---- gates ----------------------------------------------------------------

/// A unitary acting on an ordered list of target subsystems. The gate's own
/// basis is row-major over `targets` in the listed order.
class GateSpec {
 public:
  GateSpec(std::vector<Subsystem> targets, Matrix matrix);

  const std::vector<Subsystem>& targets() const { return targets_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  std::vector<Subsystem> targets_;
  Matrix matrix_;
};

/// Controlled-NOT on two qubits.
GateSpec cnot(Subsystem control, Subsystem target);

/// Throws InvalidArgument if targets are out of range or the gate dimension
/// does not match the product of the target dimensions.
PureState apply_gate(const PureState& psi, const GateSpec& gate);

// ---- random states --------------------------------------------------------

/// Independent standard complex normal amplitudes, normalized.
PureState random_pure(const SubsystemDims& dims, std::uint64_t seed);

/// Convex mixture of `rank` random pure projectors, weights uniform on the simplex.
DensityOperator random_mixed(const SubsystemDims& dims, std::size_t rank, std::uint64_t seed);

/// Haar-distributed d x d unitary.
Matrix random_unitary(std::size_t d, std::uint64_t seed);

/// Tensor product of independent random single-subsystem mixed states.
DensityOperator random_product_mixed(const SubsystemDims& dims, std::uint64_t seed);

// ---- closed forms ---------------------------------------------------------

struct MuFamilyValues {
  double n_global, n_2, n_3, n_ab, n_ac, e_2, e_3, measured_pair;
};
MuFamilyValues mu_family_closed_form(double mu0);

struct QutritValues {
  double mu0a, mu1a, mu0b, mu1b;
  double n_global_a, n_global_b;
  double n_3, n_2a, n_2b;
  double e_2a, e_3, e_2b;
  double n_ab, n_ac, n_bc;
  double e_ab, e_ac, e_bc;
};
QutritValues qutrit_closed_form(const std::array<Complex, 4>& a);

// ---- table ----------------------------------------------------------------

enum class TableMeasure { kNG, kN2, kN3, kE2, kE3 };
std::string_view measure_name(TableMeasure m);

struct TableCell {
  std::string state;  // "psiI" or "psiF"
  std::size_t p = 1;
  TableMeasure measure = TableMeasure::kNG;
  double computed = 0.0;
  double closed_form = 0.0;
  double residual() const;
};

/// Global, 2-way and 3-way negativities plus E_2, E_3 of w_like(a) and
/// ghz_like(a), for each of the three subsystems: 30 cells, rows ordered by
/// p, then state, then measure.
std::vector<TableCell> table1(double a);

}  // namespace kwayneg
