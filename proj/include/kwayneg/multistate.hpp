#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "kwayneg/errors.hpp"

namespace kwayneg {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kLbpsThreshold = 1e-8;
inline constexpr double kOutcomeProbabilityFloor = 1e-14;

/// A subsystem label, 1-based: Subsystem{1} is the most significant factor
/// of the composite space.
class Subsystem {
 public:
  constexpr explicit Subsystem(std::size_t label) : label_(label) {}

  constexpr std::size_t label() const { return label_; }
  constexpr std::size_t offset() const { return label_ - 1; }

  auto operator<=>(const Subsystem&) const = default;

 private:
  std::size_t label_;
};

/// A set of subsystems stored as a bitmask over zero-based offsets.
class SubsystemSet {
 public:
  SubsystemSet() = default;
  SubsystemSet(std::initializer_list<Subsystem> parties);
  explicit SubsystemSet(std::span<const Subsystem> parties);

  static SubsystemSet from_mask(std::uint64_t mask) {
    SubsystemSet s;
    s.mask_ = mask;
    return s;
  }
  static SubsystemSet all(std::size_t n);

  void insert(Subsystem p);
  bool contains(Subsystem p) const;
  std::size_t size() const;
  bool empty() const { return mask_ == 0; }
  std::uint64_t mask() const { return mask_; }
  std::vector<Subsystem> members() const;

  bool operator==(const SubsystemSet&) const = default;

 private:
  std::uint64_t mask_ = 0;
};

/// Basis label |i_1 ... i_N> with 0 <= i_m < d_m.
struct MultiIndex {
  std::vector<std::size_t> digits;

  bool operator==(const MultiIndex&) const = default;
};

/// Number of positions where two multi-indices differ.
std::size_t hamming_distance(const MultiIndex& i, const MultiIndex& j);

/// Ordered subsystem dimensions d_1..d_N of a composite Hilbert space.
///
/// Flat indices are row-major with subsystem 1 most significant:
/// flat = sum_m i_m * prod_{k>m} d_k.
class SubsystemDims {
 public:
  static constexpr std::size_t kDefaultMaxTotalDim = 4096;

  explicit SubsystemDims(std::vector<std::size_t> dims,
                         std::size_t max_total_dim = kDefaultMaxTotalDim);
  SubsystemDims(std::initializer_list<std::size_t> dims)
      : SubsystemDims(std::vector<std::size_t>(dims)) {}

  std::size_t count() const { return dims_.size(); }
  std::size_t total_dim() const { return total_; }
  std::span<const std::size_t> dims() const { return dims_; }
  std::size_t dim(Subsystem p) const { return dims_[checked(p)]; }
  std::size_t stride(Subsystem p) const { return strides_[checked(p)]; }
  std::span<const std::size_t> strides() const { return strides_; }

  std::size_t encode(const MultiIndex& index) const;
  MultiIndex decode(std::size_t flat) const;

  /// Throws InvalidArgument unless 1 <= p.label() <= N. Returns p.offset().
  std::size_t checked(Subsystem p) const;
  void check_same(const SubsystemDims& other) const;

  /// Dimensions of the listed subsystems, original order kept.
  SubsystemDims restrict_to(SubsystemSet keep) const;
  SubsystemSet all() const { return SubsystemSet::all(count()); }

  bool operator==(const SubsystemDims& other) const { return dims_ == other.dims_; }

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

enum class Normalization { kStrict, kRenormalize };

/// Normalized amplitude vector over a composite space.
class PureState {
 public:
  PureState(SubsystemDims dims, Vector amplitudes,
            Normalization mode = Normalization::kStrict);

  const SubsystemDims& dims() const { return dims_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex amplitude(const MultiIndex& index) const { return amplitudes_[dims_.encode(index)]; }

 private:
  SubsystemDims dims_;
  Vector amplitudes_;
};

/// Hermitian, unit-trace state operator. Positivity is not checked on
/// construction; call check_positive() when it matters.
class DensityOperator {
 public:
  DensityOperator(SubsystemDims dims, Matrix matrix);

  const SubsystemDims& dims() const { return dims_; }
  const Matrix& matrix() const { return matrix_; }

  double min_eigenvalue() const;
  void check_positive(double tol = kPositivityTol) const;
  double purity() const;

 private:
  SubsystemDims dims_;
  Matrix matrix_;
};

DensityOperator pure_to_density(const PureState& psi);

/// Reduced operator on `keep` (nonempty); other subsystems are traced out.
DensityOperator partial_trace(const DensityOperator& rho, SubsystemSet keep);

struct MeasurementOutcome {
  double probability = 0.0;
  /// Post-measurement state on the full space; absent for impossible outcomes.
  std::optional<PureState> state;
};

/// Projective measurement of `party` in its computational basis.
MeasurementOutcome project_and_renormalize(const PureState& psi, Subsystem party,
                                           std::size_t outcome);

/// Number of amplitudes whose modulus exceeds `threshold`.
std::size_t count_lbps(const PureState& psi, double threshold = kLbpsThreshold);

}  // namespace kwayneg
