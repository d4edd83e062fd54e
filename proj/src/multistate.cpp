#include "kwayneg/multistate.hpp"

#include <bit>
#include <cmath>

#include <fmt/format.h>

#include "kwayneg/kernels.hpp"

namespace kwayneg {

SubsystemSet::SubsystemSet(std::initializer_list<Subsystem> parties) {
  for (auto p : parties) insert(p);
}

SubsystemSet::SubsystemSet(std::span<const Subsystem> parties) {
  for (auto p : parties) insert(p);
}

SubsystemSet SubsystemSet::all(std::size_t n) {
  if (n > 64) throw InvalidArgument("at most 64 subsystems are supported");
  return from_mask(n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

void SubsystemSet::insert(Subsystem p) {
  if (p.label() == 0 || p.label() > 64) {
    throw InvalidArgument(fmt::format("subsystem label {} out of range", p.label()));
  }
  mask_ |= std::uint64_t{1} << p.offset();
}

bool SubsystemSet::contains(Subsystem p) const {
  return p.label() >= 1 && p.label() <= 64 && ((mask_ >> p.offset()) & 1U) != 0;
}

std::size_t SubsystemSet::size() const { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<Subsystem> SubsystemSet::members() const {
  std::vector<Subsystem> out;
  for (std::size_t m = 0; m < 64; ++m) {
    if ((mask_ >> m) & 1U) out.emplace_back(m + 1);
  }
  return out;
}

std::size_t hamming_distance(const MultiIndex& i, const MultiIndex& j) {
  if (i.digits.size() != j.digits.size()) {
    throw InvalidArgument(fmt::format("multi-index length mismatch: {} vs {}", i.digits.size(),
                                      j.digits.size()));
  }
  std::size_t k = 0;
  for (std::size_t m = 0; m < i.digits.size(); ++m) k += i.digits[m] != j.digits[m] ? 1 : 0;
  return k;
}

SubsystemDims::SubsystemDims(std::vector<std::size_t> dims, std::size_t max_total_dim)
    : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("at least one subsystem is required");
  if (dims_.size() > 64) throw InvalidArgument("at most 64 subsystems are supported");
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (dims_[m] < 2) {
      throw InvalidArgument(fmt::format("subsystem {} has dimension {}; every dimension must be >= 2",
                                        m + 1, dims_[m]));
    }
    if (total_ > max_total_dim / dims_[m]) {
      throw InvalidArgument(
          fmt::format("total dimension exceeds the configured cap of {}", max_total_dim));
    }
    total_ *= dims_[m];
  }
  strides_.assign(dims_.size(), 1);
  for (std::size_t m = dims_.size() - 1; m > 0; --m) strides_[m - 1] = strides_[m] * dims_[m];
}

std::size_t SubsystemDims::checked(Subsystem p) const {
  if (p.label() < 1 || p.label() > dims_.size()) {
    throw InvalidArgument(
        fmt::format("subsystem {} out of range for {} subsystems", p.label(), dims_.size()));
  }
  return p.offset();
}

void SubsystemDims::check_same(const SubsystemDims& other) const {
  if (!(*this == other)) throw InvalidArgument("subsystem dimensions do not match");
}

std::size_t SubsystemDims::encode(const MultiIndex& index) const {
  if (index.digits.size() != dims_.size()) {
    throw InvalidArgument(fmt::format("multi-index has {} digits, expected {}",
                                      index.digits.size(), dims_.size()));
  }
  std::size_t flat = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (index.digits[m] >= dims_[m]) {
      throw InvalidArgument(fmt::format("digit {} of subsystem {} exceeds dimension {}",
                                        index.digits[m], m + 1, dims_[m]));
    }
    flat += index.digits[m] * strides_[m];
  }
  return flat;
}

MultiIndex SubsystemDims::decode(std::size_t flat) const {
  if (flat >= total_) throw InvalidArgument(fmt::format("flat index {} out of range", flat));
  MultiIndex out{std::vector<std::size_t>(dims_.size())};
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    out.digits[m] = flat / strides_[m];
    flat %= strides_[m];
  }
  return out;
}

SubsystemDims SubsystemDims::restrict_to(SubsystemSet keep) const {
  if (keep.empty()) throw InvalidArgument("subsystem selection is empty");
  std::vector<std::size_t> kept;
  for (auto p : keep.members()) kept.push_back(dims_[checked(p)]);
  return SubsystemDims(std::move(kept));
}

PureState::PureState(SubsystemDims dims, Vector amplitudes, Normalization mode)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != dims_.total_dim()) {
    throw InvalidArgument(fmt::format("amplitude vector has length {}, expected {}",
                                      amplitudes_.size(), dims_.total_dim()));
  }
  const double norm2 = amplitudes_.squaredNorm();
  if (!std::isfinite(norm2)) throw InvariantViolation("normalization", "amplitudes are not finite");
  if (mode == Normalization::kRenormalize) {
    if (norm2 <= 0.0) throw InvariantViolation("normalization", "zero vector cannot be normalized");
    amplitudes_ /= std::sqrt(norm2);
  } else if (std::abs(norm2 - 1.0) > kNormTol) {
    throw InvariantViolation("normalization",
                             fmt::format("sum of |amplitude|^2 is {:.15g}, expected 1", norm2));
  }
}

DensityOperator::DensityOperator(SubsystemDims dims, Matrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {
  const auto d = static_cast<Eigen::Index>(dims_.total_dim());
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InvalidArgument(fmt::format("operator is {}x{}, expected {}x{}", matrix_.rows(),
                                      matrix_.cols(), d, d));
  }
  if (!matrix_.allFinite()) throw InvariantViolation("hermiticity", "matrix has non-finite entries");
  const double asym = (matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    throw InvariantViolation("hermiticity",
                             fmt::format("max |rho - rho^dagger| = {:.3e} exceeds {:.0e}", asym,
                                         kHermitianTol));
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kTraceTol) {
    throw InvariantViolation("unit trace", fmt::format("trace is {:.15g}{:+.3e}i", tr.real(), tr.imag()));
  }
}

double DensityOperator::min_eigenvalue() const {
  const Matrix h = 0.5 * (matrix_ + matrix_.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityOperator::check_positive(double tol) const {
  const double lo = min_eigenvalue();
  if (lo < -tol) {
    throw InvariantViolation("positivity",
                             fmt::format("minimum eigenvalue {:.3e} is below -{:.0e}", lo, tol));
  }
}

double DensityOperator::purity() const { return (matrix_ * matrix_).trace().real(); }

DensityOperator pure_to_density(const PureState& psi) {
  const Vector& a = psi.amplitudes();
  Matrix rho = a * a.adjoint();
  return DensityOperator(psi.dims(), std::move(rho));
}

DensityOperator partial_trace(const DensityOperator& rho, SubsystemSet keep) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  for (auto p : keep.members()) rho.dims().checked(p);
  if (keep == rho.dims().all()) return rho;
  Matrix reduced = kernels::parallel::partial_trace(rho.matrix(), rho.dims(), keep);
  return DensityOperator(rho.dims().restrict_to(keep), std::move(reduced));
}

MeasurementOutcome project_and_renormalize(const PureState& psi, Subsystem party,
                                           std::size_t outcome) {
  const auto& dims = psi.dims();
  const std::size_t m = dims.checked(party);
  if (outcome >= dims.dim(party)) {
    throw InvalidArgument(fmt::format("outcome {} out of range for subsystem {} of dimension {}",
                                      outcome, party.label(), dims.dim(party)));
  }
  const std::size_t stride = dims.strides()[m];
  const std::size_t d = dims.dims()[m];
  Vector collapsed = Vector::Zero(psi.amplitudes().size());
  double prob = 0.0;
  for (std::size_t f = 0; f < dims.total_dim(); ++f) {
    if ((f / stride) % d != outcome) continue;
    collapsed[f] = psi.amplitudes()[f];
    prob += std::norm(psi.amplitudes()[f]);
  }
  MeasurementOutcome result;
  result.probability = prob;
  if (prob > kOutcomeProbabilityFloor) {
    result.state.emplace(dims, collapsed / std::sqrt(prob), Normalization::kRenormalize);
  }
  return result;
}

std::size_t count_lbps(const PureState& psi, double threshold) {
  if (threshold < 0.0) throw InvalidArgument("threshold must be non-negative");
  std::size_t n = 0;
  for (Eigen::Index f = 0; f < psi.amplitudes().size(); ++f) {
    if (std::abs(psi.amplitudes()[f]) > threshold) ++n;
  }
  return n;
}

}  // namespace kwayneg
