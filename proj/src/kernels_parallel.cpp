// OpenMP kernels over flat indices. Digits of every flat index are tabulated
// once per call; moving a transposed element is then pure stride arithmetic.

#include <cstdint>
#include <vector>

#include "kwayneg/kernels.hpp"

namespace kwayneg::kernels::parallel {

namespace {

// digits[f * N + m] = i_m of flat index f
std::vector<std::uint16_t> digit_table(const SubsystemDims& dims) {
  const std::size_t n = dims.count();
  const std::size_t total = dims.total_dim();
  std::vector<std::uint16_t> table(total * n);
  const auto d = dims.dims();
  const auto s = dims.strides();
  for (std::size_t f = 0; f < total; ++f) {
    for (std::size_t m = 0; m < n; ++m) table[f * n + m] = static_cast<std::uint16_t>((f / s[m]) % d[m]);
  }
  return table;
}

// Flat offsets of the kept (resp. traced) digits, enumerated in flat order of
// the kept (resp. traced) sub-space.
std::vector<std::size_t> offsets_over(const SubsystemDims& dims, SubsystemSet parties) {
  std::vector<std::size_t> offsets{0};
  for (auto p : parties.members()) {
    const std::size_t d = dims.dim(p);
    const std::size_t stride = dims.stride(p);
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * d);
    for (auto base : offsets) {
      for (std::size_t k = 0; k < d; ++k) next.push_back(base + k * stride);
    }
    offsets = std::move(next);
  }
  return offsets;
}

}  // namespace

Matrix partial_transpose(const Matrix& in, const SubsystemDims& dims, const TransposeSelector& sel) {
  const std::size_t n = dims.count();
  const auto total = static_cast<std::int64_t>(dims.total_dim());
  const auto digits = digit_table(dims);
  const auto stride = static_cast<std::int64_t>(dims.strides()[sel.party]);
  const std::size_t p = sel.party;
  Matrix out(in.rows(), in.cols());

  // Eigen is column-major: parallelize over columns so each thread writes a
  // contiguous slab.
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < total; ++c) {
    const std::uint16_t* ket = &digits[static_cast<std::size_t>(c) * n];
    for (std::int64_t r = 0; r < total; ++r) {
      const std::uint16_t* bra = &digits[static_cast<std::size_t>(r) * n];
      std::uint64_t diff = 0;
      for (std::size_t m = 0; m < n; ++m) diff |= static_cast<std::uint64_t>(bra[m] != ket[m]) << m;
      if (sel.selects(diff)) {
        const std::int64_t shift = (static_cast<std::int64_t>(ket[p]) - bra[p]) * stride;
        out(r, c) = in(r + shift, c - shift);
      } else {
        out(r, c) = in(r, c);
      }
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& in, const SubsystemDims& dims, SubsystemSet keep) {
  const SubsystemSet traced = SubsystemSet::from_mask(dims.all().mask() & ~keep.mask());
  const auto kept_off = offsets_over(dims, keep);
  const auto traced_off = offsets_over(dims, traced);
  const auto kd = static_cast<std::int64_t>(kept_off.size());
  Matrix out = Matrix::Zero(kd, kd);

#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t r = 0; r < kd; ++r) {
    for (std::int64_t c = 0; c <= r; ++c) {
      Complex acc{0.0, 0.0};
      for (auto t : traced_off) {
        acc += in(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  for (Eigen::Index r = 0; r < out.rows(); ++r) {
    out(r, r) = Complex{out(r, r).real(), 0.0};
    for (Eigen::Index c = 0; c < r; ++c) out(c, r) = std::conj(out(r, c));
  }
  return out;
}

Vector apply_gate(const Vector& in, const SubsystemDims& dims, std::span<const Subsystem> targets,
                  const Matrix& gate) {
  std::uint64_t target_mask = 0;
  for (auto t : targets) target_mask |= std::uint64_t{1} << t.offset();
  // Target offsets must follow the gate's own ordering of `targets`, not the
  // subsystem order.
  std::vector<std::size_t> target_off{0};
  for (auto t : targets) {
    std::vector<std::size_t> next;
    for (auto base : target_off) {
      for (std::size_t k = 0; k < dims.dim(t); ++k) next.push_back(base + k * dims.stride(t));
    }
    target_off = std::move(next);
  }
  const auto spectator_off = offsets_over(dims, SubsystemSet::from_mask(dims.all().mask() & ~target_mask));
  const auto td = static_cast<Eigen::Index>(target_off.size());
  Vector out = Vector::Zero(in.size());

#pragma omp parallel for schedule(static)
  for (std::int64_t s = 0; s < static_cast<std::int64_t>(spectator_off.size()); ++s) {
    const std::size_t base = spectator_off[static_cast<std::size_t>(s)];
    for (Eigen::Index a = 0; a < td; ++a) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index b = 0; b < td; ++b) {
        acc += gate(a, b) * in[static_cast<Eigen::Index>(base + target_off[b])];
      }
      out[static_cast<Eigen::Index>(base + target_off[a])] = acc;
    }
  }
  return out;
}

}  // namespace kwayneg::kernels::parallel
