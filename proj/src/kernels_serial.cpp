// Reference kernels: every element is handled through explicit multi-index
// decode/encode. Slow, but each line maps directly onto the definition.

#include <limits>

#include "kwayneg/kernels.hpp"

namespace kwayneg::kernels::serial {

namespace {

std::uint64_t differing_positions(const MultiIndex& i, const MultiIndex& j) {
  std::uint64_t diff = 0;
  for (std::size_t m = 0; m < i.digits.size(); ++m) {
    if (i.digits[m] != j.digits[m]) diff |= std::uint64_t{1} << m;
  }
  return diff;
}

}  // namespace

Matrix partial_transpose(const Matrix& in, const SubsystemDims& dims, const TransposeSelector& sel) {
  const std::size_t total = dims.total_dim();
  Matrix out = in;
  for (std::size_t r = 0; r < total; ++r) {
    const MultiIndex bra = dims.decode(r);
    for (std::size_t c = 0; c < total; ++c) {
      const MultiIndex ket = dims.decode(c);
      if (!sel.selects(differing_positions(bra, ket))) continue;
      // <.. i_p ..| out |.. j_p ..> = <.. j_p ..| in |.. i_p ..>
      MultiIndex src_bra = bra;
      MultiIndex src_ket = ket;
      src_bra.digits[sel.party] = ket.digits[sel.party];
      src_ket.digits[sel.party] = bra.digits[sel.party];
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          in(static_cast<Eigen::Index>(dims.encode(src_bra)),
             static_cast<Eigen::Index>(dims.encode(src_ket)));
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& in, const SubsystemDims& dims, SubsystemSet keep) {
  const SubsystemDims kept = dims.restrict_to(keep);
  const auto kept_parties = keep.members();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(kept.total_dim()),
                            static_cast<Eigen::Index>(kept.total_dim()));
  const std::size_t total = dims.total_dim();
  for (std::size_t r = 0; r < total; ++r) {
    const MultiIndex bra = dims.decode(r);
    for (std::size_t c = 0; c <= r; ++c) {
      const MultiIndex ket = dims.decode(c);
      bool traced_match = true;
      for (std::size_t m = 0; m < dims.count() && traced_match; ++m) {
        if (!keep.contains(Subsystem{m + 1})) traced_match = bra.digits[m] == ket.digits[m];
      }
      if (!traced_match) continue;
      MultiIndex kb, kk;
      for (auto p : kept_parties) {
        kb.digits.push_back(bra.digits[p.offset()]);
        kk.digits.push_back(ket.digits[p.offset()]);
      }
      const auto rr = static_cast<Eigen::Index>(kept.encode(kb));
      const auto cc = static_cast<Eigen::Index>(kept.encode(kk));
      if (rr >= cc) {
        out(rr, cc) += in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      } else {
        out(cc, rr) += std::conj(in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)));
      }
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
  std::vector<std::size_t> tdims;
  for (auto t : targets) tdims.push_back(dims.dim(t));
  const SubsystemDims target_dims(tdims, std::numeric_limits<std::size_t>::max());
  const std::size_t total = dims.total_dim();
  Vector out = Vector::Zero(in.size());
  for (std::size_t f = 0; f < total; ++f) {
    const MultiIndex out_idx = dims.decode(f);
    MultiIndex to;
    for (auto t : targets) to.digits.push_back(out_idx.digits[t.offset()]);
    const auto a = static_cast<Eigen::Index>(target_dims.encode(to));
    // out[..a..] = sum_b U[a, b] in[..b..], spectator digits fixed
    Complex acc{0.0, 0.0};
    for (std::size_t b = 0; b < target_dims.total_dim(); ++b) {
      const MultiIndex ti = target_dims.decode(b);
      MultiIndex in_idx = out_idx;
      for (std::size_t k = 0; k < targets.size(); ++k) in_idx.digits[targets[k].offset()] = ti.digits[k];
      acc += gate(a, static_cast<Eigen::Index>(b)) * in[static_cast<Eigen::Index>(dims.encode(in_idx))];
    }
    out[static_cast<Eigen::Index>(f)] = acc;
  }
  return out;
}

}  // namespace kwayneg::kernels::serial
