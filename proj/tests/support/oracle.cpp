#include "oracle.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Digits digits_of(std::size_t flat, const std::vector<std::size_t>& dims) {
  Digits d(dims.size());
  for (std::size_t m = dims.size(); m-- > 0;) {
    d[m] = flat % dims[m];
    flat /= dims[m];
  }
  return d;
}

std::size_t flat_of(const Digits& d, const std::vector<std::size_t>& dims) {
  std::size_t f = 0;
  for (std::size_t m = 0; m < dims.size(); ++m) f = f * dims[m] + d[m];
  return f;
}

std::vector<std::size_t> differing(const Digits& a, const Digits& b) {
  std::vector<std::size_t> out;
  for (std::size_t m = 0; m < a.size(); ++m) {
    if (a[m] != b[m]) out.push_back(m);
  }
  return out;
}

Mat transpose_where(const Mat& in, const std::vector<std::size_t>& dims, std::size_t party,
                    const std::function<bool(const std::vector<std::size_t>&)>& select) {
  Mat out = in;
  const auto n = static_cast<std::size_t>(in.rows());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Digits i = digits_of(r, dims);
      Digits j = digits_of(c, dims);
      const auto diff = differing(i, j);
      if (std::find(diff.begin(), diff.end(), party) == diff.end() || !select(diff)) continue;
      std::swap(i[party], j[party]);
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          in(static_cast<Eigen::Index>(flat_of(i, dims)), static_cast<Eigen::Index>(flat_of(j, dims)));
    }
  }
  return out;
}

Mat global_transpose(const Mat& in, const std::vector<std::size_t>& dims, std::size_t party) {
  return transpose_where(in, dims, party, [](const auto&) { return true; });
}

// A coherence differing only in the transposed party goes with K = N.
Mat kway_transpose(const Mat& in, const std::vector<std::size_t>& dims, std::size_t party, std::size_t k) {
  const std::size_t n = dims.size();
  return transpose_where(in, dims, party, [&](const std::vector<std::size_t>& diff) {
    return diff.size() == k || (k == n && diff.size() == 1);
  });
}

Mat subset_transpose(const Mat& in, const std::vector<std::size_t>& dims, std::size_t party,
                     const std::vector<std::size_t>& subset) {
  std::vector<std::size_t> s = subset;
  std::sort(s.begin(), s.end());
  const bool full = s.size() == dims.size();
  return transpose_where(in, dims, party, [&](const std::vector<std::size_t>& diff) {
    return diff == s || (full && diff.size() == 1);
  });
}

Mat trace_keep(const Mat& in, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
  std::vector<std::size_t> kd;
  for (auto k : keep) kd.push_back(dims[k]);
  std::size_t kt = 1;
  for (auto d : kd) kt *= d;
  Mat out = Mat::Zero(static_cast<Eigen::Index>(kt), static_cast<Eigen::Index>(kt));
  const auto n = static_cast<std::size_t>(in.rows());
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const Digits i = digits_of(r, dims);
      const Digits j = digits_of(c, dims);
      bool match = true;
      for (std::size_t m = 0; m < dims.size(); ++m) {
        if (std::find(keep.begin(), keep.end(), m) == keep.end() && i[m] != j[m]) match = false;
      }
      if (!match) continue;
      Digits ki, kj;
      for (auto k : keep) {
        ki.push_back(i[k]);
        kj.push_back(j[k]);
      }
      out(static_cast<Eigen::Index>(flat_of(ki, kd)), static_cast<Eigen::Index>(flat_of(kj, kd))) +=
          in(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    }
  }
  return out;
}

std::vector<double> jacobi_eigenvalues(const Mat& h) {
  const auto n = static_cast<std::size_t>(h.rows());
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  auto at = [&](std::size_t r, std::size_t c) -> double& { return a[r * m + c]; };
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      const cd z = 0.5 * (h(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +
                          std::conj(h(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(r))));
      at(r, c) = z.real();
      at(r + n, c + n) = z.real();
      at(r, c + n) = -z.imag();
      at(r + n, c) = z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0, diag = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < m; ++c) (r == c ? diag : off) += at(r, c) * at(r, c);
    }
    if (off <= 1e-28 * std::max(diag, 1e-300)) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(m);
  for (std::size_t i = 0; i < m; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  // Each eigenvalue of h appears twice in the embedding.
  std::vector<double> out;
  for (std::size_t i = 0; i < m; i += 2) out.push_back(0.5 * (ev[i] + ev[i + 1]));
  return out;
}

double negativity(const Mat& transposed, std::size_t party_dim) {
  double norm = 0.0;
  for (double v : jacobi_eigenvalues(transposed)) norm += std::abs(v);
  return (norm - 1.0) / static_cast<double>(party_dim - 1);
}

}  // namespace oracle
