// Copyright 2026 The sepgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sepgate/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sepgate {

void SpaceDims::validate() const {
  if (dA == 0 || dB == 0 || dAbar == 0 || dBbar == 0 || da == 0 || db == 0) {
    throw DimensionError("all Hilbert-space dimensions must be positive");
  }
  if (dA * dB != dAbar * dBbar) {
    throw DimensionError("dA*dB = " + std::to_string(dA * dB) +
                         " differs from dAbar*dBbar = " + std::to_string(dAbar * dBbar));
  }
}

namespace {

// Columns of a tall matrix stored column-major for the Jacobi sweeps.
struct Columns {
  std::size_t rows, cols;
  std::vector<Complex> v;
  Complex& at(std::size_t r, std::size_t c) { return v[c * rows + r]; }
  const Complex& at(std::size_t r, std::size_t c) const { return v[c * rows + r]; }
};

void rotate(Columns& w, std::size_t p, std::size_t q, double c, double s, Complex phase) {
  for (std::size_t i = 0; i < w.rows; ++i) {
    const Complex ap = w.at(i, p);
    const Complex aq = phase * w.at(i, q);
    w.at(i, p) = c * ap - s * aq;
    w.at(i, q) = s * ap + c * aq;
  }
}

SvdResult jacobi_tall(const CMatrix& a, double rank_tol) {
  const std::size_t m = a.rows(), n = a.cols();
  Columns w{m, n, std::vector<Complex>(m * n)};
  Columns v{n, n, std::vector<Complex>(n * n)};
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) w.at(r, c) = a(r, c);
  for (std::size_t i = 0; i < n; ++i) v.at(i, i) = 1.0;

  constexpr double kEps = 1e-15;
  for (int sweep = 0; sweep < 100; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        Complex gamma = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
          alpha += std::norm(w.at(i, p));
          beta += std::norm(w.at(i, q));
          gamma += std::conj(w.at(i, p)) * w.at(i, q);
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const Complex phase = std::conj(gamma) / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(w, p, q, c, s, phase);
        rotate(v, p, q, c, s, phase);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) acc += std::norm(w.at(i, j));
    sigma[j] = std::sqrt(acc);
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  SvdResult out{CMatrix(m, n), std::vector<double>(n), CMatrix(n, n), 0};
  const double smax = sigma[order[0]];
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singulars[k] = sigma[j];
    for (std::size_t i = 0; i < n; ++i) out.right(i, k) = v.at(i, j);
    if (sigma[j] > 0.0)
      for (std::size_t i = 0; i < m; ++i) out.left(i, k) = w.at(i, j) / sigma[j];
  }

  // Re-orthonormalize the left vectors in order of decreasing singular
  // value; vectors for (numerically) zero singular values are completed
  // from the standard basis.
  std::size_t next_unit = 0;
  for (std::size_t k = 0; k < n; ++k) {
    auto orthogonalize = [&](std::vector<Complex>& col) {
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t l = 0; l < k; ++l) {
          Complex proj = 0.0;
          for (std::size_t i = 0; i < m; ++i) proj += std::conj(out.left(i, l)) * col[i];
          for (std::size_t i = 0; i < m; ++i) col[i] -= proj * out.left(i, l);
        }
      double nrm = 0.0;
      for (const auto& z : col) nrm += std::norm(z);
      return std::sqrt(nrm);
    };
    std::vector<Complex> col(m);
    for (std::size_t i = 0; i < m; ++i) col[i] = out.left(i, k);
    double nrm = out.singulars[k] > 1e-13 * smax ? orthogonalize(col) : 0.0;
    while (nrm < 1e-8) {
      if (next_unit >= m) throw InvalidMatrixError("svd: basis completion failed");
      std::fill(col.begin(), col.end(), Complex(0.0));
      col[next_unit++] = 1.0;
      nrm = orthogonalize(col);
    }
    for (std::size_t i = 0; i < m; ++i) out.left(i, k) = col[i] / nrm;
  }

  if (smax > 0.0)
    for (double s : out.singulars)
      if (s > rank_tol * smax) ++out.rank;
  return out;
}

void fix_phases(SvdResult& out, double rank_tol) {
  const std::size_t m = out.left.rows(), n = out.right.rows();
  for (std::size_t k = 0; k < out.singulars.size(); ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double mod = std::abs(out.left(i, k));
      if (mod > rank_tol) {
        const Complex fix = std::conj(out.left(i, k)) / mod;
        for (std::size_t r = 0; r < m; ++r) out.left(r, k) *= fix;
        for (std::size_t r = 0; r < n; ++r) out.right(r, k) *= fix;
        out.left(i, k) = mod;
        break;
      }
    }
  }
}

}  // namespace

SvdResult svd(const CMatrix& a, double rank_tol) {
  if (!all_finite(a)) throw InvalidMatrixError("invalid matrix");
  if (rank_tol < 0.0) throw PreconditionError("svd: rank_tol must be nonnegative");
  if (a.empty()) throw DimensionError("svd: empty matrix");
  SvdResult out;
  if (a.rows() >= a.cols()) {
    out = jacobi_tall(a, rank_tol);
  } else {
    SvdResult t = jacobi_tall(a.adjoint(), rank_tol);
    out = SvdResult{std::move(t.right), std::move(t.singulars), std::move(t.left), t.rank};
  }
  fix_phases(out, rank_tol);
  return out;
}

Restriction restrict_support_range(const CMatrix& m, double rank_tol) {
  SvdResult s = svd(m, rank_tol);
  const std::size_t d = s.rank;
  if (d == 0) throw PreconditionError("rank zero, no restriction");
  Restriction out{CMatrix(), CMatrix(m.rows(), d), CMatrix(m.cols(), d)};
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < m.rows(); ++i) out.range_basis(i, k) = s.left(i, k);
    for (std::size_t i = 0; i < m.cols(); ++i) out.support_basis(i, k) = s.right(i, k);
  }
  out.hat = out.range_basis.adjoint() * m * out.support_basis;
  return out;
}

CMatrix inverse(const CMatrix& m, double pivot_tol) {
  if (m.rows() != m.cols()) throw DimensionError("inverse: matrix is " + m.shape_string());
  const std::size_t n = m.rows();
  CMatrix a = m;
  CMatrix inv = CMatrix::identity(n);
  double scale = 0.0;
  for (const auto& z : m.data()) scale = std::max(scale, std::abs(z));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (!(std::abs(a(piv, col)) > pivot_tol * scale)) {
      throw PreconditionError("inverse: matrix is singular");
    }
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(a(piv, c), a(col, c));
        std::swap(inv(piv, c), inv(col, c));
      }
    }
    const Complex d = a(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      a(col, c) /= d;
      inv(col, c) /= d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f == Complex(0.0)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        a(r, c) -= f * a(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

}  // namespace sepgate
