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

/**
 * @file tensor.hpp
 * Map-state duality reshapes, resource contraction and SVD-based support /
 * range restriction.
 *
 * Index conventions (all flat indices are row-major over the listed
 * factors):
 *   - bipartite state on a (x) b: |a_i b_j> at i*db + j
 *   - U: row jbar*dBbar + nbar (output Abar, Bbar), column i*dB + m (input A, B)
 *   - E_k: dAbar x (dA*da), column i*da + m for |A_i a_m>; F_k likewise with db
 *   - psi'[i, j] = psi[i*db + j]
 *   - U'[i*dAbar + j, m*dBbar + n] = U[j*dBbar + n, i*dB + m]
 *   - E'_k[i*dAbar + j, m] = E_k[j, i*da + m]
 *   - F'T_k[m, i*dBbar + j] = F_k[j, i*db + m]
 */
#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sepgate/error.hpp"
#include "sepgate/matrix.hpp"

namespace sepgate {

inline constexpr double kDefaultRankTol = 1e-10;

/// Hilbert-space dimensions of inputs (A, B), outputs (Abar, Bbar) and
/// the resource halves (a, b).
struct SpaceDims {
  std::size_t dA = 1, dB = 1, dAbar = 1, dBbar = 1, da = 1, db = 1;

  std::size_t input_dim() const { return dA * dB; }
  std::size_t output_dim() const { return dAbar * dBbar; }
  std::size_t resource_dim() const { return da * db; }

  /// Throws DimensionError on a zero dimension or dA*dB != dAbar*dBbar.
  void validate() const;

  friend bool operator==(const SpaceDims&, const SpaceDims&) = default;
};

struct SvdResult {
  CMatrix left;                  // m x k, orthonormal columns
  std::vector<double> singulars;  // k = min(m, n), nonincreasing
  CMatrix right;                 // n x k, orthonormal columns
  std::size_t rank = 0;
};

/// One-sided Jacobi SVD. `rank_tol` is relative to the largest singular
/// value. The leading component (first entry with modulus > rank_tol) of
/// every left singular vector is made real and nonnegative.
SvdResult svd(const CMatrix& a, double rank_tol = kDefaultRankTol);

struct Restriction {
  CMatrix hat;            // D x D, invertible
  CMatrix range_basis;    // rows(M) x D
  CMatrix support_basis;  // cols(M) x D
};

/// Restricts M to a map from its support onto its range:
/// hat = range_basis^dagger * M * support_basis.
Restriction restrict_support_range(const CMatrix& m,
                                   double rank_tol = kDefaultRankTol);

/// Inverse of a square matrix by Gauss-Jordan elimination with partial
/// pivoting. Throws PreconditionError if a pivot falls below
/// `pivot_tol` times the largest entry.
CMatrix inverse(const CMatrix& m, double pivot_tol = 1e-14);

namespace detail {
inline void require(bool ok, const std::string& what) {
  if (!ok) throw DimensionError(what);
}
}  // namespace detail

template <class C>
BasicMatrix<C> state_to_map(const BasicMatrix<C>& psi, const SpaceDims& d) {
  detail::require(psi.cols() == 1 && psi.rows() == d.da * d.db,
                  "state_to_map: state is " + psi.shape_string() + ", expected " +
                      std::to_string(d.da * d.db) + "x1");
  BasicMatrix<C> out(d.da, d.db);
  for (std::size_t i = 0; i < d.da; ++i)
    for (std::size_t j = 0; j < d.db; ++j) out(i, j) = psi[i * d.db + j];
  return out;
}

template <class C>
BasicMatrix<C> map_to_state(const BasicMatrix<C>& psi_prime) {
  return BasicMatrix<C>::column(
      std::vector<C>(psi_prime.data().begin(), psi_prime.data().end()));
}

template <class C>
BasicMatrix<C> unitary_to_map(const BasicMatrix<C>& u, const SpaceDims& d) {
  detail::require(u.rows() == d.dAbar * d.dBbar && u.cols() == d.dA * d.dB,
                  "unitary_to_map: unitary is " + u.shape_string());
  BasicMatrix<C> out(d.dA * d.dAbar, d.dB * d.dBbar);
  for (std::size_t i = 0; i < d.dA; ++i)
    for (std::size_t j = 0; j < d.dAbar; ++j)
      for (std::size_t m = 0; m < d.dB; ++m)
        for (std::size_t n = 0; n < d.dBbar; ++n)
          out(i * d.dAbar + j, m * d.dBbar + n) = u(j * d.dBbar + n, i * d.dB + m);
  return out;
}

template <class C>
struct DualKraus {
  BasicMatrix<C> e_prime;    // (dA*dAbar) x da
  BasicMatrix<C> f_prime_t;  // db x (dB*dBbar)
};

template <class C>
void require_kraus_shapes(const BasicMatrix<C>& e, const BasicMatrix<C>& f,
                          const SpaceDims& d) {
  detail::require(e.rows() == d.dAbar && e.cols() == d.dA * d.da,
                  "Kraus E is " + e.shape_string() + ", expected " +
                      std::to_string(d.dAbar) + "x" + std::to_string(d.dA * d.da));
  detail::require(f.rows() == d.dBbar && f.cols() == d.dB * d.db,
                  "Kraus F is " + f.shape_string() + ", expected " +
                      std::to_string(d.dBbar) + "x" + std::to_string(d.dB * d.db));
}

template <class C>
DualKraus<C> kraus_dualize(const BasicMatrix<C>& e, const BasicMatrix<C>& f,
                           const SpaceDims& d) {
  require_kraus_shapes(e, f, d);
  DualKraus<C> out{BasicMatrix<C>(d.dA * d.dAbar, d.da),
                   BasicMatrix<C>(d.db, d.dB * d.dBbar)};
  for (std::size_t i = 0; i < d.dA; ++i)
    for (std::size_t j = 0; j < d.dAbar; ++j)
      for (std::size_t m = 0; m < d.da; ++m)
        out.e_prime(i * d.dAbar + j, m) = e(j, i * d.da + m);
  for (std::size_t i = 0; i < d.dB; ++i)
    for (std::size_t j = 0; j < d.dBbar; ++j)
      for (std::size_t m = 0; m < d.db; ++m)
        out.f_prime_t(m, i * d.dBbar + j) = f(j, i * d.db + m);
  return out;
}

/// Inverse of kraus_dualize.
template <class C>
std::pair<BasicMatrix<C>, BasicMatrix<C>> kraus_undualize(const DualKraus<C>& dual,
                                                          const SpaceDims& d) {
  detail::require(dual.e_prime.rows() == d.dA * d.dAbar && dual.e_prime.cols() == d.da &&
                      dual.f_prime_t.rows() == d.db &&
                      dual.f_prime_t.cols() == d.dB * d.dBbar,
                  "kraus_undualize: shape mismatch");
  BasicMatrix<C> e(d.dAbar, d.dA * d.da), f(d.dBbar, d.dB * d.db);
  for (std::size_t i = 0; i < d.dA; ++i)
    for (std::size_t j = 0; j < d.dAbar; ++j)
      for (std::size_t m = 0; m < d.da; ++m)
        e(j, i * d.da + m) = dual.e_prime(i * d.dAbar + j, m);
  for (std::size_t i = 0; i < d.dB; ++i)
    for (std::size_t j = 0; j < d.dBbar; ++j)
      for (std::size_t m = 0; m < d.db; ++m)
        f(j, i * d.db + m) = dual.f_prime_t(m, i * d.dBbar + j);
  return {std::move(e), std::move(f)};
}

/// G = (E (x) F)|psi>, an operator from A (x) B to Abar (x) Bbar:
/// G[jbar*dBbar + nbar, i*dB + m] = sum_pq E[jbar, i*da+p] F[nbar, m*db+q] psi[p*db+q].
template <class C>
BasicMatrix<C> contract_resource(const BasicMatrix<C>& e, const BasicMatrix<C>& f,
                                 const BasicMatrix<C>& psi, const SpaceDims& d) {
  require_kraus_shapes(e, f, d);
  detail::require(psi.cols() == 1 && psi.rows() == d.da * d.db,
                  "contract_resource: resource is " + psi.shape_string());
  // F-side partial contraction first: H[nbar, m, p] = sum_q F[nbar, m*db+q] psi[p*db+q].
  std::vector<C> h(d.dBbar * d.dB * d.da, C(0.0));
  for (std::size_t nb = 0; nb < d.dBbar; ++nb)
    for (std::size_t m = 0; m < d.dB; ++m)
      for (std::size_t p = 0; p < d.da; ++p) {
        C acc(0.0);
        for (std::size_t q = 0; q < d.db; ++q) acc += f(nb, m * d.db + q) * psi[p * d.db + q];
        h[(nb * d.dB + m) * d.da + p] = acc;
      }
  BasicMatrix<C> g(d.dAbar * d.dBbar, d.dA * d.dB);
  for (std::size_t jb = 0; jb < d.dAbar; ++jb)
    for (std::size_t nb = 0; nb < d.dBbar; ++nb)
      for (std::size_t i = 0; i < d.dA; ++i)
        for (std::size_t m = 0; m < d.dB; ++m) {
          C acc(0.0);
          for (std::size_t p = 0; p < d.da; ++p)
            acc += e(jb, i * d.da + p) * h[(nb * d.dB + m) * d.da + p];
          g(jb * d.dBbar + nb, i * d.dB + m) = acc;
        }
  return g;
}

/// The product Kraus operator E (x) F on the global input ordering
/// (A, B, a, b): M[jbar*dBbar + nbar, ((i*dB + m)*da + p)*db + q]
///   = E[jbar, i*da + p] * F[nbar, m*db + q].
template <class C>
BasicMatrix<C> kraus_embed(const BasicMatrix<C>& e, const BasicMatrix<C>& f,
                           const SpaceDims& d) {
  require_kraus_shapes(e, f, d);
  BasicMatrix<C> out(d.dAbar * d.dBbar, d.dA * d.dB * d.da * d.db);
  for (std::size_t jb = 0; jb < d.dAbar; ++jb)
    for (std::size_t nb = 0; nb < d.dBbar; ++nb)
      for (std::size_t i = 0; i < d.dA; ++i)
        for (std::size_t m = 0; m < d.dB; ++m)
          for (std::size_t p = 0; p < d.da; ++p)
            for (std::size_t q = 0; q < d.db; ++q)
              out(jb * d.dBbar + nb, ((i * d.dB + m) * d.da + p) * d.db + q) =
                  e(jb, i * d.da + p) * f(nb, m * d.db + q);
  return out;
}

}  // namespace sepgate
