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

#include "sepgate/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace sepgate {

namespace {

SchmidtDecomposition from_svd(const SvdResult& s) {
  SchmidtDecomposition out;
  out.rank = s.rank;
  out.coefficients.assign(s.singulars.begin(), s.singulars.begin() + s.rank);
  out.left_basis = CMatrix(s.left.rows(), s.rank);
  out.right_basis = CMatrix(s.right.rows(), s.rank);
  for (std::size_t k = 0; k < s.rank; ++k) {
    for (std::size_t i = 0; i < s.left.rows(); ++i) out.left_basis(i, k) = s.left(i, k);
    for (std::size_t i = 0; i < s.right.rows(); ++i) out.right_basis(i, k) = s.right(i, k);
  }
  return out;
}

void require_probability_vector(std::span<const double> v, const char* name) {
  double sum = 0.0;
  for (double p : v) {
    if (p < 0.0) throw PreconditionError(std::string(name) + " has a negative entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-8) {
    std::ostringstream os;
    os << name << " sums to " << sum << ", expected 1";
    throw PreconditionError(os.str());
  }
}

}  // namespace

SchmidtDecomposition schmidt_state(const CMatrix& psi, std::size_t da, std::size_t db,
                                   double rank_tol) {
  SpaceDims dims;
  dims.da = da;
  dims.db = db;
  const CMatrix psi_prime = state_to_map(psi, dims);
  const double nrm = psi.frobenius_norm();
  if (std::abs(nrm - 1.0) > 1e-8) {
    std::ostringstream os;
    os.precision(17);
    os << "resource state is not normalized: norm = " << nrm;
    throw PreconditionError(os.str());
  }
  return from_svd(svd(psi_prime, rank_tol));
}

SchmidtDecomposition schmidt_operator(const CMatrix& u, const SpaceDims& dims,
                                      double rank_tol) {
  dims.validate();
  return from_svd(svd(unitary_to_map(u, dims), rank_tol));
}

double entropy_ebits(std::span<const double> coefficients) {
  double norm2 = 0.0;
  for (double c : coefficients) norm2 += c * c;
  if (std::abs(norm2 - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "Schmidt coefficients are not normalized: sum of squares = " << norm2;
    throw PreconditionError(os.str());
  }
  double h = 0.0;
  for (double c : coefficients) {
    const double p = c * c;
    if (p > 0.0) h -= p * std::log2(p);
  }
  return std::max(h, 0.0);
}

bool is_majorized(std::span<const double> x, std::span<const double> y) {
  require_probability_vector(x, "x");
  require_probability_vector(y, "y");
  const std::size_t n = std::max(x.size(), y.size());
  std::vector<double> xs(x.begin(), x.end()), ys(y.begin(), y.end());
  xs.resize(n, 0.0);
  ys.resize(n, 0.0);
  std::sort(xs.begin(), xs.end(), std::greater<>());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  double sx = 0.0, sy = 0.0;
  constexpr double kSlack = 1e-12;
  for (std::size_t i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    if (sx > sy + kSlack) return false;
  }
  return true;
}

bool is_uniform(std::span<const double> coefficients, double tol) {
  if (coefficients.empty()) throw PreconditionError("is_uniform: empty coefficient list");
  for (double c : coefficients)
    if (!(c > 0.0)) throw PreconditionError("is_uniform: coefficients must be positive");
  const auto [lo, hi] = std::minmax_element(coefficients.begin(), coefficients.end());
  return *hi - *lo < tol;
}

}  // namespace sepgate
