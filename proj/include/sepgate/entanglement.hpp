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
 * @file entanglement.hpp
 * Schmidt data of bipartite states and operators, entanglement entropy,
 * and the majorization / uniformity predicates.
 */
#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sepgate/matrix.hpp"
#include "sepgate/tensor.hpp"

namespace sepgate {

struct SchmidtDecomposition {
  std::vector<double> coefficients;  // strictly positive, nonincreasing
  std::size_t rank = 0;
  CMatrix left_basis;   // columns: |a_i> (or A_i reshaped), one per coefficient
  CMatrix right_basis;  // right singular vectors v_i; |b_i> = conj(v_i)
};

/// Schmidt form of a normalized state on a (x) b. Throws PreconditionError
/// (carrying the norm) if |psi| differs from 1 by more than 1e-8.
SchmidtDecomposition schmidt_state(const CMatrix& psi, std::size_t da, std::size_t db,
                                   double rank_tol = kDefaultRankTol);

/// Operator Schmidt form of U: singular values of U' (Frobenius-orthonormal
/// product terms).
SchmidtDecomposition schmidt_operator(const CMatrix& u, const SpaceDims& dims,
                                      double rank_tol = kDefaultRankTol);

/// Von Neumann entropy in ebits of a state with the given Schmidt
/// coefficients, -sum lambda^2 log2 lambda^2 (0 log 0 = 0).
double entropy_ebits(std::span<const double> coefficients);

/// True iff the probability vector x is majorized by y (x < y), i.e. every
/// partial sum of sorted-descending x is at most that of y. Both arguments
/// are squared Schmidt coefficients, not the coefficients themselves; a
/// state with vector x then converts deterministically into one with y.
bool is_majorized(std::span<const double> x, std::span<const double> y);

inline constexpr double kDefaultUniformTol = 1e-8;

/// All coefficients equal within `tol` (max - min < tol).
bool is_uniform(std::span<const double> coefficients, double tol = kDefaultUniformTol);

}  // namespace sepgate
