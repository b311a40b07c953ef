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
 * @file appendix.hpp
 * Exact construction of a controlled-phase protocol that uses a two-qutrit
 * resource with less than one ebit of entanglement.
 *
 * Resource sqrt(c0)|00> + sqrt((1-c0)/2)(|11> + |22>), target
 * U = diag(1, 1, 1, e^{i theta}). Kraus operators are E = E* (I_A (x) S)
 * and F = F* (I_B (x) T) with S, T : C^3 -> C^2 and
 *   E* = |0><0|_{Abar A} (x) <0|_c + |1><1|_{Abar A} (x) <1|_c,
 *   F* = I_{Bbar B} (x) <0|_c + diag(1, e^{i theta})_{Bbar B} (x) <1|_c.
 * Two seed pairs (S_k, T_k) are spread over the eight-element symmetry
 * group of the resource generated by L, M, N, giving 16 Kraus pairs.
 *
 * Templates run in double (Complex) or double-double (DDComplex).
 */
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "sepgate/matrix.hpp"
#include "sepgate/protocol.hpp"
#include "sepgate/tensor.hpp"

namespace sepgate {

template <class R>
struct BasicFamilyParams {
  R x{}, y{}, c0{}, theta{};
  R s{};  // x^2 (1 - cos(theta/2)) + y^2 (1 + cos(theta/2))
  R p{};  // sqrt((1 - s) / s)
  std::string theta_symbolic;  // e.g. "2*acos(35/36)" when known exactly
};

using FamilyParams = BasicFamilyParams<double>;
using FamilyParamsDD = BasicFamilyParams<DoubleDouble>;

template <class R>
R ratio(long long num, long long den) {
  if constexpr (std::is_same_v<R, DoubleDouble>) {
    return DoubleDouble::from_ratio(num, den);
  } else {
    return static_cast<R>(num) / static_cast<R>(den);
  }
}

/// Derives s and p. Throws PreconditionError("p undefined ...") unless
/// 0 < s < 1. c0 is left at zero.
template <class R>
BasicFamilyParams<R> family_params(R x, R y, R theta) {
  using std::cos;
  using std::sqrt;
  BasicFamilyParams<R> out;
  out.x = x;
  out.y = y;
  out.theta = theta;
  const R half = cos(theta / R(2.0));
  out.s = x * x * (R(1.0) - half) + y * y * (R(1.0) + half);
  if (!(out.s > R(0.0) && out.s < R(1.0))) {
    std::ostringstream os;
    os << "p undefined: s = " << static_cast<double>(out.s) << " is outside (0, 1)";
    throw PreconditionError(os.str());
  }
  out.p = sqrt((R(1.0) - out.s) / out.s);
  return out;
}

/// As above, also setting the resource parameter; c0 must lie in (0, 1).
template <class R>
BasicFamilyParams<R> family_params(R x, R y, R c0, R theta) {
  if (!(c0 > R(0.0) && c0 < R(1.0))) {
    throw PreconditionError("c0 must lie in (0, 1)");
  }
  auto out = family_params<R>(x, y, theta);
  out.c0 = c0;
  return out;
}

/// x = 9/5, y = -3/5, c0 = 81/100, theta = 2 arccos(35/36).
template <class R>
BasicFamilyParams<R> exact_params() {
  using std::acos;
  auto out = family_params<R>(ratio<R>(9, 5), ratio<R>(-3, 5), ratio<R>(81, 100),
                              R(2.0) * acos(ratio<R>(35, 36)));
  out.theta_symbolic = "2*acos(35/36)";
  return out;
}

/// L swaps basis states 1 and 2; M = diag(1, 1, -1); N = diag(1, -1, 1).
template <class C = Complex>
struct SymmetryGenerators {
  BasicMatrix<C> l{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  BasicMatrix<C> m = BasicMatrix<C>::diagonal({1.0, 1.0, -1.0});
  BasicMatrix<C> n = BasicMatrix<C>::diagonal({1.0, -1.0, 1.0});

  /// L^l M^m N^n for (l, m, n) in {0,1}^3, lexicographic.
  std::vector<BasicMatrix<C>> orbit() const {
    std::vector<BasicMatrix<C>> out;
    const auto id = BasicMatrix<C>::identity(3);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) out.push_back((a ? l : id) * (b ? m : id) * (c ? n : id));
    return out;
  }
};

template <class C>
struct SeedFactors {
  std::array<BasicMatrix<C>, 2> s;      // 2 x 3
  std::array<BasicMatrix<C>, 2> t_col;  // 2 x 1, first column of T_k
};

/// S_0 = [[p, 1, -p], [e^{i theta/2}, -p, -1]],
/// S_1 = [[-1, 1, -p], [-p e^{i theta/2}, p, 1]],
/// T_0 column (-x-y, (x-y) e^{-i theta/2}), T_1 column (-x+y, (x+y) e^{-i theta/2}).
template <class C>
SeedFactors<C> build_ST(const BasicFamilyParams<real_of<C>>& fp) {
  using R = real_of<C>;
  using std::polar;
  const C w = polar(R(1.0), fp.theta / R(2.0));
  const C w_conj = polar(R(1.0), -fp.theta / R(2.0));
  const C p(fp.p), one(1.0);
  SeedFactors<C> out;
  out.s[0] = BasicMatrix<C>{{p, one, -p}, {w, -p, -one}};
  out.s[1] = BasicMatrix<C>{{-one, one, -p}, {-p * w, p, one}};
  out.t_col[0] = BasicMatrix<C>::column({C(-fp.x - fp.y), C(fp.x - fp.y) * w_conj});
  out.t_col[1] = BasicMatrix<C>::column({C(-fp.x + fp.y), C(fp.x + fp.y) * w_conj});
  return out;
}

/// Fills the unknown 2x2 block T[:, 1:3] so that s psi' T^T = target * I,
/// given T's first column. Solves the 4x4 linear system by partial-pivot
/// elimination; throws PreconditionError("asterisk completion
/// underdetermined") if it is singular.
template <class C>
BasicMatrix<C> complete_T(const BasicMatrix<C>& s, const BasicMatrix<C>& psi_prime,
                          const BasicMatrix<C>& t_col, C target = C(0.25)) {
  using std::norm;
  detail::require(s.rows() == 2 && s.cols() == 3, "complete_T: S must be 2x3");
  detail::require(psi_prime.rows() == 3 && psi_prime.cols() == 3,
                  "complete_T: psi' must be 3x3");
  detail::require(t_col.rows() == 2 && t_col.cols() == 1, "complete_T: T column must be 2x1");
  const BasicMatrix<C> a = s * psi_prime;  // 2 x 3
  // Unknown u = (T[0,1], T[0,2], T[1,1], T[1,2]); equation (i, r):
  // sum_{c=1,2} a[i,c] T[r,c] = target [i == r] - a[i,0] T[r,0].
  std::array<std::array<C, 5>, 4> sys{};
  real_of<C> scale(0.0);
  for (int i = 0; i < 2; ++i)
    for (int r = 0; r < 2; ++r) {
      auto& row = sys[i * 2 + r];
      for (auto& z : row) z = C(0.0);
      row[r * 2 + 0] = a(i, 1);
      row[r * 2 + 1] = a(i, 2);
      row[4] = (i == r ? target : C(0.0)) - a(i, 0) * t_col[r];
      for (int c = 0; c < 4; ++c)
        if (norm(row[c]) > scale) scale = norm(row[c]);
    }
  const real_of<C> pivot_floor = real_of<C>(1e-26) * scale;  // squared moduli
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (norm(sys[r][col]) > norm(sys[piv][col])) piv = r;
    if (!(norm(sys[piv][col]) > pivot_floor) || !(scale > real_of<C>(0.0))) {
      throw PreconditionError("asterisk completion underdetermined");
    }
    std::swap(sys[piv], sys[col]);
    for (int r = col + 1; r < 4; ++r) {
      const C f = sys[r][col] / sys[col][col];
      for (int c = col; c < 5; ++c) sys[r][c] -= f * sys[col][c];
    }
  }
  std::array<C, 4> u{};
  for (int r = 3; r >= 0; --r) {
    C acc = sys[r][4];
    for (int c = r + 1; c < 4; ++c) acc -= sys[r][c] * u[c];
    u[r] = acc / sys[r][r];
  }
  BasicMatrix<C> t(2, 3);
  t(0, 0) = t_col[0];
  t(1, 0) = t_col[1];
  t(0, 1) = u[0];
  t(0, 2) = u[1];
  t(1, 1) = u[2];
  t(1, 2) = u[3];
  return t;
}

template <class C>
BasicMatrix<C> family_resource(const real_of<C>& c0) {
  using std::sqrt;
  using R = real_of<C>;
  const R side = sqrt((R(1.0) - c0) / R(2.0));
  std::vector<C> v(9, C(0.0));
  v[0] = C(sqrt(c0));
  v[4] = C(side);
  v[8] = C(side);
  return BasicMatrix<C>::column(std::move(v));
}

/// Seed factors with the Kraus normalization applied and T completed:
/// s[k] = S_k / 4 (1/sqrt 8 for the orbit, 1/sqrt 2 for the two seeds),
/// t[k] solves s[k] psi' t[k]^T = I/4.
template <class C>
struct CompletedFactors {
  std::array<BasicMatrix<C>, 2> s;
  std::array<BasicMatrix<C>, 2> t;
};

template <class C>
CompletedFactors<C> completed_factors(const BasicFamilyParams<real_of<C>>& fp) {
  const SeedFactors<C> seed = build_ST<C>(fp);
  SpaceDims d{2, 2, 2, 2, 3, 3};
  const BasicMatrix<C> psi_prime = state_to_map(family_resource<C>(fp.c0), d);
  CompletedFactors<C> out;
  for (int k = 0; k < 2; ++k) {
    out.s[k] = seed.s[k] * C(0.25);
    out.t[k] = complete_T(out.s[k], psi_prime, seed.t_col[k], C(0.25));
  }
  return out;
}

/// Kraus pair from S-side and T-side factors (already normalized):
/// E[iAbar, iA*3 + ia] = [iAbar == iA] s[iA, ia],
/// F[iBbar, iB*3 + ib] = [iBbar == iB] sum_c phi(iB, c) t[c, ib],
/// phi(iB, 1) = e^{i theta} for iB = 1, else 1.
template <class C>
KrausPair<C> family_kraus_pair(const BasicMatrix<C>& s, const BasicMatrix<C>& t,
                               const C& phase) {
  KrausPair<C> kp{BasicMatrix<C>(2, 6), BasicMatrix<C>(2, 6)};
  for (int i = 0; i < 2; ++i)
    for (int anc = 0; anc < 3; ++anc) {
      kp.e(i, i * 3 + anc) = s(i, anc);
      kp.f(i, i * 3 + anc) = t(0, anc) + (i == 1 ? phase : C(1.0)) * t(1, anc);
    }
  return kp;
}

/// Builds the 16-pair protocol for the given family parameters.
template <class C>
BasicSepProtocol<C> assemble_protocol(const BasicFamilyParams<real_of<C>>& fp) {
  using R = real_of<C>;
  using std::polar;
  const CompletedFactors<C> f = completed_factors<C>(fp);
  BasicSepProtocol<C> p;
  p.dims = SpaceDims{2, 2, 2, 2, 3, 3};
  p.resource = family_resource<C>(fp.c0);
  const C phase = polar(R(1.0), fp.theta);
  p.unitary = BasicMatrix<C>::diagonal({C(1.0), C(1.0), C(1.0), phase});
  const auto orbit = SymmetryGenerators<C>().orbit();
  for (int k = 0; k < 2; ++k)
    for (const auto& g : orbit) p.kraus.push_back(family_kraus_pair(f.s[k] * g, f.t[k] * g, phase));
  std::ostringstream os;
  os.precision(17);
  os << "x=" << static_cast<double>(fp.x) << " y=" << static_cast<double>(fp.y)
     << " c0=" << static_cast<double>(fp.c0) << " theta=" << static_cast<double>(fp.theta);
  p.meta["family"] = os.str();
  if (!fp.theta_symbolic.empty()) p.meta["theta_symbolic"] = fp.theta_symbolic;
  return p;
}

/// The protocol at x = 9/5, y = -3/5, c0 = 0.81, theta = 2 arccos(35/36).
template <class C = Complex>
BasicSepProtocol<C> exact_solution() {
  auto p = assemble_protocol<C>(exact_params<real_of<C>>());
  p.meta["name"] = "sub-ebit SEP controlled-phase protocol";
  return p;
}

}  // namespace sepgate
