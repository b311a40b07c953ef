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
 * @file protocol.hpp
 * Separable-operation protocols implementing a bipartite unitary with an
 * entangled resource, and their verification: the closure condition
 * sum_k (E_k (x) F_k)^dagger (E_k (x) F_k) = I, the deterministic
 * condition (E_k (x) F_k)|psi> = alpha_k U, and the chain of identities
 * that forces D_psi >= D_U and, when the ranks are equal, a uniformly
 * entangled resource.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepgate/matrix.hpp"
#include "sepgate/tensor.hpp"

namespace sepgate {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr double kDefaultChainTol = 1e-8;

template <class C>
struct KrausPair {
  BasicMatrix<C> e;  // dAbar x (dA*da)
  BasicMatrix<C> f;  // dBbar x (dB*db)
};

template <class C>
struct BasicSepProtocol {
  SpaceDims dims;
  BasicMatrix<C> resource;  // column of length da*db
  BasicMatrix<C> unitary;   // (dAbar*dBbar) x (dA*dB)
  std::vector<KrausPair<C>> kraus;
  std::map<std::string, std::string> meta;

  /// Shape checks only; throws DimensionError.
  void validate_shapes() const {
    dims.validate();
    detail::require(resource.cols() == 1 && resource.rows() == dims.resource_dim(),
                    "resource is " + resource.shape_string() + ", expected " +
                        std::to_string(dims.resource_dim()) + "x1");
    detail::require(unitary.rows() == dims.output_dim() && unitary.cols() == dims.input_dim(),
                    "unitary is " + unitary.shape_string());
    detail::require(!kraus.empty(), "protocol has no Kraus pairs");
    for (const auto& k : kraus) require_kraus_shapes(k.e, k.f, dims);
  }
};

using SepProtocol = BasicSepProtocol<Complex>;
using SepProtocolDD = BasicSepProtocol<DDComplex>;

/// Throws PreconditionError unless the resource is normalized and the
/// unitary satisfies U^dagger U = I, both within `tol`.
void validate_protocol(const SepProtocol& p, double tol = 1e-8);

/// sum_k M_k^dagger M_k - I, with M_k the product Kraus operator on the
/// (A, B, a, b) input ordering (see kraus_embed).
template <class C>
BasicMatrix<C> closure_defect(const BasicSepProtocol<C>& p) {
  p.validate_shapes();
  const std::size_t n = p.dims.input_dim() * p.dims.resource_dim();
  BasicMatrix<C> acc(n, n);
  for (const auto& k : p.kraus) {
    const BasicMatrix<C> m = kraus_embed(k.e, k.f, p.dims);
    acc += m.adjoint() * m;
  }
  acc -= BasicMatrix<C>::identity(n);
  return acc;
}

/// Frobenius norm of closure_defect.
template <class C>
real_of<C> check_closure(const BasicSepProtocol<C>& p) {
  return closure_defect(p).frobenius_norm();
}

template <class C>
struct DeterminismResult {
  std::vector<C> alphas;
  std::vector<BasicMatrix<C>> deviations;  // G_k - alpha_k U
  real_of<C> residual{};                   // max_k |G_k - alpha_k U|_F
  real_of<C> alpha_norm_defect{};          // |sum_k |alpha_k|^2 - 1|
};

/// alpha_k is the Frobenius projection <U, G_k> / |U|_F^2 of
/// G_k = (E_k (x) F_k)|psi> onto U.
template <class C>
DeterminismResult<C> check_deterministic(const BasicSepProtocol<C>& p) {
  using std::abs;
  using std::norm;
  p.validate_shapes();
  DeterminismResult<C> out;
  const real_of<C> u_norm2 = p.unitary.frobenius_norm_squared();
  real_of<C> alpha_sum(0.0);
  for (const auto& k : p.kraus) {
    BasicMatrix<C> g = contract_resource(k.e, k.f, p.resource, p.dims);
    const C alpha = p.unitary.frobenius_inner(g) / C(u_norm2);
    g -= p.unitary * alpha;
    const real_of<C> r = g.frobenius_norm();
    if (r > out.residual) out.residual = r;
    alpha_sum += norm(alpha);
    out.alphas.push_back(alpha);
    out.deviations.push_back(std::move(g));
  }
  out.alpha_norm_defect = abs(alpha_sum - real_of<C>(1.0));
  return out;
}

struct UniformityCheck {
  double uniformity_residual = 0.0;     // |sum|alpha|^2 psi_hat^-1 - D psi_hat^dagger|_F
  double psi_hat_residual = 0.0;  // |psi_hat - I/sqrt(D)|_F
  std::vector<double> coefficients;
  bool uniform = false;
};

struct VerificationReport {
  double tol = kDefaultTol;
  double chain_tol = kDefaultChainTol;
  double closure_residual = 0.0;
  double determinism_residual = 0.0;
  std::vector<Complex> alphas;
  double alpha_norm_defect = 0.0;
  bool chain_evaluated = false;
  std::map<std::string, double> chain_residuals;  // keyed by identity name
  std::size_t d_psi = 0;
  std::size_t d_u = 0;
  std::optional<UniformityCheck> uniformity;  // only when D_psi == D_U
  bool passed = false;
};

/// Closure and determinism residuals; with `with_chain` also the identity
/// chain (only evaluated when the first two pass).
VerificationReport verify(const SepProtocol& p, double tol = kDefaultTol,
                          bool with_chain = false, double chain_tol = kDefaultChainTol);

/// Evaluates every identity of the rank / uniformity argument. Requires the
/// closure and deterministic conditions to hold at `tol` (PreconditionError
/// otherwise); throws PreconditionError("U-hat singular") if the restricted
/// U' is numerically singular.
VerificationReport proof_chain(const SepProtocol& p, double tol = kDefaultTol,
                               double chain_tol = kDefaultChainTol);

struct TheoremResult {
  std::size_t d_psi = 0;
  std::size_t d_u = 0;
  bool rank_clause_holds = false;       // D_psi >= D_U
  bool uniform_clause_applies = false;  // D_psi == D_U
  bool uniform_clause_holds = false;    // resource uniformly entangled
  std::vector<double> schmidt_coefficients;
};

/// Checks the rank inequality and, at equal ranks, uniformity of the
/// resource. Throws PreconditionError("not a valid deterministic SEP
/// implementation ...") when closure or determinism fails at `tol`.
TheoremResult assert_theorem(const SepProtocol& p, double tol = kDefaultTol);

/// Teleportation-style one-ebit protocol for diag(1, 1, 1, e^{i phi}) on
/// two qubits: Bell resource, four Kraus pairs indexed by (x, z), each
/// with alpha = 1/2.
SepProtocol canonical_one_ebit_protocol(double phi);

/// diag(1, 1, 1, e^{i phi}).
CMatrix controlled_phase(double phi);

}  // namespace sepgate
