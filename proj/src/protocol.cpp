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

#include "sepgate/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sepgate/entanglement.hpp"

namespace sepgate {

void validate_protocol(const SepProtocol& p, double tol) {
  p.validate_shapes();
  const double nrm = p.resource.frobenius_norm();
  if (std::abs(nrm - 1.0) > tol) {
    std::ostringstream os;
    os.precision(17);
    os << "resource state is not normalized: norm = " << nrm;
    throw PreconditionError(os.str());
  }
  const CMatrix defect =
      p.unitary.adjoint() * p.unitary - CMatrix::identity(p.dims.input_dim());
  if (defect.frobenius_norm() > tol) {
    std::ostringstream os;
    os << "unitary is not unitary: |U^dagger U - I|_F = " << defect.frobenius_norm();
    throw PreconditionError(os.str());
  }
}

namespace {

// Builds T[r*rows_b + q, p*cols_b + c] = a[r, p] * b[q, c] summed with
// weights, i.e. sum_k w_k kron(a_k, b_k); the layout is the 4-index
// tensor {out(a), out(b), in(a), in(b)} flattened.
void add_weighted_kron(CMatrix& acc, Complex w, const CMatrix& a, const CMatrix& b) {
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const Complex wa = w * a(r, p);
      if (wa == Complex(0.0)) continue;
      for (std::size_t q = 0; q < b.rows(); ++q)
        for (std::size_t c = 0; c < b.cols(); ++c)
          acc(r * b.rows() + q, p * b.cols() + c) += wa * b(q, c);
    }
}

// R[r*dq + q, p*dc + c] = conj(psi[p, q]) * u[r, c]: psi^dagger (x) U laid
// out on the same 4-index tensor as add_weighted_kron(E', F'T).
CMatrix psi_dagger_times_u(const CMatrix& psi, const CMatrix& u) {
  const std::size_t dp = psi.rows(), dq = psi.cols();
  CMatrix out(u.rows() * dq, dp * u.cols());
  for (std::size_t r = 0; r < u.rows(); ++r)
    for (std::size_t q = 0; q < dq; ++q)
      for (std::size_t p = 0; p < dp; ++p)
        for (std::size_t c = 0; c < u.cols(); ++c)
          out(r * dq + q, p * u.cols() + c) = std::conj(psi(p, q)) * u(r, c);
  return out;
}

}  // namespace

VerificationReport verify(const SepProtocol& p, double tol, bool with_chain,
                          double chain_tol) {
  VerificationReport rep;
  rep.tol = tol;
  rep.chain_tol = chain_tol;
  rep.closure_residual = check_closure(p);
  const auto det = check_deterministic(p);
  rep.determinism_residual = det.residual;
  rep.alphas = det.alphas;
  rep.alpha_norm_defect = det.alpha_norm_defect;
  rep.d_psi = svd(state_to_map(p.resource, p.dims)).rank;
  rep.d_u = svd(unitary_to_map(p.unitary, p.dims)).rank;
  rep.passed = rep.closure_residual < tol && rep.determinism_residual < tol &&
               rep.alpha_norm_defect < tol;
  if (with_chain && rep.passed) return proof_chain(p, tol, chain_tol);
  return rep;
}

VerificationReport proof_chain(const SepProtocol& p, double tol, double chain_tol) {
  VerificationReport rep;
  rep.tol = tol;
  rep.chain_tol = chain_tol;
  rep.closure_residual = check_closure(p);
  const auto det = check_deterministic(p);
  rep.determinism_residual = det.residual;
  rep.alphas = det.alphas;
  rep.alpha_norm_defect = det.alpha_norm_defect;
  if (!(rep.closure_residual < tol && rep.determinism_residual < tol)) {
    throw PreconditionError(
        "proof chain requires a valid deterministic SEP implementation "
        "(closure and determinism residuals below tol)");
  }

  const SpaceDims& d = p.dims;
  const std::vector<Complex>& alpha = det.alphas;
  const CMatrix psi_prime = state_to_map(p.resource, d);
  const CMatrix u_prime = unitary_to_map(p.unitary, d);
  std::vector<DualKraus<Complex>> duals;
  duals.reserve(p.kraus.size());
  for (const auto& k : p.kraus) duals.push_back(kraus_dualize(k.e, k.f, d));

  // E'_k psi' F'T_k = alpha_k U'
  double worst_dual = 0.0;
  for (std::size_t k = 0; k < duals.size(); ++k) {
    CMatrix lhs = duals[k].e_prime * psi_prime * duals[k].f_prime_t;
    lhs -= u_prime * alpha[k];
    worst_dual = std::max(worst_dual, lhs.frobenius_norm());
  }
  rep.chain_residuals["dual_kraus"] = worst_dual;

  // sum_k alpha_k^* U^dagger (E_k (x) F_k) = <psi| (x) I_AB
  // sum_k alpha_k^* (E_k (x) F_k) = <psi| (x) U
  const CMatrix bra_psi = p.resource.adjoint();
  CMatrix sum_m(d.output_dim(), d.input_dim() * d.resource_dim());
  for (std::size_t k = 0; k < p.kraus.size(); ++k)
    sum_m += kraus_embed(p.kraus[k].e, p.kraus[k].f, d) * std::conj(alpha[k]);
  rep.chain_residuals["adjoint_sum"] =
      (p.unitary.adjoint() * sum_m - kron(CMatrix::identity(d.input_dim()), bra_psi))
          .frobenius_norm();
  rep.chain_residuals["kraus_sum"] = (sum_m - kron(p.unitary, bra_psi)).frobenius_norm();

  // sum_k alpha_k^* E'_k (x) F'T_k = psi'^dagger (x) U', compared as
  // tensors over {out(A Abar), out(b), in(a), in(B Bbar)}.
  CMatrix dual_sum(u_prime.rows() * d.db, d.da * u_prime.cols());
  for (std::size_t k = 0; k < duals.size(); ++k)
    add_weighted_kron(dual_sum, std::conj(alpha[k]), duals[k].e_prime, duals[k].f_prime_t);
  rep.chain_residuals["dual_sum"] = (dual_sum - psi_dagger_times_u(psi_prime, u_prime)).frobenius_norm();

  // Restrictions to supports and ranges.
  const Restriction ru = restrict_support_range(u_prime);
  const Restriction rpsi = restrict_support_range(psi_prime);
  rep.d_u = ru.hat.rows();
  rep.d_psi = rpsi.hat.rows();
  {
    const SvdResult s = svd(ru.hat);
    if (!(s.singulars.back() > kDefaultRankTol * s.singulars.front())) {
      throw PreconditionError("U-hat singular");
    }
  }
  const CMatrix& u_hat = ru.hat;
  const CMatrix& psi_hat = rpsi.hat;
  const CMatrix u_hat_inv = inverse(u_hat);
  const CMatrix range_u_adj = ru.range_basis.adjoint();
  const CMatrix support_psi_adj = rpsi.support_basis.adjoint();

  std::vector<CMatrix> e_hat, f_hat_t;
  for (const auto& dual : duals) {
    e_hat.push_back(range_u_adj * dual.e_prime * rpsi.range_basis);
    f_hat_t.push_back(support_psi_adj * dual.f_prime_t * ru.support_basis);
  }

  // sum_k alpha_k^* E_hat_k (x) F_hat_T_k = psi_hat^dagger (x) U_hat
  CMatrix hat_sum(rep.d_u * rep.d_psi, rep.d_psi * rep.d_u);
  for (std::size_t k = 0; k < e_hat.size(); ++k)
    add_weighted_kron(hat_sum, std::conj(alpha[k]), e_hat[k], f_hat_t[k]);
  rep.chain_residuals["restricted_sum"] = (hat_sum - psi_dagger_times_u(psi_hat, u_hat)).frobenius_norm();

  // sum_k alpha_k^* F_hat_T_k U_hat^-1 E_hat_k = D_U psi_hat^dagger
  CMatrix contraction(rep.d_psi, rep.d_psi);
  for (std::size_t k = 0; k < e_hat.size(); ++k)
    contraction += f_hat_t[k] * u_hat_inv * e_hat[k] * std::conj(alpha[k]);
  rep.chain_residuals["inverse_contraction"] =
      (contraction - psi_hat.adjoint() * Complex(static_cast<double>(rep.d_u))).frobenius_norm();

  // E_hat_k psi_hat F_hat_T_k = alpha_k U_hat
  double worst_hat = 0.0;
  for (std::size_t k = 0; k < e_hat.size(); ++k)
    worst_hat = std::max(worst_hat, (e_hat[k] * psi_hat * f_hat_t[k] - u_hat * alpha[k]).frobenius_norm());
  rep.chain_residuals["restricted_kraus"] = worst_hat;

  // At equal ranks: sum|alpha|^2 psi_hat^-1 = D psi_hat^dagger, so
  // psi_hat = I / sqrt(D).
  if (rep.d_psi == rep.d_u) {
    UniformityCheck uc;
    double weight = 0.0;
    for (const auto& a : alpha) weight += std::norm(a);
    const double dim = static_cast<double>(rep.d_psi);
    uc.uniformity_residual = (inverse(psi_hat) * Complex(weight) - psi_hat.adjoint() * Complex(dim))
                           .frobenius_norm();
    uc.psi_hat_residual =
        (psi_hat - CMatrix::identity(rep.d_psi) * Complex(1.0 / std::sqrt(dim))).frobenius_norm();
    for (std::size_t i = 0; i < rep.d_psi; ++i) uc.coefficients.push_back(psi_hat(i, i).real());
    uc.uniform = is_uniform(uc.coefficients);
    rep.uniformity = uc;
  }

  rep.chain_evaluated = true;
  bool ok = rep.closure_residual < tol && rep.determinism_residual < tol &&
            rep.alpha_norm_defect < tol;
  for (const auto& [key, r] : rep.chain_residuals) ok = ok && r < chain_tol;
  if (rep.uniformity) ok = ok && rep.uniformity->uniformity_residual < chain_tol;
  rep.passed = ok;
  return rep;
}

TheoremResult assert_theorem(const SepProtocol& p, double tol) {
  const double closure = check_closure(p);
  const auto det = check_deterministic(p);
  if (!(closure < tol && det.residual < tol)) {
    std::ostringstream os;
    os << "not a valid deterministic SEP implementation (closure residual " << closure
       << ", determinism residual " << det.residual << ", tol " << tol << ")";
    throw PreconditionError(os.str());
  }
  TheoremResult out;
  const auto state = schmidt_state(p.resource, p.dims.da, p.dims.db);
  const auto op = schmidt_operator(p.unitary, p.dims);
  out.d_psi = state.rank;
  out.d_u = op.rank;
  out.schmidt_coefficients = state.coefficients;
  out.rank_clause_holds = out.d_psi >= out.d_u;
  out.uniform_clause_applies = out.d_psi == out.d_u;
  if (out.uniform_clause_applies) out.uniform_clause_holds = is_uniform(state.coefficients);
  return out;
}

CMatrix controlled_phase(double phi) {
  return CMatrix::diagonal({1.0, 1.0, 1.0, std::polar(1.0, phi)});
}

SepProtocol canonical_one_ebit_protocol(double phi) {
  SepProtocol p;
  p.dims = SpaceDims{2, 2, 2, 2, 2, 2};
  const double h = 1.0 / std::numbers::sqrt2;
  p.resource = CMatrix::column({h, 0.0, 0.0, h});
  p.unitary = controlled_phase(phi);
  for (int x = 0; x < 2; ++x) {
    for (int z = 0; z < 2; ++z) {
      CMatrix e(2, 4), f(2, 4);
      for (int ia = 0; ia < 2; ++ia) {
        // E_{x,z}|i_A, i_a> = [i_a = x xor i_A] (-1)^{z i_A} |i_A>
        for (int anc = 0; anc < 2; ++anc)
          if (anc == (x ^ ia)) e(ia, ia * 2 + anc) = (z && ia) ? -1.0 : 1.0;
        // F_{x,z}|i_B, i_b> = (-1)^{z (i_b xor x)} e^{i phi (i_b xor x) i_B} |i_B> / sqrt 2
        const int ib = ia;
        for (int anc = 0; anc < 2; ++anc) {
          const int bit = anc ^ x;
          const double sign = (z && bit) ? -1.0 : 1.0;
          f(ib, ib * 2 + anc) = h * sign * std::polar(1.0, phi * bit * ib);
        }
      }
      p.kraus.push_back({std::move(e), std::move(f)});
    }
  }
  p.meta["name"] = "canonical one-ebit controlled-phase protocol";
  return p;
}

}  // namespace sepgate
