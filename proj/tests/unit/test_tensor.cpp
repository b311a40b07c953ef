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

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sepgate/appendix.hpp"
#include "sepgate/error.hpp"
#include "sepgate/protocol.hpp"
#include "sepgate/tensor.hpp"

using namespace sepgate;

namespace {

double reconstruction_error(const CMatrix& a, const SvdResult& s) {
  CMatrix sigma(s.singulars.size(), s.singulars.size());
  for (std::size_t i = 0; i < s.singulars.size(); ++i) sigma(i, i) = s.singulars[i];
  return (s.left * sigma * s.right.adjoint() - a).frobenius_norm();
}

double orthonormality_error(const CMatrix& q) {
  return (q.adjoint() * q - CMatrix::identity(q.cols())).frobenius_norm();
}

SpaceDims qubits(std::size_t da = 2, std::size_t db = 2) { return {2, 2, 2, 2, da, db}; }

const double kTheta = 2.0 * std::acos(35.0 / 36.0);

}  // namespace

TEST_SUITE("svd") {
  TEST_CASE("diagonal rank one") {
    const auto s = svd(CMatrix{{3.0, 0.0}, {0.0, 0.0}});
    CHECK(s.singulars[0] == doctest::Approx(3.0));
    CHECK(s.singulars[1] == doctest::Approx(0.0));
    CHECK(s.rank == 1);
  }

  TEST_CASE("permutation") {
    const auto s = svd(CMatrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(s.singulars[0] == doctest::Approx(1.0));
    CHECK(s.singulars[1] == doctest::Approx(1.0));
    CHECK(s.rank == 2);
  }

  TEST_CASE("singular values squared match Gram eigenvalues") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 20; ++t) {
      const CMatrix a = oracle::random_matrix(3, 2, rng);
      const auto [l0, l1] = oracle::hermitian2_eigenvalues(a.adjoint() * a);
      const auto s = svd(a);
      CHECK(std::abs(s.singulars[0] * s.singulars[0] - l0) < 1e-10);
      CHECK(std::abs(s.singulars[1] * s.singulars[1] - l1) < 1e-10);
    }
  }

  TEST_CASE("orthonormal factors and reconstruction up to 16x16") {
    std::mt19937_64 rng(5);
    for (std::size_t r : {1u, 2u, 3u, 7u, 16u})
      for (std::size_t c : {1u, 4u, 9u, 16u}) {
        const CMatrix a = oracle::random_matrix(r, c, rng);
        const auto s = svd(a);
        CAPTURE(r);
        CAPTURE(c);
        CHECK(orthonormality_error(s.left) < 1e-12);
        CHECK(orthonormality_error(s.right) < 1e-12);
        CHECK(reconstruction_error(a, s) < 1e-12 * s.singulars.front());
        for (std::size_t i = 1; i < s.singulars.size(); ++i) CHECK(s.singulars[i] <= s.singulars[i - 1]);
      }
  }

  TEST_CASE("rank deficient input keeps complete orthonormal factors") {
    std::mt19937_64 rng(9);
    const CMatrix u = oracle::random_matrix(6, 2, rng), v = oracle::random_matrix(2, 5, rng);
    const CMatrix a = u * v;
    const auto s = svd(a);
    CHECK(s.rank == 2);
    CHECK(orthonormality_error(s.left) < 1e-12);
    CHECK(reconstruction_error(a, s) < 1e-12 * s.singulars.front());
  }

  TEST_CASE("phase convention") {
    std::mt19937_64 rng(3);
    const CMatrix a = oracle::random_matrix(4, 3, rng);
    const auto s = svd(a);
    for (std::size_t k = 0; k < s.left.cols(); ++k) {
      for (std::size_t r = 0; r < s.left.rows(); ++r) {
        if (std::abs(s.left(r, k)) > kDefaultRankTol) {
          CHECK(std::abs(s.left(r, k).imag()) < 1e-14);
          CHECK(s.left(r, k).real() > 0.0);
          break;
        }
      }
    }
    const auto again = svd(a);
    CHECK(again.left == s.left);
    CHECK(again.right == s.right);
  }

  TEST_CASE("rejects non-finite input") {
    CMatrix a{{1.0, std::numeric_limits<double>::quiet_NaN()}};
    CHECK_THROWS_WITH_AS(svd(a), doctest::Contains("invalid matrix"), InvalidMatrixError);
    a(0, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(svd(a), InvalidMatrixError);
  }
}

TEST_SUITE("duality") {
  TEST_CASE("state_to_map examples") {
    const double h = 1.0 / std::sqrt(2.0);
    CHECK(oracle::max_abs_diff(state_to_map(CMatrix::column({h, 0.0, 0.0, h}), qubits()),
                               CMatrix::identity(2) * Complex(h)) == 0.0);
    const double side = std::sqrt(0.095);
    const CMatrix psi = CMatrix::column({0.9, 0, 0, 0, side, 0, 0, 0, side});
    CHECK(oracle::max_abs_diff(state_to_map(psi, qubits(3, 3)),
                               CMatrix::diagonal({0.9, side, side})) == 0.0);
    CHECK(state_to_map(CMatrix::column({1.0, 0, 0, 0}), qubits()) == CMatrix{{1.0, 0.0}, {0.0, 0.0}});
    CHECK_THROWS_AS(state_to_map(CMatrix::column({1.0, 0, 0}), qubits()), DimensionError);
  }

  TEST_CASE("unitary_to_map examples") {
    const auto cz = unitary_to_map(controlled_phase(std::numbers::pi), qubits());
    const auto s = svd(cz);
    CHECK(s.rank == 2);
    CHECK(s.singulars[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.singulars[1] == doctest::Approx(std::sqrt(2.0)));
    const auto id = svd(unitary_to_map(CMatrix::identity(4), qubits()));
    CHECK(id.rank == 1);
    CHECK(id.singulars[0] == doctest::Approx(2.0));
    CHECK(svd(unitary_to_map(controlled_phase(kTheta), qubits())).rank == 2);
    CHECK_THROWS_AS(unitary_to_map(CMatrix::identity(3), qubits()), DimensionError);
  }

  TEST_CASE("index conventions on unequal dimensions") {
    std::mt19937_64 rng(21);
    const SpaceDims d{2, 3, 3, 2, 2, 4};
    const CMatrix u = oracle::random_matrix(6, 6, rng);
    const CMatrix up = unitary_to_map(u, d);
    REQUIRE(up.rows() == d.dA * d.dAbar);
    REQUIRE(up.cols() == d.dB * d.dBbar);
    for (std::size_t i = 0; i < d.dA; ++i)
      for (std::size_t j = 0; j < d.dAbar; ++j)
        for (std::size_t m = 0; m < d.dB; ++m)
          for (std::size_t n = 0; n < d.dBbar; ++n)
            CHECK(up(i * d.dAbar + j, m * d.dBbar + n) == u(j * d.dBbar + n, i * d.dB + m));

    const CMatrix e = oracle::random_matrix(d.dAbar, d.dA * d.da, rng);
    const CMatrix f = oracle::random_matrix(d.dBbar, d.dB * d.db, rng);
    const auto dual = kraus_dualize(e, f, d);
    for (std::size_t i = 0; i < d.dA; ++i)
      for (std::size_t j = 0; j < d.dAbar; ++j)
        for (std::size_t m = 0; m < d.da; ++m) CHECK(dual.e_prime(i * d.dAbar + j, m) == e(j, i * d.da + m));
    for (std::size_t i = 0; i < d.dB; ++i)
      for (std::size_t j = 0; j < d.dBbar; ++j)
        for (std::size_t m = 0; m < d.db; ++m)
          CHECK(dual.f_prime_t(m, i * d.dBbar + j) == f(j, i * d.db + m));
  }

  TEST_CASE("reshapes preserve norms") {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 10; ++t) {
      const CMatrix psi = oracle::random_matrix(6, 1, rng);
      const SpaceDims d{2, 2, 2, 2, 2, 3};
      CHECK(state_to_map(psi, d).frobenius_norm() == doctest::Approx(psi.frobenius_norm()).epsilon(1e-14));
      const CMatrix u = oracle::random_unitary(4, rng);
      CHECK(unitary_to_map(u, d).frobenius_norm() == doctest::Approx(u.frobenius_norm()).epsilon(1e-14));
    }
  }

  TEST_CASE("kraus_dualize of I (x) <0|") {
    const SpaceDims d = qubits();
    CMatrix e(2, 4);
    e(0, 0) = 1.0;  // |0><0|_A <0|_a
    e(1, 2) = 1.0;  // |1><1|_A <0|_a
    const auto dual = kraus_dualize(e, CMatrix(2, 4), d);
    CHECK(dual.e_prime == CMatrix{{1.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}, {1.0, 0.0}});
  }

  TEST_CASE("dualize round trip is exact") {
    std::mt19937_64 rng(4);
    const SpaceDims d{3, 2, 2, 3, 2, 3};
    const CMatrix e = oracle::random_matrix(d.dAbar, d.dA * d.da, rng);
    const CMatrix f = oracle::random_matrix(d.dBbar, d.dB * d.db, rng);
    const auto [e2, f2] = kraus_undualize(kraus_dualize(e, f, d), d);
    CHECK(e2 == e);
    CHECK(f2 == f);
    CHECK_THROWS_AS(kraus_dualize(f, e, d), DimensionError);
  }

  TEST_CASE("dual identity holds for every sub-ebit pair") {
    const SepProtocol p = exact_solution();
    const auto det = check_deterministic(p);
    const CMatrix psi_p = state_to_map(p.resource, p.dims);
    const CMatrix u_p = unitary_to_map(p.unitary, p.dims);
    for (std::size_t k = 0; k < p.kraus.size(); ++k) {
      const auto dual = kraus_dualize(p.kraus[k].e, p.kraus[k].f, p.dims);
      CHECK((dual.e_prime * psi_p * dual.f_prime_t - u_p * det.alphas[k]).frobenius_norm() < 1e-10);
    }
  }
}

TEST_SUITE("contract_resource") {
  TEST_CASE("no ancilla") {
    const auto p = oracle::trivial_protocol();
    const CMatrix g = contract_resource(p.kraus[0].e, p.kraus[0].f, p.resource, p.dims);
    CHECK(g == CMatrix::identity(4));
  }

  TEST_CASE("matches brute-force Kronecker contraction") {
    std::mt19937_64 rng(17);
    const SpaceDims d{2, 3, 3, 2, 2, 3};
    for (int t = 0; t < 5; ++t) {
      const CMatrix e = oracle::random_matrix(d.dAbar, d.dA * d.da, rng);
      const CMatrix f = oracle::random_matrix(d.dBbar, d.dB * d.db, rng);
      const CMatrix psi = oracle::random_matrix(d.da * d.db, 1, rng);
      const CMatrix want = oracle::brute_force_contraction(e, f, psi, d.dA, d.dB, d.da, d.db);
      CHECK(oracle::max_abs_diff(contract_resource(e, f, psi, d), want) < 1e-13);
    }
  }

  TEST_CASE("fixture branches are proportional to U with modulus one half") {
    const SepProtocol p = canonical_one_ebit_protocol(0.7);
    for (const auto& k : p.kraus) {
      const CMatrix g = oracle::brute_force_contraction(k.e, k.f, p.resource, 2, 2, 2, 2);
      const Complex alpha = g(0, 0);
      CHECK(std::abs(alpha) == doctest::Approx(0.5));
      CHECK((g - p.unitary * alpha).frobenius_norm() < 1e-14);
      CHECK(oracle::max_abs_diff(contract_resource(k.e, k.f, p.resource, p.dims), g) < 1e-15);
    }
  }

  TEST_CASE("sub-ebit pairs are proportional to U") {
    const SepProtocol p = exact_solution();
    double total = 0.0;
    for (const auto& k : p.kraus) {
      const CMatrix g = contract_resource(k.e, k.f, p.resource, p.dims);
      const Complex alpha = p.unitary.frobenius_inner(g) / 4.0;
      CHECK((g - p.unitary * alpha).frobenius_norm() < 1e-10);
      total += std::norm(alpha);
    }
    CHECK(std::abs(total - 1.0) < 1e-10);
  }
}

TEST_SUITE("restrict_support_range") {
  TEST_CASE("full-rank diagonal resource") {
    const double side = std::sqrt(0.095);
    const CMatrix m = CMatrix::diagonal({0.9, side, side});
    const auto r = restrict_support_range(m);
    REQUIRE(r.hat.rows() == 3);
    CHECK(std::abs(r.hat(0, 0)) == doctest::Approx(0.9));
    CHECK((r.range_basis * r.hat * r.support_basis.adjoint() - m).frobenius_norm() < 1e-12);
  }

  TEST_CASE("controlled phase restricts to an invertible 2x2") {
    const auto r = restrict_support_range(unitary_to_map(controlled_phase(kTheta), qubits()));
    REQUIRE(r.hat.rows() == 2);
    CHECK((inverse(r.hat) * r.hat - CMatrix::identity(2)).frobenius_norm() < 1e-12);
  }

  TEST_CASE("rank one gives its singular value") {
    std::mt19937_64 rng(2);
    const CMatrix m = oracle::random_matrix(3, 1, rng) * oracle::random_matrix(1, 4, rng);
    const auto r = restrict_support_range(m);
    REQUIRE(r.hat.rows() == 1);
    CHECK(r.hat(0, 0).real() == doctest::Approx(svd(m).singulars[0]).epsilon(1e-12));
    CHECK(std::abs(r.hat(0, 0).imag()) < 1e-12);
  }

  TEST_CASE("zero matrix") {
    CHECK_THROWS_WITH_AS(restrict_support_range(CMatrix(3, 3)), doctest::Contains("rank zero"),
                         PreconditionError);
  }

  TEST_CASE("bases orthonormal and reconstruction on random low-rank input") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 10; ++t) {
      const CMatrix m = oracle::random_matrix(5, 3, rng) * oracle::random_matrix(3, 6, rng);
      const auto r = restrict_support_range(m);
      CHECK(r.hat.rows() == 3);
      CHECK(orthonormality_error(r.range_basis) < 1e-12);
      CHECK(orthonormality_error(r.support_basis) < 1e-12);
      CHECK((r.range_basis * r.hat * r.support_basis.adjoint() - m).frobenius_norm() < 1e-10);
    }
  }
}

TEST_CASE("rank of a product never exceeds its factors") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> pick(1, 4);
  for (int t = 0; t < 50; ++t) {
    const int ra = pick(rng), rp = pick(rng), rf = pick(rng);
    const CMatrix ep = oracle::random_matrix(6, ra, rng) * oracle::random_matrix(ra, 4, rng);
    const CMatrix psi = oracle::random_matrix(4, rp, rng) * oracle::random_matrix(rp, 4, rng);
    const CMatrix ft = oracle::random_matrix(4, rf, rng) * oracle::random_matrix(rf, 5, rng);
    const std::size_t lhs = svd(ep * psi * ft).rank;
    CHECK(lhs <= std::min({svd(ep).rank, svd(psi).rank, svd(ft).rank}));
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(12);
  const CMatrix a = oracle::random_matrix(5, 5, rng);
  CHECK((inverse(a) * a - CMatrix::identity(5)).frobenius_norm() < 1e-12);
  CHECK_THROWS_AS(inverse(CMatrix(2, 2)), PreconditionError);
}
