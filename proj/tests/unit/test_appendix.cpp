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
#include <cstdint>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "sepgate/appendix.hpp"
#include "sepgate/entanglement.hpp"
#include "sepgate/error.hpp"

using namespace sepgate;

using oracle::Frac;

namespace {

const double kTheta = 2.0 * std::acos(35.0 / 36.0);

double dd_err(const DoubleDouble& a, std::int64_t n, std::int64_t d) {
  return static_cast<double>(abs(a - DoubleDouble::from_ratio(n, d)));
}

CMatrix exact_psi_prime() {
  return state_to_map(family_resource<Complex>(0.81), SpaceDims{2, 2, 2, 2, 3, 3});
}

}  // namespace

TEST_SUITE("family_params") {
  TEST_CASE("exact point gives s = 4/5 and p = 1/2") {
    // cos(theta/2) = 35/36 exactly; rational evaluation of the s formula.
    const Frac x(9, 5), y(-3, 5), h(35, 36);
    const Frac s = x * x * (Frac(1) - h) + y * y * (Frac(1) + h);
    CHECK(s == Frac(4, 5));
    const Frac p2 = (Frac(1) - s) / s;
    CHECK(p2 == Frac(1, 4));

    const auto fp = exact_params<double>();
    CHECK(std::abs(fp.s - 0.8) <= 4e-16);
    CHECK(std::abs(fp.p - 0.5) <= 4e-16);
    const auto dd = exact_params<DoubleDouble>();
    CHECK(dd_err(dd.s, s.n, s.d) < 1e-30);
    CHECK(dd_err(dd.p, 1, 2) < 1e-30);
    CHECK(fp.theta == doctest::Approx(kTheta).epsilon(1e-16));
    CHECK(fp.theta_symbolic == "2*acos(35/36)");
  }

  TEST_CASE("theta = 0 leaves s = 2 y^2") {
    const auto fp = family_params(5.0, 0.3, 0.0);
    CHECK(fp.s == doctest::Approx(2 * 0.09));
  }

  TEST_CASE("x = y collapses to s = 2 x^2") {
    const double x = 0.4;
    const auto fp = family_params(x, x, 1.234);
    CHECK(fp.s == doctest::Approx(2 * x * x));
    CHECK(fp.p == doctest::Approx(std::sqrt((1 - 2 * x * x) / (2 * x * x))));
  }

  TEST_CASE("p undefined outside (0, 1)") {
    CHECK_THROWS_WITH_AS(family_params(2.0, 2.0, kTheta), doctest::Contains("p undefined"), PreconditionError);
    CHECK_THROWS_WITH_AS(family_params(0.0, 0.0, kTheta), doctest::Contains("p undefined"), PreconditionError);
    CHECK_THROWS_AS(family_params(1.8, -0.6, 1.2, kTheta), PreconditionError);
  }

  TEST_CASE("s invariances") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.6, 0.6), t(-3.0, 3.0);
    for (int i = 0; i < 50; ++i) {
      const double x = u(rng), y = u(rng), th = t(rng);
      const double s = family_params(x, y, th).s;
      CHECK(family_params(-x, -y, th).s == doctest::Approx(s).epsilon(1e-15));
      CHECK(family_params(x, y, -th).s == doctest::Approx(s).epsilon(1e-15));
    }
  }
}

TEST_SUITE("build_ST") {
  TEST_CASE("exact point entries") {
    const auto st = build_ST<Complex>(exact_params<double>());
    const Complex w = std::polar(1.0, kTheta / 2);
    const CMatrix s0{{0.5, 1.0, -0.5}, {w, -0.5, -1.0}};
    CHECK(oracle::max_abs_diff(st.s[0], s0) < 1e-15);
    const CMatrix s1{{-1.0, 1.0, -0.5}, {-0.5 * w, 0.5, 1.0}};
    CHECK(oracle::max_abs_diff(st.s[1], s1) < 1e-15);
    CHECK(std::abs(st.t_col[0][0] - Complex(-6.0 / 5.0)) < 1e-15);
    CHECK(std::abs(st.t_col[0][1] - 12.0 / 5.0 * std::conj(w)) < 1e-15);
    CHECK(std::abs(st.t_col[1][0] - Complex(-12.0 / 5.0)) < 1e-15);
    CHECK(std::abs(st.t_col[1][1] - 6.0 / 5.0 * std::conj(w)) < 1e-15);
  }

  TEST_CASE("p sits in the displayed positions") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 10; ++i) {
      const auto fp = family_params(u(rng), u(rng), 0.3, 1.0);
      const auto st = build_ST<Complex>(fp);
      const Complex w = std::polar(1.0, 0.5);
      CHECK(st.s[0](0, 0) == Complex(fp.p));
      CHECK(st.s[0](0, 2) == Complex(-fp.p));
      CHECK(st.s[0](1, 1) == Complex(-fp.p));
      CHECK(st.s[1](0, 2) == Complex(-fp.p));
      CHECK(st.s[1](1, 1) == Complex(fp.p));
      CHECK(std::abs(st.s[1](1, 0) + fp.p * w) < 1e-15);
    }
  }
}

TEST_SUITE("complete_T") {
  TEST_CASE("exact point satisfies the I/4 relation") {
    const auto f = completed_factors<Complex>(exact_params<double>());
    const CMatrix psi_p = exact_psi_prime();
    const auto seed = build_ST<Complex>(exact_params<double>());
    for (int k = 0; k < 2; ++k) {
      CHECK(oracle::max_abs_diff(f.s[k], seed.s[k] * Complex(0.25)) == 0.0);
      CHECK((f.s[k] * psi_p * f.t[k].transpose() - CMatrix::identity(2) * Complex(0.25))
                .frobenius_norm() < 1e-12);
      CHECK(f.t[k](0, 0) == seed.t_col[k][0]);
      CHECK(f.t[k](1, 0) == seed.t_col[k][1]);
    }
  }

  TEST_CASE("singular system") {
    const auto seed = build_ST<Complex>(exact_params<double>());
    CHECK_THROWS_WITH_AS(complete_T(seed.s[0], CMatrix(3, 3), seed.t_col[0]),
                         doctest::Contains("asterisk completion underdetermined"), PreconditionError);
  }

  TEST_CASE("re-deriving the asterisks of a full T") {
    const auto fp = family_params(2.0, -0.5752, 0.80, kTheta);
    const auto f = completed_factors<Complex>(fp);
    const CMatrix psi_p = state_to_map(family_resource<Complex>(fp.c0), SpaceDims{2, 2, 2, 2, 3, 3});
    for (int k = 0; k < 2; ++k) {
      CMatrix col(2, 1);
      col[0] = f.t[k](0, 0);
      col[1] = f.t[k](1, 0);
      CHECK(oracle::max_abs_diff(complete_T(f.s[k], psi_p, col), f.t[k]) < 1e-10);
    }
  }
}

TEST_SUITE("symmetry") {
  TEST_CASE("generators") {
    const SymmetryGenerators<> g;
    const CMatrix id = CMatrix::identity(3);
    const double c0 = 0.81;
    const CMatrix rho = CMatrix::diagonal({c0, (1 - c0) / 2, (1 - c0) / 2});
    for (const CMatrix* m : {&g.l, &g.m, &g.n}) {
      CHECK(*m * *m == id);
      CHECK(*m * rho == rho * *m);
    }
    const auto orbit = g.orbit();
    CHECK(orbit.size() == 8);
    const CMatrix psi_p = exact_psi_prime();
    for (const auto& e : orbit) CHECK(oracle::max_abs_diff(e * psi_p * e.transpose(), psi_p) < 1e-15);
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (std::size_t j = i + 1; j < orbit.size(); ++j) CHECK_FALSE(orbit[i] == orbit[j]);
  }

  TEST_CASE("orbit leaves S psi' T^T invariant") {
    const auto f = completed_factors<Complex>(exact_params<double>());
    const CMatrix psi_p = exact_psi_prime();
    for (const auto& g : SymmetryGenerators<>().orbit()) {
      const CMatrix base = f.s[0] * psi_p * f.t[0].transpose();
      CHECK(oracle::max_abs_diff((f.s[0] * g) * psi_p * (f.t[0] * g).transpose(), base) < 1e-14);
    }
  }
}

TEST_SUITE("assemble_protocol") {
  TEST_CASE("exact point") {
    const SepProtocol p = exact_solution();
    CHECK(p.dims == SpaceDims{2, 2, 2, 2, 3, 3});
    CHECK(p.kraus.size() == 16);
    CHECK(check_closure(p) < 1e-10);
    CHECK(check_deterministic(p).residual < 1e-10);
    CHECK(p.meta.at("theta_symbolic") == "2*acos(35/36)");
  }

  TEST_CASE("E is block diagonal in the A index") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (int i = 0; i < 5; ++i) {
      const SepProtocol p = assemble_protocol<Complex>(family_params(u(rng), u(rng), 0.7, 0.4));
      for (const auto& k : p.kraus)
        for (std::size_t ab = 0; ab < 2; ++ab)
          for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t anc = 0; anc < 3; ++anc)
              if (ab != a) {
                CHECK(k.e(ab, a * 3 + anc) == Complex(0.0));
                CHECK(k.f(ab, a * 3 + anc) == Complex(0.0));
              }
    }
  }

  TEST_CASE("exact solution properties") {
    const SepProtocol p = exact_solution();
    const auto sd = schmidt_state(p.resource, 3, 3);
    CHECK(std::abs(entropy_ebits(sd.coefficients) - 0.8915) < 5e-4);
    CHECK(sd.rank == 3);
    CHECK(schmidt_operator(p.unitary, p.dims).rank == 2);
    CHECK(verify(p, 1e-10, true).passed);
  }

  TEST_CASE("extended precision residuals") {
    const SepProtocolDD p = exact_solution<DDComplex>();
    CHECK(static_cast<double>(check_closure(p)) < 1e-25);
    const auto det = check_deterministic(p);
    CHECK(static_cast<double>(det.residual) < 1e-25);
    CHECK(static_cast<double>(det.alpha_norm_defect) < 1e-25);
    const SepProtocol d = exact_solution();
    for (std::size_t k = 0; k < 16; ++k)
      CHECK(oracle::max_abs_diff(to_double(p.kraus[k].e), d.kraus[k].e) < 1e-15);
  }
}
