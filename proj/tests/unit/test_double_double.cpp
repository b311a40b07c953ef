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
#include <numbers>

#include "doctest.h"
#include "sepgate/double_double.hpp"

using namespace sepgate;

namespace {
double err(const DoubleDouble& a, const DoubleDouble& b) { return static_cast<double>(abs(a - b)); }
}  // namespace

TEST_CASE("double-double arithmetic") {
  const DoubleDouble third = DoubleDouble::from_ratio(1, 3);
  CHECK(err(third * DoubleDouble(3.0), DoubleDouble(1.0)) < 1e-31);
  CHECK(err(DoubleDouble::from_ratio(81, 100) * DoubleDouble(100.0), DoubleDouble(81.0)) < 1e-29);
  const DoubleDouble r2 = sqrt(DoubleDouble(2.0));
  CHECK(err(r2 * r2, DoubleDouble(2.0)) < 1e-30);
  // Sum whose low part a plain double loses.
  const DoubleDouble tiny = DoubleDouble(1.0) + DoubleDouble(1e-20);
  CHECK(static_cast<double>(tiny - DoubleDouble(1.0)) == doctest::Approx(1e-20));
}

TEST_CASE("double-double transcendental functions") {
  CHECK(static_cast<double>(abs(sin(DoubleDouble::pi()))) < 1e-31);
  CHECK(err(cos(DoubleDouble::pi()), DoubleDouble(-1.0)) < 1e-31);
  for (double v : {0.1, 0.7, 1.3, 2.9, -4.2, 10.0}) {
    const DoubleDouble x(v);
    CHECK(err(sin(x) * sin(x) + cos(x) * cos(x), DoubleDouble(1.0)) < 1e-30);
    CHECK(static_cast<double>(sin(x)) == doctest::Approx(std::sin(v)).epsilon(1e-15));
  }
  const DoubleDouble c = DoubleDouble::from_ratio(35, 36);
  CHECK(err(cos(acos(c)), c) < 1e-30);
  CHECK(static_cast<double>(acos(c)) == doctest::Approx(std::acos(35.0 / 36.0)).epsilon(1e-15));
}

TEST_CASE("double-double complex") {
  const DDComplex z = polar(DoubleDouble(1.0), DoubleDouble(0.3));
  CHECK(err(norm(z), DoubleDouble(1.0)) < 1e-30);
  const DDComplex w = z * conj(z);
  CHECK(err(real(w), DoubleDouble(1.0)) < 1e-30);
  CHECK(static_cast<double>(abs(imag(w))) < 1e-31);
}
