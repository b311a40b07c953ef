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
 * @file double_double.hpp
 * Double-double real and complex scalars (about 31 significant digits).
 *
 * A value is the unevaluated sum hi + lo with |lo| <= ulp(hi)/2. The
 * arithmetic uses the error-free transformations two_sum and two_prod
 * (the latter via fma), so the usual double-double error bounds hold.
 * Only what the extended-precision checks need is provided.
 */
#pragma once

#include <cmath>
#include <compare>
#include <cstdio>
#include <ostream>
#include <string>

namespace sepgate {

class DoubleDouble {
 public:
  constexpr DoubleDouble() = default;
  constexpr DoubleDouble(double v) : hi_(v) {}  // NOLINT: implicit by design of a scalar
  constexpr DoubleDouble(double hi, double lo) : hi_(hi), lo_(lo) {}

  constexpr double hi() const { return hi_; }
  constexpr double lo() const { return lo_; }
  explicit constexpr operator double() const { return hi_ + lo_; }

  static DoubleDouble from_ratio(long long num, long long den) {
    return DoubleDouble(static_cast<double>(num)) /
           DoubleDouble(static_cast<double>(den));
  }

  static DoubleDouble pi() {
    return {3.141592653589793116e+00, 1.224646799147353207e-16};
  }

  friend DoubleDouble operator-(DoubleDouble a) { return {-a.hi_, -a.lo_}; }

  friend DoubleDouble operator+(DoubleDouble a, DoubleDouble b) {
    auto [s, e] = two_sum(a.hi_, b.hi_);
    auto [t, f] = two_sum(a.lo_, b.lo_);
    e += t;
    Pair q = quick_two_sum(s, e);
    q.b += f;
    q = quick_two_sum(q.a, q.b);
    return {q.a, q.b};
  }
  friend DoubleDouble operator-(DoubleDouble a, DoubleDouble b) {
    return a + (-b);
  }
  friend DoubleDouble operator*(DoubleDouble a, DoubleDouble b) {
    auto [p, e] = two_prod(a.hi_, b.hi_);
    e += a.hi_ * b.lo_ + a.lo_ * b.hi_;
    auto [h, l] = quick_two_sum(p, e);
    return {h, l};
  }
  friend DoubleDouble operator/(DoubleDouble a, DoubleDouble b) {
    double q1 = a.hi_ / b.hi_;
    DoubleDouble r = a - b * DoubleDouble(q1);
    double q2 = r.hi_ / b.hi_;
    r = r - b * DoubleDouble(q2);
    double q3 = r.hi_ / b.hi_;
    auto [h, l] = quick_two_sum(q1, q2);
    return DoubleDouble(h, l) + DoubleDouble(q3);
  }

  DoubleDouble& operator+=(DoubleDouble b) { return *this = *this + b; }
  DoubleDouble& operator-=(DoubleDouble b) { return *this = *this - b; }
  DoubleDouble& operator*=(DoubleDouble b) { return *this = *this * b; }
  DoubleDouble& operator/=(DoubleDouble b) { return *this = *this / b; }

  friend bool operator==(DoubleDouble a, DoubleDouble b) {
    return a.hi_ == b.hi_ && a.lo_ == b.lo_;
  }
  friend std::partial_ordering operator<=>(DoubleDouble a, DoubleDouble b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
    return a.lo_ <=> b.lo_;
  }

  friend std::ostream& operator<<(std::ostream& os, DoubleDouble v) {
    return os << to_string(v);
  }
  friend std::string to_string(DoubleDouble v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17g", v.hi_, v.lo_);
    return buf;
  }

 private:
  struct Pair {
    double a, b;
  };
  static Pair two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static Pair quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
  }
  static Pair two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  double hi_ = 0.0;
  double lo_ = 0.0;
};

inline DoubleDouble abs(DoubleDouble v) { return v < DoubleDouble(0.0) ? -v : v; }

inline DoubleDouble sqrt(DoubleDouble a) {
  if (a.hi() <= 0.0) return DoubleDouble(0.0);
  DoubleDouble y(std::sqrt(a.hi()));
  return y + (a - y * y) / (DoubleDouble(2.0) * y);
}

inline bool isfinite(DoubleDouble v) { return std::isfinite(v.hi()) && std::isfinite(v.lo()); }

namespace detail {

// Taylor series on [-pi, pi]; terms are summed until they underflow the
// working precision.
inline void dd_sincos(DoubleDouble x, DoubleDouble& s, DoubleDouble& c) {
  const DoubleDouble two_pi = DoubleDouble(2.0) * DoubleDouble::pi();
  double k = std::nearbyint(static_cast<double>(x / two_pi));
  x = x - two_pi * DoubleDouble(k);
  const DoubleDouble x2 = x * x;
  DoubleDouble term_s = x, term_c = 1.0;
  s = term_s;
  c = term_c;
  for (int n = 1; n < 60; ++n) {
    term_s = -term_s * x2 / DoubleDouble(static_cast<double>((2 * n) * (2 * n + 1)));
    term_c = -term_c * x2 / DoubleDouble(static_cast<double>((2 * n - 1) * (2 * n)));
    s += term_s;
    c += term_c;
    if (std::abs(term_s.hi()) < 1e-34 && std::abs(term_c.hi()) < 1e-34) break;
  }
}

}  // namespace detail

inline DoubleDouble sin(DoubleDouble x) {
  DoubleDouble s, c;
  detail::dd_sincos(x, s, c);
  return s;
}

inline DoubleDouble cos(DoubleDouble x) {
  DoubleDouble s, c;
  detail::dd_sincos(x, s, c);
  return c;
}

/// Newton refinement of the double-precision arccos. Requires |v| < 1.
inline DoubleDouble acos(DoubleDouble v) {
  DoubleDouble t(std::acos(static_cast<double>(v)));
  for (int i = 0; i < 3; ++i) {
    DoubleDouble s, c;
    detail::dd_sincos(t, s, c);
    t = t + (c - v) / s;
  }
  return t;
}

/// Complex number over DoubleDouble. Mirrors the parts of std::complex the
/// generic linear algebra relies on (found through ADL).
class DDComplex {
 public:
  using value_type = DoubleDouble;

  constexpr DDComplex() = default;
  constexpr DDComplex(DoubleDouble re, DoubleDouble im = 0.0) : re_(re), im_(im) {}  // NOLINT
  constexpr DDComplex(double re, double im = 0.0) : re_(re), im_(im) {}  // NOLINT

  constexpr DoubleDouble real() const { return re_; }
  constexpr DoubleDouble imag() const { return im_; }

  friend DDComplex operator-(const DDComplex& a) { return {-a.re_, -a.im_}; }
  friend DDComplex operator+(const DDComplex& a, const DDComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend DDComplex operator-(const DDComplex& a, const DDComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend DDComplex operator*(const DDComplex& a, const DDComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend DDComplex operator/(const DDComplex& a, const DDComplex& b) {
    DoubleDouble den = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den,
            (a.im_ * b.re_ - a.re_ * b.im_) / den};
  }
  DDComplex& operator+=(const DDComplex& b) { return *this = *this + b; }
  DDComplex& operator-=(const DDComplex& b) { return *this = *this - b; }
  DDComplex& operator*=(const DDComplex& b) { return *this = *this * b; }
  DDComplex& operator/=(const DDComplex& b) { return *this = *this / b; }

  friend bool operator==(const DDComplex& a, const DDComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  DoubleDouble re_{};
  DoubleDouble im_{};
};

inline DoubleDouble real(const DDComplex& z) { return z.real(); }
inline DoubleDouble imag(const DDComplex& z) { return z.imag(); }
inline DDComplex conj(const DDComplex& z) { return {z.real(), -z.imag()}; }
inline DoubleDouble norm(const DDComplex& z) {
  return z.real() * z.real() + z.imag() * z.imag();
}
inline DoubleDouble abs(const DDComplex& z) { return sqrt(norm(z)); }
inline DDComplex polar(DoubleDouble r, DoubleDouble theta) {
  DoubleDouble s, c;
  detail::dd_sincos(theta, s, c);
  return {r * c, r * s};
}

}  // namespace sepgate
