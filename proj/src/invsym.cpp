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

#include "sepgate/invsym.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <sstream>

#include "sepgate/error.hpp"

namespace sepgate {

namespace {

constexpr double kPi = std::numbers::pi;

double evaluate(FormKind kind, std::int64_t p, std::int64_t q) {
  const double r = static_cast<double>(p) / static_cast<double>(q);
  switch (kind) {
    case FormKind::rational:
      return r;
    case FormKind::sqrt_rational: {
      const double m = std::sqrt(static_cast<double>(p < 0 ? -p : p) / static_cast<double>(q));
      return p < 0 ? -m : m;
    }
    case FormKind::rational_pi:
      return r * kPi;
    case FormKind::arccos_rational:
      return std::acos(r);
    case FormKind::two_arccos_rational:
      return 2.0 * std::acos(r);
  }
  return 0.0;
}

// Dedup and exact-match band.
double ulp_band(double v) {
  return 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(v));
}

struct RankKey {
  int complexity;
  FormKind kind;
  std::int64_t p, q;
  auto operator<=>(const RankKey&) const = default;
};

RankKey rank_of(const SymbolTable::Entry& e) {
  return {static_cast<int>(e.q) + kind_penalty(e.kind), e.kind, e.p, e.q};
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool consume(std::string_view& s, std::string_view prefix) {
  if (s.substr(0, prefix.size()) != prefix) return false;
  s.remove_prefix(prefix.size());
  return true;
}

std::optional<std::int64_t> parse_int(std::string_view s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// "p", "p/q" or a decimal literal "[-]d.ddd".
std::optional<std::pair<std::int64_t, std::int64_t>> parse_fraction(std::string_view s) {
  s = trim(s);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto p = parse_int(trim(s.substr(0, slash)));
    auto q = parse_int(trim(s.substr(slash + 1)));
    if (!p || !q) return std::nullopt;
    return std::pair{*p, *q};
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string digits(s.substr(0, dot));
    const std::string_view frac = s.substr(dot + 1);
    if (frac.empty() || frac.size() > 15) return std::nullopt;
    if (!std::all_of(frac.begin(), frac.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return std::nullopt;
    digits += frac;
    auto p = parse_int(digits);
    if (!p) return std::nullopt;
    std::int64_t q = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) q *= 10;
    return std::pair{*p, q};
  }
  auto p = parse_int(s);
  if (!p) return std::nullopt;
  return std::pair{*p, std::int64_t{1}};
}

std::string fraction_string(std::int64_t p, std::int64_t q) {
  return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

}  // namespace

std::string_view kind_name(FormKind k) {
  switch (k) {
    case FormKind::rational:
      return "rational";
    case FormKind::sqrt_rational:
      return "sqrt_rational";
    case FormKind::rational_pi:
      return "rational_pi";
    case FormKind::arccos_rational:
      return "arccos_rational";
    case FormKind::two_arccos_rational:
      return "two_arccos_rational";
  }
  return "?";
}

int kind_penalty(FormKind k) {
  switch (k) {
    case FormKind::rational:
      return 0;
    case FormKind::sqrt_rational:
    case FormKind::rational_pi:
      return 2;
    case FormKind::arccos_rational:
      return 4;
    case FormKind::two_arccos_rational:
      return 5;
  }
  return 0;
}

ExprForm ExprForm::make(FormKind kind, std::int64_t p, std::int64_t q) {
  if (q <= 0) throw PreconditionError("ExprForm: denominator must be positive");
  const std::int64_t g = std::gcd(p, q);
  if (g > 1) {
    p /= g;
    q /= g;
  }
  if ((kind == FormKind::arccos_rational || kind == FormKind::two_arccos_rational) &&
      (p > q || p < -q)) {
    throw PreconditionError("ExprForm: arccos argument " + fraction_string(p, q) +
                            " outside [-1, 1]");
  }
  ExprForm f;
  f.kind = kind;
  f.p = p;
  f.q = q;
  f.value = evaluate(kind, p, q);
  f.complexity = static_cast<int>(q) + kind_penalty(kind);
  return f;
}

std::string ExprForm::to_string() const {
  switch (kind) {
    case FormKind::rational:
      return fraction_string(p, q);
    case FormKind::sqrt_rational:
      return (p < 0 ? "-sqrt(" : "sqrt(") + fraction_string(p < 0 ? -p : p, q) + ")";
    case FormKind::rational_pi:
      if (q == 1 && (p == 1 || p == -1)) return p < 0 ? "-pi" : "pi";
      return fraction_string(p, q) + "*pi";
    case FormKind::arccos_rational:
      return "acos(" + fraction_string(p, q) + ")";
    case FormKind::two_arccos_rational:
      return "2*acos(" + fraction_string(p, q) + ")";
  }
  return {};
}

ExprForm parse_expr(std::string_view text) {
  std::string_view s = trim(text);
  const std::string original(s);
  auto fail = [&]() -> ParseError {
    return ParseError(original, "cannot parse expression '" + original + "'");
  };
  auto inner = [&](std::string_view rest) {
    if (rest.empty() || rest.back() != ')') throw fail();
    rest.remove_suffix(1);
    auto f = parse_fraction(rest);
    if (!f) throw fail();
    return *f;
  };
  try {
    if (consume(s, "2*acos(")) {
      auto [p, q] = inner(s);
      return ExprForm::make(FormKind::two_arccos_rational, p, q);
    }
    if (consume(s, "acos(")) {
      auto [p, q] = inner(s);
      return ExprForm::make(FormKind::arccos_rational, p, q);
    }
    const bool neg = consume(s, "-sqrt(");
    if (neg || consume(s, "sqrt(")) {
      auto [p, q] = inner(s);
      if (p < 0) throw fail();
      return ExprForm::make(FormKind::sqrt_rational, neg ? -p : p, q);
    }
    if (s == "pi") return ExprForm::make(FormKind::rational_pi, 1, 1);
    if (s == "-pi") return ExprForm::make(FormKind::rational_pi, -1, 1);
    if (s.size() > 3 && s.substr(s.size() - 3) == "*pi") {
      auto f = parse_fraction(s.substr(0, s.size() - 3));
      if (!f) throw fail();
      return ExprForm::make(FormKind::rational_pi, f->first, f->second);
    }
    auto f = parse_fraction(s);
    if (!f) throw fail();
    return ExprForm::make(FormKind::rational, f->first, f->second);
  } catch (const PreconditionError& e) {
    throw ParseError(original, e.what());
  }
}

double evaluate_expr(std::string_view text) {
  const std::string_view s = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size() && !s.empty()) return v;
  return parse_expr(s).value;
}

SymbolTable SymbolTable::build(const TableLimits& limits) {
  if (limits.max_q_rational < 1 || limits.max_q_other < 1) {
    throw PreconditionError("build_table: limits must be >= 1");
  }
  if (!(limits.max_abs_value > 0.0) || !std::isfinite(limits.max_abs_value)) {
    throw PreconditionError("build_table: value bound must be positive and finite");
  }
  const double bound = limits.max_abs_value;
  const auto qr = static_cast<std::int64_t>(limits.max_q_rational);
  const auto qo = static_cast<std::int64_t>(limits.max_q_other);

  // Upper bound on the entry count, checked before allocating.
  std::vector<std::int64_t> phi(static_cast<std::size_t>(qr + 1));
  std::iota(phi.begin(), phi.end(), 0);
  for (std::int64_t i = 2; i <= qr; ++i)
    if (phi[i] == i)
      for (std::int64_t j = i; j <= qr; j += i) phi[j] -= phi[j] / i;
  double farey = 1.0;
  for (std::int64_t b = 1; b <= qr; ++b) farey += static_cast<double>(phi[b]);
  const double span = 2.0 * std::ceil(bound) + 1.0;
  const double other = static_cast<double>(qo) * static_cast<double>(qo + 1) *
                       (bound * bound + bound / kPi + 2.0 + 2.0);
  if (span * farey + other > static_cast<double>(limits.entry_cap)) {
    std::ostringstream os;
    os << "build_table: about " << static_cast<std::size_t>(span * farey + other)
       << " entries exceed the cap of " << limits.entry_cap;
    throw PreconditionError(os.str());
  }

  // Rationals in increasing order: n + a/b over the Farey sequence of order qr.
  std::vector<Entry> rationals;
  rationals.reserve(static_cast<std::size_t>(span * farey));
  std::vector<std::pair<std::int32_t, std::int32_t>> seq;
  seq.reserve(static_cast<std::size_t>(farey));
  {
    std::int64_t a = 0, b = 1, c = 1, d = qr;
    seq.emplace_back(0, 1);
    while (c <= qr) {
      const std::int64_t k = (qr + b) / d;
      const std::int64_t e = k * c - a, f = k * d - b;
      a = c;
      b = d;
      c = e;
      d = f;
      seq.emplace_back(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b));
    }
    seq.pop_back();  // 1/1 is covered by the next integer shift
  }
  const auto n_lo = static_cast<std::int64_t>(std::floor(-bound));
  const auto n_hi = static_cast<std::int64_t>(std::floor(bound));
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    for (const auto& [a, b] : seq) {
      const std::int64_t p = n * b + a;
      const double v = static_cast<double>(p) / static_cast<double>(b);
      if (std::abs(v) > bound) continue;
      rationals.push_back({v, static_cast<std::int32_t>(p), b, FormKind::rational});
    }
  }

  std::vector<Entry> others;
  auto add = [&](FormKind kind, std::int64_t p, std::int64_t q) {
    if (std::gcd(p, q) != 1) return;
    const double v = evaluate(kind, p, q);
    if (std::abs(v) > bound) return;
    others.push_back({v, static_cast<std::int32_t>(p), static_cast<std::int32_t>(q), kind});
  };
  for (std::int64_t q = 1; q <= qo; ++q) {
    const auto ps = static_cast<std::int64_t>(std::floor(bound * bound * static_cast<double>(q)));
    for (std::int64_t p = -ps; p <= ps; ++p) add(FormKind::sqrt_rational, p, q);
    const auto pp = static_cast<std::int64_t>(std::floor(bound / kPi * static_cast<double>(q)));
    for (std::int64_t p = -pp; p <= pp; ++p) add(FormKind::rational_pi, p, q);
    for (std::int64_t p = -q; p <= q; ++p) {
      add(FormKind::arccos_rational, p, q);
      add(FormKind::two_arccos_rational, p, q);
    }
  }
  auto by_value = [](const Entry& x, const Entry& y) {
    if (x.value != y.value) return x.value < y.value;
    return rank_of(x) < rank_of(y);
  };
  std::sort(others.begin(), others.end(), by_value);

  std::vector<Entry> merged;
  merged.reserve(rationals.size() + others.size());
  std::merge(rationals.begin(), rationals.end(), others.begin(), others.end(),
             std::back_inserter(merged), by_value);

  SymbolTable t;
  t.limits_ = limits;
  t.entries_.reserve(merged.size());
  for (const Entry& e : merged) {
    if (!t.entries_.empty() && e.value - t.entries_.back().value <= ulp_band(e.value)) {
      if (rank_of(e) < rank_of(t.entries_.back())) t.entries_.back() = e;
      continue;
    }
    t.entries_.push_back(e);
  }
  return t;
}

ExprForm SymbolTable::form(std::size_t i) const {
  const Entry& e = entries_.at(i);
  ExprForm f;
  f.kind = e.kind;
  f.p = e.p;
  f.q = e.q;
  f.value = e.value;
  f.complexity = static_cast<int>(e.q) + kind_penalty(e.kind);
  return f;
}

IdentifyResult identify(double value, double tol, const SymbolTable& table) {
  IdentifyResult out;
  if (!std::isfinite(value) || !(tol >= 0.0)) return out;
  const auto& es = table.entries();
  auto it = std::lower_bound(es.begin(), es.end(), value - tol,
                             [](const SymbolTable::Entry& e, double v) { return e.value < v; });
  for (; it != es.end() && it->value <= value + tol; ++it) {
    const double err = std::abs(it->value - value);
    if (err > tol) continue;
    out.candidates.push_back({table.form(static_cast<std::size_t>(it - es.begin())), err});
  }
  const double band = ulp_band(value);
  std::sort(out.candidates.begin(), out.candidates.end(),
            [band](const Candidate& a, const Candidate& b) {
              const bool ea = a.abs_error <= band, eb = b.abs_error <= band;
              if (ea != eb) return ea;
              if (a.form.complexity != b.form.complexity) return a.form.complexity < b.form.complexity;
              if (a.form.kind != b.form.kind) return a.form.kind < b.form.kind;
              if (a.form.p != b.form.p) return a.form.p < b.form.p;
              return a.form.q < b.form.q;
            });
  return out;
}

}  // namespace sepgate
