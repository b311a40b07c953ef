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
 * @file invsym.hpp
 * Lookup-table inverse symbolic calculator: maps floating-point constants
 * to short closed forms built from a reduced fraction p/q.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sepgate {

enum class FormKind : std::uint8_t {
  rational,             // p/q
  sqrt_rational,        // sign(p) sqrt(|p|/q)
  rational_pi,          // (p/q) pi
  arccos_rational,      // acos(p/q)
  two_arccos_rational,  // 2 acos(p/q)
};

std::string_view kind_name(FormKind k);
int kind_penalty(FormKind k);

struct ExprForm {
  FormKind kind = FormKind::rational;
  std::int64_t p = 0;
  std::int64_t q = 1;
  double value = 0.0;
  int complexity = 1;

  /// Reduces p/q, evaluates and scores. Throws PreconditionError on q <= 0
  /// or an arccos argument outside [-1, 1].
  static ExprForm make(FormKind kind, std::int64_t p, std::int64_t q);

  /// "81/100", "-sqrt(2/3)", "3/4*pi", "acos(1/3)", "2*acos(35/36)".
  std::string to_string() const;

  friend bool operator==(const ExprForm& a, const ExprForm& b) {
    return a.kind == b.kind && a.p == b.p && a.q == b.q;
  }
};

/// Inverse of ExprForm::to_string. Also accepts decimal literals that are
/// exact fractions such as "0.81". Throws ParseError.
ExprForm parse_expr(std::string_view text);

/// Either a closed form or a plain number; plain numbers are returned as
/// is. Throws ParseError on malformed input.
double evaluate_expr(std::string_view text);

struct TableLimits {
  int max_q_rational = 1000;
  int max_q_other = 100;
  double max_abs_value = 4.0;
  std::size_t entry_cap = 20'000'000;
};

class SymbolTable {
 public:
  struct Entry {
    double value;
    std::int32_t p;
    std::int32_t q;
    FormKind kind;
  };

  /// All forms with q within the per-kind limit and |value| within bound,
  /// sorted by value. Entries numerically equal to a simpler one are
  /// dropped. Throws PreconditionError on limits < 1 or when the table
  /// would exceed entry_cap.
  static SymbolTable build(const TableLimits& limits = {});

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const TableLimits& limits() const { return limits_; }

  ExprForm form(std::size_t i) const;

 private:
  TableLimits limits_;
  std::vector<Entry> entries_;
};

inline constexpr double kDefaultIdentifyTol = 1e-9;

struct Candidate {
  ExprForm form;
  double abs_error;
};

struct IdentifyResult {
  std::vector<Candidate> candidates;
  bool empty() const { return candidates.empty(); }
  const Candidate& top() const { return candidates.front(); }
};

/// All entries within tol of value, ranked by (exact band, complexity,
/// kind, p, q). The exact band holds errors up to a few dozen ulps.
IdentifyResult identify(double value, double tol, const SymbolTable& table);

}  // namespace sepgate
