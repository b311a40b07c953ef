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
 * @file search.hpp
 * Numerical search for SEP protocols in the sub-ebit family.
 *
 * family mode: variables are a subset of {x, y, c0, theta}; the protocol is
 *   assembled with the asterisks of T solved exactly.
 * free mode: c0 and theta are fixed, every entry of S_k and T_k is a
 *   complex variable (48 reals), symmetrized over the resource orbit.
 *
 * The objective is closure^2 + determinism^2. Each restart runs a simplex
 * descent and the best candidate is polished by damped least squares.
 */
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sepgate/invsym.hpp"
#include "sepgate/protocol.hpp"

namespace sepgate {

enum class SearchMode { family, free };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Sweep {
  std::string variable = "theta";
  double from = 0.0;
  double to = 0.0;
  int steps = 1;  // grid points, endpoints included
};

struct SimplifyOptions {
  bool enabled = false;
  int max_q = 12;        // denominators tried for the pinned variable
  double window = 0.5;   // pinned values within this distance
  double tol = kDefaultIdentifyTol;
};

inline constexpr double kPenaltyBase = 1e6;
inline constexpr double kDefaultConverged = 1e-16;

struct SearchConfig {
  SearchMode mode = SearchMode::family;
  std::map<std::string, double> fixed;
  std::map<std::string, Interval> bounds;
  Interval default_bounds{-6.0, 6.0};  // free-mode entries without explicit bounds
  std::map<std::string, double> start;  // restart 0 begins here when given
  int max_evaluations = 20000;          // simplex budget per restart
  int max_lm_iterations = 200;
  int restarts = 1;
  std::uint64_t seed = 1;
  double tol_converged = kDefaultConverged;
  bool parallel = false;
  SimplifyOptions simplify;
  std::optional<Sweep> sweep;
};

/// Names of the free variables in optimization order.
std::vector<std::string> free_variables(const SearchConfig& config);

/// Throws PreconditionError on an invalid config (no free variable,
/// missing or non-finite bounds, tol_converged <= 0, ...).
void validate(const SearchConfig& config);

struct ResidualValue {
  double value = 0.0;
  bool feasible = true;  // false: penalty 1e6 + distance to feasibility
};

/// Objective at params, ordered as free_variables(config).
ResidualValue residual(const SearchConfig& config, std::span<const double> params);

/// Family-mode objective at a single point.
ResidualValue family_residual(double x, double y, double c0, double theta);

/// Protocol for params; throws on infeasible points.
SepProtocol build_protocol(const SearchConfig& config, std::span<const double> params);

struct TracePoint {
  int iteration = 0;
  double residual = 0.0;
};

struct ExactAssignment {
  std::string variable;
  ExprForm form;
};

struct SearchResult {
  std::vector<std::string> names;
  std::vector<double> best_params;
  double residual = 0.0;
  double start_residual = 0.0;  // best over restart starting points
  SepProtocol protocol;
  std::vector<TracePoint> trace;  // best restart, then polish
  int evaluations = 0;
  int best_restart = 0;
  bool converged = false;
  bool simplified = false;
  std::vector<ExactAssignment> exact;  // set when simplified

  std::optional<double> param(const std::string& name) const;
};

SearchResult optimize(const SearchConfig& config);

struct ContinuationPoint {
  double value = 0.0;  // sweep variable
  SearchResult result;
  // Family mode with x and c0 free: the largest c0 on the solution curve
  // at this point, where the resource is least entangled.
  std::optional<double> extremal_c0;
  std::optional<double> extremal_entropy;
  std::vector<double> extremal_params;
};

struct ContinuationResult {
  Sweep sweep;
  std::vector<ContinuationPoint> points;
  bool truncated = false;
  std::string message;
};

/// Solves at the first grid point, then warm-starts each next point from
/// the previous solution. Stops with truncated = true when a point fails
/// to converge.
ContinuationResult continuation(const SearchConfig& config, const Sweep& sweep);

}  // namespace sepgate
