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

#include "sepgate/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "sepgate/appendix.hpp"
#include "sepgate/entanglement.hpp"
#include "sepgate/error.hpp"

namespace sepgate {

namespace {

const std::vector<std::string> kFamilyNames{"x", "y", "c0", "theta"};

std::vector<std::string> free_entry_names() {
  std::vector<std::string> out;
  for (const char* m : {"s", "t"})
    for (int k = 0; k < 2; ++k)
      for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 3; ++c)
          for (const char* part : {"re", "im"}) {
            std::ostringstream os;
            os << m << k << "_" << r << c << "_" << part;
            out.push_back(os.str());
          }
  return out;
}

double interval_distance(double v, const Interval& b) {
  return std::max({0.0, b.lo - v, v - b.hi});
}

// Evaluation context for one config: free names, bounds, fixed values.
class Problem {
 public:
  explicit Problem(const SearchConfig& cfg) : cfg_(cfg), names_(free_variables(cfg)) {
    for (const auto& n : names_) {
      auto it = cfg.bounds.find(n);
      box_.push_back(it != cfg.bounds.end() ? it->second : cfg.default_bounds);
    }
  }

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Interval>& box() const { return box_; }
  std::size_t dim() const { return names_.size(); }
  const SearchConfig& config() const { return cfg_; }

  double value_of(const std::string& name, std::span<const double> v) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return v[i];
    return cfg_.fixed.at(name);
  }

  // Distance to the feasible set; zero when the protocol can be built.
  double infeasibility(std::span<const double> v) const {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) return std::numeric_limits<double>::max() / 4;
      d += interval_distance(v[i], box_[i]);
    }
    const double c0 = value_of("c0", v);
    if (!(c0 > 0.0 && c0 < 1.0)) d += std::max(-c0, c0 - 1.0) + 1e-12;
    if (cfg_.mode == SearchMode::family) {
      const double x = value_of("x", v), y = value_of("y", v);
      const double h = std::cos(value_of("theta", v) / 2.0);
      const double s = x * x * (1.0 - h) + y * y * (1.0 + h);
      if (!(s > 0.0 && s < 1.0)) d += std::max(-s, s - 1.0) + 1e-12;
    }
    return d;
  }

  SepProtocol build(std::span<const double> v) const {
    const double c0 = value_of("c0", v), theta = value_of("theta", v);
    if (cfg_.mode == SearchMode::family) {
      return assemble_protocol<Complex>(family_params(value_of("x", v), value_of("y", v), c0, theta));
    }
    std::array<CMatrix, 2> s{CMatrix(2, 3), CMatrix(2, 3)}, t{CMatrix(2, 3), CMatrix(2, 3)};
    std::size_t i = 0;
    for (auto* group : {&s, &t})
      for (int k = 0; k < 2; ++k)
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 3; ++c, i += 2) (*group)[k](r, c) = Complex(v[i], v[i + 1]);
    SepProtocol p;
    p.dims = SpaceDims{2, 2, 2, 2, 3, 3};
    p.resource = family_resource<Complex>(c0);
    const Complex phase = std::polar(1.0, theta);
    p.unitary = CMatrix::diagonal({1.0, 1.0, 1.0, phase});
    for (int k = 0; k < 2; ++k)
      for (const auto& g : SymmetryGenerators<Complex>().orbit())
        p.kraus.push_back(family_kraus_pair(s[k] * g, t[k] * g, phase));
    return p;
  }

  // Objective plus the stacked real residual vector (closure defect, then
  // every G_k - alpha_k U). nullopt when infeasible.
  struct Full {
    double objective;
    std::vector<double> vec;
  };

  std::optional<Full> full(std::span<const double> v) const {
    if (infeasibility(v) > 0.0) return std::nullopt;
    SepProtocol p;
    try {
      p = build(v);
    } catch (const Error&) {
      return std::nullopt;
    }
    const CMatrix defect = closure_defect(p);
    const auto det = check_deterministic(p);
    Full out;
    out.vec.reserve(2 * (defect.size() + det.deviations.size() * p.unitary.size()));
    for (const Complex& z : defect.data()) {
      out.vec.push_back(z.real());
      out.vec.push_back(z.imag());
    }
    for (const auto& g : det.deviations)
      for (const Complex& z : g.data()) {
        out.vec.push_back(z.real());
        out.vec.push_back(z.imag());
      }
    const double c = defect.frobenius_norm();
    out.objective = c * c + det.residual * det.residual;
    if (!std::isfinite(out.objective)) return std::nullopt;
    return out;
  }

  ResidualValue objective(std::span<const double> v) const {
    const double d = infeasibility(v);
    if (d > 0.0) return {kPenaltyBase + d, false};
    auto f = full(v);
    if (!f) return {kPenaltyBase + 1.0, false};
    return {f->objective, true};
  }

 private:
  SearchConfig cfg_;
  std::vector<std::string> names_;
  std::vector<Interval> box_;
};

struct Descent {
  std::vector<double> x;
  double f = 0.0;
  int evaluations = 0;
  std::vector<TracePoint> trace;
};

Descent nelder_mead(const Problem& prob, std::vector<double> x0, int budget, double target) {
  const std::size_t n = x0.size();
  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    const double range = prob.box()[i].hi - prob.box()[i].lo;
    pts[i + 1][i] += 0.05 * range;
  }
  Descent out;
  auto eval = [&](const std::vector<double>& x) {
    ++out.evaluations;
    return prob.objective(x).value;
  };
  std::vector<double> f(n + 1);
  for (std::size_t i = 0; i <= n; ++i) f[i] = eval(pts[i]);
  std::vector<std::size_t> order(n + 1);
  int iteration = 0;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return f[a] < f[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    out.trace.push_back({iteration++, f[best]});
    double diameter = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        diameter = std::max(diameter, std::abs(pts[i][j] - pts[best][j]));
    if (f[best] < target || out.evaluations >= budget || diameter < 1e-14) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != worst)
        for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j] / static_cast<double>(n);
    auto along = [&](double t) {
      std::vector<double> y(n);
      for (std::size_t j = 0; j < n; ++j) y[j] = centroid[j] + t * (pts[worst][j] - centroid[j]);
      return y;
    };
    auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < f[best]) {
      auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[worst] = std::move(xe);
        f[worst] = fe;
      } else {
        pts[worst] = std::move(xr);
        f[worst] = fr;
      }
      continue;
    }
    if (fr < f[second]) {
      pts[worst] = std::move(xr);
      f[worst] = fr;
      continue;
    }
    const bool outside = fr < f[worst];
    auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : f[worst])) {
      pts[worst] = std::move(xc);
      f[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < n; ++j) pts[i][j] = pts[best][j] + 0.5 * (pts[i][j] - pts[best][j]);
      f[i] = eval(pts[i]);
    }
  }
  const std::size_t best = static_cast<std::size_t>(std::min_element(f.begin(), f.end()) - f.begin());
  out.x = pts[best];
  out.f = f[best];
  return out;
}

// Solves a x = b in place (small dense, partial pivoting). False if singular.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (!(std::abs(a[piv * n + c]) > 0.0)) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t k = r + 1; k < n; ++k) acc -= a[r * n + k] * b[k];
    b[r] = acc / a[r * n + r];
  }
  return true;
}

double sum_squares(const std::vector<double>& v) {
  double s = 0.0;
  for (double z : v) s += z * z;
  return s;
}

constexpr double kFdStep = 1e-7;

// Levenberg-Marquardt on the stacked residual with forward-difference
// Jacobian. Only moves through feasible points.
Descent levenberg_marquardt(const Problem& prob, std::vector<double> x, int max_iter,
                            int first_iteration = 0) {
  Descent out;
  const std::size_t n = x.size();
  auto cur = prob.full(x);
  ++out.evaluations;
  if (!cur) {
    out.x = std::move(x);
    out.f = prob.objective(out.x).value;
    return out;
  }
  double ss = sum_squares(cur->vec);
  double lambda = 1e-3;
  for (int it = 0; it < max_iter && ss > 1e-34; ++it) {
    out.trace.push_back({first_iteration + it, cur->objective});
    const std::size_t m = cur->vec.size();
    std::vector<double> jac(m * n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      auto xp = x;
      double h = kFdStep;
      xp[j] += h;
      auto fp = prob.full(xp);
      ++out.evaluations;
      if (!fp) {
        xp[j] = x[j] - h;
        h = -h;
        fp = prob.full(xp);
        ++out.evaluations;
      }
      if (!fp) {
        ok = false;
        break;
      }
      for (std::size_t r = 0; r < m; ++r) jac[r * n + j] = (fp->vec[r] - cur->vec[r]) / h;
    }
    if (!ok) break;
    std::vector<double> jtj(n * n, 0.0), jtr(n, 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      const double* row = &jac[r * n];
      for (std::size_t a = 0; a < n; ++a) {
        jtr[a] += row[a] * cur->vec[r];
        for (std::size_t b = 0; b < n; ++b) jtj[a * n + b] += row[a] * row[b];
      }
    }
    bool accepted = false;
    for (int tries = 0; tries < 30 && !accepted; ++tries) {
      auto a = jtj;
      std::vector<double> step(n);
      for (std::size_t k = 0; k < n; ++k) {
        a[k * n + k] += lambda * std::max(jtj[k * n + k], 1e-30);
        step[k] = -jtr[k];
      }
      if (!solve_dense(a, step, n)) {
        lambda *= 4.0;
        continue;
      }
      auto xn = x;
      for (std::size_t k = 0; k < n; ++k) xn[k] += step[k];
      auto fn = prob.full(xn);
      ++out.evaluations;
      if (fn && sum_squares(fn->vec) < ss) {
        x = std::move(xn);
        cur = std::move(fn);
        ss = sum_squares(cur->vec);
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
      } else {
        lambda *= 4.0;
      }
    }
    if (!accepted) break;
  }
  out.trace.push_back({first_iteration + static_cast<int>(out.trace.size()), cur->objective});
  out.x = std::move(x);
  out.f = cur->objective;
  return out;
}

std::vector<double> start_point(const Problem& prob, int restart) {
  const SearchConfig& cfg = prob.config();
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  std::mt19937_64 rng(seq);
  std::vector<double> x(prob.dim());
  for (std::size_t i = 0; i < prob.dim(); ++i) {
    const Interval& b = prob.box()[i];
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    x[i] = b.lo + u * (b.hi - b.lo);
    if (restart == 0) {
      auto it = cfg.start.find(prob.names()[i]);
      if (it != cfg.start.end()) x[i] = it->second;
    }
  }
  return x;
}

SearchConfig pinned(const SearchConfig& cfg, const std::string& name, double value,
                    const std::map<std::string, double>& start) {
  SearchConfig out = cfg;
  out.fixed[name] = value;
  out.bounds.erase(name);
  out.start = start;
  out.start.erase(name);
  out.sweep.reset();
  return out;
}

std::map<std::string, double> as_map(const std::vector<std::string>& names,
                                     const std::vector<double>& v) {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < names.size(); ++i) out[names[i]] = v[i];
  return out;
}

std::vector<double> from_map(const Problem& prob, const std::map<std::string, double>& m) {
  std::vector<double> out;
  for (const auto& n : prob.names()) out.push_back(m.at(n));
  return out;
}

struct PinnedSolve {
  std::map<std::string, double> values;  // every free variable of the parent
  double objective = 0.0;
  bool converged = false;
};

// Fixes one variable and re-solves the others by least squares from warm.
PinnedSolve solve_pinned(const SearchConfig& cfg, const std::string& name, double value,
                         const std::map<std::string, double>& warm) {
  const SearchConfig sub = pinned(cfg, name, value, warm);
  const Problem prob(sub);
  const Descent d = levenberg_marquardt(prob, from_map(prob, warm), cfg.max_lm_iterations);
  PinnedSolve out;
  out.values = as_map(prob.names(), d.x);
  out.values[name] = value;
  out.objective = d.f;
  out.converged = d.f < cfg.tol_converged && prob.infeasibility(d.x) == 0.0;
  return out;
}

const SymbolTable& default_table() {
  static const SymbolTable table = SymbolTable::build();
  return table;
}

// Pins one variable at a time to a nearby low-denominator rational,
// re-solves the rest and keeps the assignment whose values all identify
// as closed forms with least total complexity.
void simplify(const Problem& prob, SearchResult& res) {
  const SearchConfig& cfg = prob.config();
  const SimplifyOptions& opt = cfg.simplify;
  const auto base = as_map(res.names, res.best_params);
  const SymbolTable& table = default_table();
  std::optional<std::vector<ExactAssignment>> best;
  int best_cost = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < prob.dim(); ++i) {
    const std::string& name = prob.names()[i];
    const double v = res.best_params[i];
    for (int q = 1; q <= opt.max_q; ++q) {
      const auto p_lo = static_cast<std::int64_t>(std::ceil((v - opt.window) * q));
      const auto p_hi = static_cast<std::int64_t>(std::floor((v + opt.window) * q));
      for (std::int64_t p = p_lo; p <= p_hi; ++p) {
        if (std::gcd(p, static_cast<std::int64_t>(q)) != 1) continue;
        const ExprForm pin = ExprForm::make(FormKind::rational, p, q);
        if (interval_distance(pin.value, prob.box()[i]) > 0.0) continue;
        if (pin.complexity >= best_cost) continue;
        const PinnedSolve s = solve_pinned(cfg, name, pin.value, base);
        if (!s.converged) continue;
        std::vector<ExactAssignment> forms{{name, pin}};
        int cost = pin.complexity;
        for (const auto& other : prob.names()) {
          if (other == name) continue;
          const auto id = identify(s.values.at(other), opt.tol, table);
          if (id.empty()) {
            cost = std::numeric_limits<int>::max();
            break;
          }
          forms.push_back({other, id.top().form});
          cost += id.top().form.complexity;
        }
        if (cost < best_cost) {
          best_cost = cost;
          best = std::move(forms);
        }
      }
    }
  }
  if (!best) return;
  std::vector<double> snapped(prob.dim());
  for (std::size_t i = 0; i < prob.dim(); ++i)
    for (const auto& a : *best)
      if (a.variable == prob.names()[i]) snapped[i] = a.form.value;
  const ResidualValue r = prob.objective(snapped);
  if (!r.feasible || !(r.value < cfg.tol_converged)) return;
  res.best_params = std::move(snapped);
  res.residual = r.value;
  res.simplified = true;
  res.exact = std::move(*best);
  std::sort(res.exact.begin(), res.exact.end(), [&](const auto& a, const auto& b) {
    auto pos = [&](const std::string& n) {
      return std::find(res.names.begin(), res.names.end(), n) - res.names.begin();
    };
    return pos(a.variable) < pos(b.variable);
  });
  res.trace.push_back({res.trace.empty() ? 0 : res.trace.back().iteration + 1, res.residual});
}

double resource_entropy(double c0) {
  const double side = std::sqrt((1.0 - c0) / 2.0);
  const std::array<double, 3> lam{std::sqrt(c0), side, side};
  return entropy_ebits(lam);
}

struct CurvePoint {
  double x;
  std::map<std::string, double> values;
  double c0;
};

// Largest c0 on the fixed-theta solution curve through the given solution,
// parametrized by x. nullopt when the curve cannot be followed.
std::optional<CurvePoint> extremal_c0(const SearchConfig& cfg,
                                      const std::map<std::string, double>& solution) {
  auto solve_at = [&](double x, const std::map<std::string, double>& warm)
      -> std::optional<CurvePoint> {
    const PinnedSolve s = solve_pinned(cfg, "x", x, warm);
    if (!s.converged) return std::nullopt;
    return CurvePoint{x, s.values, s.values.at("c0")};
  };
  Interval xb = cfg.default_bounds;
  if (auto it = cfg.bounds.find("x"); it != cfg.bounds.end()) xb = it->second;

  CurvePoint center{solution.at("x"), solution, solution.at("c0")};
  constexpr int kHalf = 12;
  constexpr double kWidth = 0.6;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<std::optional<CurvePoint>> grid(2 * kHalf + 1);
    grid[kHalf] = center;
    for (int dir : {-1, 1}) {
      CurvePoint prev = center;
      for (int i = 1; i <= kHalf; ++i) {
        const double x = center.x + dir * kWidth * i / kHalf;
        if (interval_distance(x, xb) > 0.0) break;
        auto pt = solve_at(x, prev.values);
        if (!pt) break;
        grid[kHalf + dir * i] = pt;
        prev = *pt;
      }
    }
    int arg = kHalf;
    for (int i = 0; i <= 2 * kHalf; ++i)
      if (grid[i] && grid[i]->c0 > grid[arg]->c0) arg = i;
    const bool interior = arg > 0 && arg < 2 * kHalf && grid[arg - 1] && grid[arg + 1];
    if (!interior) {
      if (arg == kHalf) return center;  // curve cannot be followed past here
      center = *grid[arg];
      continue;
    }
    // Golden-section refinement on [x_{arg-1}, x_{arg+1}].
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = grid[arg - 1]->x, b = grid[arg + 1]->x;
    CurvePoint best = *grid[arg];
    auto probe = [&](double x) {
      auto pt = solve_at(x, best.values);
      if (pt && pt->c0 > best.c0) best = *pt;
      return pt ? pt->c0 : -std::numeric_limits<double>::infinity();
    };
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = probe(x1), f2 = probe(x2);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
      if (f1 > f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = probe(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = probe(x2);
      }
    }
    return best;
  }
  return center;
}

}  // namespace

std::optional<double> SearchResult::param(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return best_params[i];
  return std::nullopt;
}

std::vector<std::string> free_variables(const SearchConfig& config) {
  std::vector<std::string> out;
  const auto all = config.mode == SearchMode::family ? kFamilyNames : free_entry_names();
  for (const auto& n : all)
    if (!config.fixed.contains(n)) out.push_back(n);
  return out;
}

void validate(const SearchConfig& config) {
  const auto known = config.mode == SearchMode::family ? kFamilyNames : free_entry_names();
  auto is_known = [&](const std::string& n) {
    return std::find(known.begin(), known.end(), n) != known.end() || n == "c0" || n == "theta";
  };
  for (const auto& [n, v] : config.fixed) {
    if (!is_known(n)) throw PreconditionError("search config: unknown variable '" + n + "'");
    if (!std::isfinite(v)) throw PreconditionError("search config: fixed '" + n + "' not finite");
  }
  for (const auto& [n, b] : config.bounds) {
    if (!is_known(n)) throw PreconditionError("search config: unknown variable '" + n + "'");
    if (!std::isfinite(b.lo) || !std::isfinite(b.hi) || !(b.lo < b.hi))
      throw PreconditionError("search config: bounds of '" + n + "' must be finite with lo < hi");
  }
  for (const auto& [n, v] : config.start) {
    if (!is_known(n)) throw PreconditionError("search config: unknown variable '" + n + "'");
    if (!std::isfinite(v)) throw PreconditionError("search config: start '" + n + "' not finite");
  }
  if (config.mode == SearchMode::free &&
      (!config.fixed.contains("c0") || !config.fixed.contains("theta"))) {
    throw PreconditionError("search config: free mode requires fixed c0 and theta");
  }
  const auto names = free_variables(config);
  if (names.empty()) throw PreconditionError("search config: no free variables");
  for (const auto& n : names) {
    if (config.mode == SearchMode::family && !config.bounds.contains(n))
      throw PreconditionError("search config: missing bounds for '" + n + "'");
  }
  if (!std::isfinite(config.default_bounds.lo) || !std::isfinite(config.default_bounds.hi) ||
      !(config.default_bounds.lo < config.default_bounds.hi))
    throw PreconditionError("search config: default bounds must be finite with lo < hi");
  if (!(config.tol_converged > 0.0)) throw PreconditionError("search config: tol_converged must be > 0");
  if (config.max_evaluations < 1) throw PreconditionError("search config: max_evaluations must be >= 1");
  if (config.max_lm_iterations < 0) throw PreconditionError("search config: max_lm_iterations must be >= 0");
  if (config.restarts < 1) throw PreconditionError("search config: restarts must be >= 1");
  if (config.simplify.enabled && (config.simplify.max_q < 1 || !(config.simplify.window > 0.0) ||
                                  !(config.simplify.tol > 0.0)))
    throw PreconditionError("search config: invalid simplify options");
}

ResidualValue residual(const SearchConfig& config, std::span<const double> params) {
  validate(config);
  const Problem prob(config);
  if (params.size() != prob.dim())
    throw DimensionError("residual: expected " + std::to_string(prob.dim()) + " parameters");
  return prob.objective(params);
}

ResidualValue family_residual(double x, double y, double c0, double theta) {
  SearchConfig cfg;
  cfg.fixed = {{"y", y}, {"c0", c0}, {"theta", theta}};
  cfg.bounds["x"] = {x - 1.0, x + 1.0};
  const Problem prob(cfg);
  const std::array<double, 1> v{x};
  return prob.objective(v);
}

SepProtocol build_protocol(const SearchConfig& config, std::span<const double> params) {
  validate(config);
  const Problem prob(config);
  if (params.size() != prob.dim())
    throw DimensionError("build_protocol: expected " + std::to_string(prob.dim()) + " parameters");
  if (prob.infeasibility(params) > 0.0) throw PreconditionError("build_protocol: infeasible parameters");
  return prob.build(params);
}

SearchResult optimize(const SearchConfig& config) {
  validate(config);
  const Problem prob(config);
  const auto restarts = static_cast<std::size_t>(config.restarts);
  std::vector<Descent> runs(restarts);
  std::vector<double> start_values(restarts);
  auto work = [&](std::size_t r) {
    auto x0 = start_point(prob, static_cast<int>(r));
    start_values[r] = prob.objective(x0).value;
    runs[r] = nelder_mead(prob, std::move(x0), config.max_evaluations, config.tol_converged);
  };
  if (config.parallel && restarts > 1) {
    const std::size_t workers =
        std::min<std::size_t>(restarts, std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t r = w; r < restarts; r += workers) work(r);
      });
    for (auto& t : pool) t.join();
  } else {
    for (std::size_t r = 0; r < restarts; ++r) work(r);
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (runs[r].f < runs[best].f) best = r;

  SearchResult res;
  res.names = prob.names();
  res.best_restart = static_cast<int>(best);
  res.start_residual = *std::min_element(start_values.begin(), start_values.end());
  res.trace = runs[best].trace;
  for (const auto& r : runs) res.evaluations += r.evaluations;
  res.best_params = runs[best].x;
  res.residual = runs[best].f;

  if (prob.infeasibility(res.best_params) == 0.0 && config.max_lm_iterations > 0) {
    const int next = res.trace.empty() ? 0 : res.trace.back().iteration + 1;
    Descent polish = levenberg_marquardt(prob, res.best_params, config.max_lm_iterations, next);
    res.evaluations += polish.evaluations;
    if (polish.f < res.residual) {
      res.trace.insert(res.trace.end(), polish.trace.begin(), polish.trace.end());
      res.best_params = std::move(polish.x);
      res.residual = polish.f;
    }
  }
  res.converged = res.residual < config.tol_converged;
  if (res.converged && config.simplify.enabled && config.mode == SearchMode::family) simplify(prob, res);
  if (prob.infeasibility(res.best_params) == 0.0) {
    try {
      res.protocol = prob.build(res.best_params);
    } catch (const Error&) {
    }
  }
  return res;
}

ContinuationResult continuation(const SearchConfig& config, const Sweep& sweep) {
  const auto known = config.mode == SearchMode::family ? kFamilyNames : free_entry_names();
  if (std::find(known.begin(), known.end(), sweep.variable) == known.end() &&
      sweep.variable != "c0" && sweep.variable != "theta") {
    throw PreconditionError("continuation: unknown sweep variable '" + sweep.variable + "'");
  }
  if (sweep.steps < 1 || !std::isfinite(sweep.from) || !std::isfinite(sweep.to))
    throw PreconditionError("continuation: need steps >= 1 and a finite range");
  validate(pinned(config, sweep.variable, sweep.from, config.start));

  ContinuationResult out;
  out.sweep = sweep;
  std::map<std::string, double> warm = config.start;
  for (int i = 0; i < sweep.steps; ++i) {
    const double value =
        sweep.steps == 1 ? sweep.from
                         : sweep.from + (sweep.to - sweep.from) * i / (sweep.steps - 1);
    SearchConfig cfg = pinned(config, sweep.variable, value, warm);
    if (i > 0) cfg.simplify.enabled = false;
    ContinuationPoint pt;
    pt.value = value;
    pt.result = optimize(cfg);
    if (!pt.result.converged) {
      std::ostringstream os;
      os << "no convergence at " << sweep.variable << " = " << value << " (residual "
         << pt.result.residual << ")";
      out.truncated = true;
      out.message = os.str();
      out.points.push_back(std::move(pt));
      break;
    }
    const auto solution = as_map(pt.result.names, pt.result.best_params);
    warm = solution;
    const auto names = free_variables(cfg);
    auto has = [&](const char* n) { return std::find(names.begin(), names.end(), n) != names.end(); };
    if (cfg.mode == SearchMode::family && has("x") && has("c0") && !has("theta")) {
      if (auto ext = extremal_c0(cfg, solution)) {
        pt.extremal_c0 = ext->c0;
        pt.extremal_entropy = resource_entropy(ext->c0);
        for (const auto& n : kFamilyNames)
          pt.extremal_params.push_back(ext->values.contains(n) ? ext->values.at(n) : cfg.fixed.at(n));
      }
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

}  // namespace sepgate
