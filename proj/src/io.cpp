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

#include "sepgate/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sepgate/error.hpp"
#include "sepgate/invsym.hpp"

namespace sepgate {

using nlohmann::json;

namespace {

json complex_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const CMatrix& v) {
  json out = json::array();
  for (const Complex& z : v.data()) out.push_back(complex_json(z));
  return out;
}

json dims_json(const SpaceDims& d) {
  return {{"dA", d.dA}, {"dB", d.dB}, {"dAbar", d.dAbar}, {"dBbar", d.dBbar}, {"da", d.da}, {"db", d.db}};
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("<document>", e.what());
  }
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path.empty() ? "<document>" : path, "expected an object");
  auto it = obj.find(key);
  const std::string full = path.empty() ? key : path + "." + key;
  if (it == obj.end()) throw ParseError(full, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) throw ParseError(key, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ParseError(key, "not finite");
  return v;
}

// Number, or closed-form string such as "2*acos(35/36)".
double number_or_expr(const json& j, const std::string& key) {
  if (j.is_string()) {
    try {
      return evaluate_expr(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(key, e.what());
    }
  }
  return number(j, key);
}

std::size_t positive_int(const json& j, const std::string& key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) throw ParseError(key, "expected an integer");
  const auto v = j.get<long long>();
  if (v < 1) throw ParseError(key, "must be positive");
  return static_cast<std::size_t>(v);
}

Complex complex_of(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) throw ParseError(key, "expected [re, im]");
  return {number(j[0], key), number(j[1], key)};
}

CMatrix vector_of(const json& j, const std::string& key, std::size_t expected) {
  if (!j.is_array()) throw ParseError(key, "expected an array of [re, im]");
  if (j.size() != expected)
    throw ParseError(key, "expected length " + std::to_string(expected) + ", got " +
                              std::to_string(j.size()));
  std::vector<Complex> v;
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(complex_of(j[i], key + "[" + std::to_string(i) + "]"));
  return CMatrix::column(std::move(v));
}

CMatrix matrix_of(const json& j, const std::string& key, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError(key, "expected " + std::to_string(rows) + " rows");
  CMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rk = key + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      throw ParseError(rk, "expected " + std::to_string(cols) + " columns");
    for (std::size_t c = 0; c < cols; ++c)
      m(r, c) = complex_of(j[r][c], rk + "[" + std::to_string(c) + "]");
  }
  return m;
}

SpaceDims dims_of(const json& doc) {
  const json& d = field(doc, "dims", "");
  SpaceDims out;
  out.dA = positive_int(field(d, "dA", "dims"), "dims.dA");
  out.dB = positive_int(field(d, "dB", "dims"), "dims.dB");
  out.dAbar = positive_int(field(d, "dAbar", "dims"), "dims.dAbar");
  out.dBbar = positive_int(field(d, "dBbar", "dims"), "dims.dBbar");
  out.da = positive_int(field(d, "da", "dims"), "dims.da");
  out.db = positive_int(field(d, "db", "dims"), "dims.db");
  try {
    out.validate();
  } catch (const Error& e) {
    throw ParseError("dims", e.what());
  }
  return out;
}

void check_keys(const json& obj, std::initializer_list<std::string_view> allowed,
                const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (auto a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(join(path, it.key()), "unknown key");
  }
}

Interval interval_of(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) throw ParseError(key, "expected [lo, hi]");
  return {number_or_expr(j[0], key), number_or_expr(j[1], key)};
}

json verification_json(const VerificationReport& r) {
  json alphas = json::array();
  for (const Complex& a : r.alphas) alphas.push_back(complex_json(a));
  json out{{"tol", r.tol},
           {"closure_residual", r.closure_residual},
           {"determinism_residual", r.determinism_residual},
           {"alpha_norm_defect", r.alpha_norm_defect},
           {"alphas", alphas},
           {"d_psi", r.d_psi},
           {"d_u", r.d_u},
           {"chain_evaluated", r.chain_evaluated},
           {"passed", r.passed}};
  if (r.chain_evaluated) {
    out["chain_tol"] = r.chain_tol;
    out["chain_residuals"] = r.chain_residuals;
  }
  if (r.uniformity) {
    out["uniformity"] = {{"uniformity_residual", r.uniformity->uniformity_residual},
                         {"psi_hat_residual", r.uniformity->psi_hat_residual},
                         {"coefficients", r.uniformity->coefficients},
                         {"uniform", r.uniformity->uniform}};
  }
  return out;
}

json search_json(const SearchResult& r) {
  json params = json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i) params[r.names[i]] = r.best_params[i];
  json trace = json::array();
  for (const auto& t : r.trace) trace.push_back(json::array({t.iteration, t.residual}));
  json out{{"params", params},
           {"residual", r.residual},
           {"start_residual", r.start_residual},
           {"converged", r.converged},
           {"evaluations", r.evaluations},
           {"best_restart", r.best_restart},
           {"simplified", r.simplified},
           {"trace", trace}};
  if (r.simplified) {
    json exact = json::object();
    for (const auto& a : r.exact) exact[a.variable] = a.form.to_string();
    out["exact"] = exact;
  }
  return out;
}

}  // namespace

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

std::string protocol_to_json(const SepProtocol& p, int indent) {
  json kraus = json::array();
  for (const auto& k : p.kraus) kraus.push_back({{"E", matrix_json(k.e)}, {"F", matrix_json(k.f)}});
  json out{{"dims", dims_json(p.dims)},
           {"resource", vector_json(p.resource)},
           {"unitary", matrix_json(p.unitary)},
           {"kraus", kraus}};
  if (!p.meta.empty()) out["meta"] = p.meta;
  return out.dump(indent) + "\n";
}

SepProtocol protocol_from_json(std::string_view text) {
  const json doc = parse_document(text);
  check_keys(doc, {"dims", "resource", "unitary", "kraus", "meta"}, "");
  SepProtocol p;
  p.dims = dims_of(doc);
  const SpaceDims& d = p.dims;
  p.resource = vector_of(field(doc, "resource", ""), "resource", d.resource_dim());
  p.unitary = matrix_of(field(doc, "unitary", ""), "unitary", d.output_dim(), d.input_dim());
  const json& kraus = field(doc, "kraus", "");
  if (!kraus.is_array() || kraus.empty()) throw ParseError("kraus", "expected a non-empty array");
  for (std::size_t k = 0; k < kraus.size(); ++k) {
    const std::string key = "kraus[" + std::to_string(k) + "]";
    check_keys(kraus[k], {"E", "F"}, key);
    p.kraus.push_back({matrix_of(field(kraus[k], "E", key), key + ".E", d.dAbar, d.dA * d.da),
                       matrix_of(field(kraus[k], "F", key), key + ".F", d.dBbar, d.dB * d.db)});
  }
  if (auto it = doc.find("meta"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("meta", "expected an object of strings");
    for (auto m = it->begin(); m != it->end(); ++m) {
      if (!m->is_string()) throw ParseError("meta." + m.key(), "expected a string");
      p.meta[m.key()] = m->get<std::string>();
    }
  }
  return p;
}

SepProtocol load_protocol(const std::filesystem::path& path) {
  return protocol_from_json(read_text(path));
}

void save_protocol(const std::filesystem::path& path, const SepProtocol& p) {
  write_text(path, protocol_to_json(p));
}

StateDocument state_from_json(std::string_view text) {
  const json doc = parse_document(text);
  StateDocument out;
  if (doc.is_object() && doc.contains("state")) {
    out.da = positive_int(field(doc, "da", ""), "da");
    out.db = positive_int(field(doc, "db", ""), "db");
    out.state = vector_of(doc["state"], "state", out.da * out.db);
    return out;
  }
  const SpaceDims d = dims_of(doc);
  out.da = d.da;
  out.db = d.db;
  out.state = vector_of(field(doc, "resource", ""), "resource", d.resource_dim());
  return out;
}

UnitaryDocument unitary_from_json(std::string_view text) {
  const json doc = parse_document(text);
  UnitaryDocument out;
  out.dims = dims_of(doc);
  out.unitary =
      matrix_of(field(doc, "unitary", ""), "unitary", out.dims.output_dim(), out.dims.input_dim());
  return out;
}

SearchConfig search_config_from_json(std::string_view text) {
  const json doc = parse_document(text);
  if (!doc.is_object()) throw ParseError("<document>", "expected an object");
  check_keys(doc,
             {"mode", "fixed", "bounds", "default_bounds", "start", "max_evaluations",
              "max_lm_iterations", "restarts", "seed", "tol_converged", "parallel", "simplify",
              "sweep"},
             "");
  SearchConfig c;
  if (auto it = doc.find("mode"); it != doc.end()) {
    const std::string m = it->is_string() ? it->get<std::string>() : "";
    if (m == "family") {
      c.mode = SearchMode::family;
    } else if (m == "free") {
      c.mode = SearchMode::free;
    } else {
      throw ParseError("mode", "expected \"family\" or \"free\"");
    }
  }
  auto named_numbers = [&](const char* key, std::map<std::string, double>& dst) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_object()) throw ParseError(key, "expected an object");
    for (auto e = it->begin(); e != it->end(); ++e)
      dst[e.key()] = number_or_expr(*e, std::string(key) + "." + e.key());
  };
  named_numbers("fixed", c.fixed);
  named_numbers("start", c.start);
  if (auto it = doc.find("bounds"); it != doc.end()) {
    if (!it->is_object()) throw ParseError("bounds", "expected an object");
    for (auto e = it->begin(); e != it->end(); ++e)
      c.bounds[e.key()] = interval_of(*e, "bounds." + e.key());
  }
  if (auto it = doc.find("default_bounds"); it != doc.end())
    c.default_bounds = interval_of(*it, "default_bounds");
  auto integer = [&](const char* key, auto& dst) {
    auto it = doc.find(key);
    if (it == doc.end()) return;
    if (!it->is_number_integer() && !it->is_number_unsigned())
      throw ParseError(key, "expected an integer");
    dst = it->get<std::remove_reference_t<decltype(dst)>>();
  };
  integer("max_evaluations", c.max_evaluations);
  integer("max_lm_iterations", c.max_lm_iterations);
  integer("restarts", c.restarts);
  integer("seed", c.seed);
  if (auto it = doc.find("tol_converged"); it != doc.end())
    c.tol_converged = number_or_expr(*it, "tol_converged");
  if (auto it = doc.find("parallel"); it != doc.end()) {
    if (!it->is_boolean()) throw ParseError("parallel", "expected a boolean");
    c.parallel = it->get<bool>();
  }
  if (auto it = doc.find("simplify"); it != doc.end()) {
    if (it->is_boolean()) {
      c.simplify.enabled = it->get<bool>();
    } else if (it->is_object()) {
      check_keys(*it, {"enabled", "max_q", "window", "tol"}, "simplify");
      c.simplify.enabled = it->value("enabled", true);
      if (it->contains("max_q")) c.simplify.max_q = static_cast<int>(positive_int((*it)["max_q"], "simplify.max_q"));
      if (it->contains("window")) c.simplify.window = number((*it)["window"], "simplify.window");
      if (it->contains("tol")) c.simplify.tol = number((*it)["tol"], "simplify.tol");
    } else {
      throw ParseError("simplify", "expected a boolean or an object");
    }
  }
  if (auto it = doc.find("sweep"); it != doc.end()) {
    check_keys(*it, {"variable", "from", "to", "steps"}, "sweep");
    Sweep s;
    const json& var = field(*it, "variable", "sweep");
    if (!var.is_string()) throw ParseError("sweep.variable", "expected a string");
    s.variable = var.get<std::string>();
    s.from = number_or_expr(field(*it, "from", "sweep"), "sweep.from");
    s.to = number_or_expr(field(*it, "to", "sweep"), "sweep.to");
    s.steps = static_cast<int>(positive_int(field(*it, "steps", "sweep"), "sweep.steps"));
    c.sweep = s;
  }
  return c;
}

std::string search_config_to_json(const SearchConfig& c) {
  json bounds = json::object();
  for (const auto& [n, b] : c.bounds) bounds[n] = json::array({b.lo, b.hi});
  json out{{"mode", c.mode == SearchMode::family ? "family" : "free"},
           {"fixed", c.fixed},
           {"bounds", bounds},
           {"default_bounds", json::array({c.default_bounds.lo, c.default_bounds.hi})},
           {"start", c.start},
           {"max_evaluations", c.max_evaluations},
           {"max_lm_iterations", c.max_lm_iterations},
           {"restarts", c.restarts},
           {"seed", c.seed},
           {"tol_converged", c.tol_converged},
           {"parallel", c.parallel},
           {"simplify",
            {{"enabled", c.simplify.enabled},
             {"max_q", c.simplify.max_q},
             {"window", c.simplify.window},
             {"tol", c.simplify.tol}}}};
  if (c.sweep)
    out["sweep"] = {{"variable", c.sweep->variable},
                    {"from", c.sweep->from},
                    {"to", c.sweep->to},
                    {"steps", c.sweep->steps}};
  return out.dump(1) + "\n";
}

std::string report_to_json(const VerificationReport& r) { return verification_json(r).dump(1) + "\n"; }

std::string search_result_to_json(const SearchResult& r) { return search_json(r).dump(1) + "\n"; }

std::string continuation_to_json(const ContinuationResult& r) {
  json points = json::array();
  for (const auto& p : r.points) {
    json e{{"value", p.value}, {"result", search_json(p.result)}};
    if (p.extremal_c0) {
      e["extremal_c0"] = *p.extremal_c0;
      e["extremal_entropy"] = *p.extremal_entropy;
      e["extremal_params"] = p.extremal_params;
    }
    points.push_back(std::move(e));
  }
  json out{{"sweep",
            {{"variable", r.sweep.variable}, {"from", r.sweep.from}, {"to", r.sweep.to}, {"steps", r.sweep.steps}}},
           {"points", points},
           {"truncated", r.truncated}};
  if (!r.message.empty()) out["message"] = r.message;
  return out.dump(1) + "\n";
}

}  // namespace sepgate
