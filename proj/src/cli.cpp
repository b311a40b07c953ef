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

#include "sepgate/cli.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sepgate/appendix.hpp"
#include "sepgate/entanglement.hpp"
#include "sepgate/error.hpp"
#include "sepgate/invsym.hpp"
#include "sepgate/io.hpp"
#include "sepgate/protocol.hpp"
#include "sepgate/search.hpp"

namespace sepgate::cli {

namespace {

constexpr double kExtendedTol = 1e-25;

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(6) << v;
  return os.str();
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + num(v[i]);
  return s;
}

void print_report(std::ostream& out, const VerificationReport& r) {
  out << "tolerance " << sci(r.tol) << "\n";
  out << "closure_residual " << sci(r.closure_residual) << "\n";
  out << "determinism_residual " << sci(r.determinism_residual) << "\n";
  out << "alpha_norm_defect " << sci(r.alpha_norm_defect) << "\n";
  out << "kraus_pairs " << r.alphas.size() << "\n";
  out << "d_psi " << r.d_psi << "\n";
  out << "d_u " << r.d_u << "\n";
  if (r.chain_evaluated) {
    out << "chain_tolerance " << sci(r.chain_tol) << "\n";
    for (const auto& [k, v] : r.chain_residuals) out << k << "_residual " << sci(v) << "\n";
  }
  if (r.uniformity) {
    out << "uniformity_residual " << sci(r.uniformity->uniformity_residual) << "\n";
    out << "psi_hat_residual " << sci(r.uniformity->psi_hat_residual) << "\n";
    out << "uniform " << (r.uniformity->uniform ? "true" : "false") << "\n";
  }
}

struct VerifyArgs {
  std::string file;
  double tol = kDefaultTol;
  double chain_tol = kDefaultChainTol;
  bool chain = false;
  bool json = false;
};

int do_verify(const VerifyArgs& a, std::ostream& out) {
  const SepProtocol p = load_protocol(a.file);
  const VerificationReport r = verify(p, a.tol, a.chain, a.chain_tol);
  if (a.json) {
    out << report_to_json(r);
  } else {
    if (auto it = p.meta.find("name"); it != p.meta.end()) out << "protocol " << it->second << "\n";
    print_report(out, r);
    out << "passed " << (r.passed ? "true" : "false") << "\n";
  }
  return r.passed ? kPass : kFail;
}

struct AppendixArgs {
  std::string emit;
  double tol = kDefaultTol;
  bool extended = false;
  bool chain = false;
  bool json = false;
};

int do_appendix(const AppendixArgs& a, std::ostream& out) {
  const SepProtocol p = exact_solution<Complex>();
  const VerificationReport r = verify(p, a.tol, a.chain);
  const SchmidtDecomposition sd = schmidt_state(p.resource, p.dims.da, p.dims.db);
  const double entropy = entropy_ebits(sd.coefficients);
  bool passed = r.passed;
  double closure_dd = 0.0, determinism_dd = 0.0, defect_dd = 0.0;
  if (a.extended) {
    const SepProtocolDD q = exact_solution<DDComplex>();
    closure_dd = static_cast<double>(check_closure(q));
    const auto det = check_deterministic(q);
    determinism_dd = static_cast<double>(det.residual);
    defect_dd = static_cast<double>(det.alpha_norm_defect);
    passed = passed && closure_dd < kExtendedTol && determinism_dd < kExtendedTol;
  }
  if (!a.emit.empty()) save_protocol(a.emit, p);
  const auto fp = exact_params<double>();
  if (a.json) {
    nlohmann::json js = nlohmann::json::parse(report_to_json(r));
    js["x"] = fp.x;
    js["y"] = fp.y;
    js["c0"] = fp.c0;
    js["theta"] = fp.theta;
    js["theta_symbolic"] = fp.theta_symbolic;
    js["entropy_ebits"] = entropy;
    if (a.extended) {
      js["extended_precision"] = {{"tol", kExtendedTol},
                                  {"closure_residual", closure_dd},
                                  {"determinism_residual", determinism_dd},
                                  {"alpha_norm_defect", defect_dd}};
    }
    js["passed"] = passed;
    out << js.dump(1) << "\n";
  } else {
    out << "protocol " << p.meta.at("name") << "\n";
    out << "x 9/5\ny -3/5\nc0 81/100\n";
    out << "theta " << fp.theta_symbolic << " = " << std::setprecision(17) << fp.theta << "\n";
    out << "s " << num(fp.s) << "\np " << num(fp.p) << "\n";
    print_report(out, r);
    out << "entropy_ebits " << std::fixed << std::setprecision(6) << entropy << std::defaultfloat << "\n";
    if (a.extended) {
      out << "extended_tolerance " << sci(kExtendedTol) << "\n";
      out << "closure_residual_dd " << sci(closure_dd) << "\n";
      out << "determinism_residual_dd " << sci(determinism_dd) << "\n";
      out << "alpha_norm_defect_dd " << sci(defect_dd) << "\n";
      out << "extended_precision "
          << (closure_dd < kExtendedTol && determinism_dd < kExtendedTol ? "consistent with exact"
                                                                        : "inconsistent")
          << "\n";
    }
    if (!a.emit.empty()) out << "emitted " << a.emit << "\n";
    out << "passed " << (passed ? "true" : "false") << "\n";
  }
  return passed ? kPass : kFail;
}

struct SchmidtArgs {
  std::string state;
  std::string unitary;
  double rank_tol = kDefaultRankTol;
};

int do_schmidt(const SchmidtArgs& a, std::ostream& out) {
  if (!a.state.empty()) {
    const StateDocument doc = state_from_json(read_text(a.state));
    const auto sd = schmidt_state(doc.state, doc.da, doc.db, a.rank_tol);
    out << "rank " << sd.rank << "\n";
    out << "coefficients " << list(sd.coefficients) << "\n";
    out << "entropy_ebits " << num(entropy_ebits(sd.coefficients)) << "\n";
  } else {
    const UnitaryDocument doc = unitary_from_json(read_text(a.unitary));
    const auto sd = schmidt_operator(doc.unitary, doc.dims, a.rank_tol);
    out << "rank " << sd.rank << "\n";
    out << "coefficients " << list(sd.coefficients) << "\n";
  }
  return kPass;
}

int do_entropy(const std::vector<double>& coeffs, std::ostream& out) {
  out << "entropy_ebits " << std::fixed << std::setprecision(6) << entropy_ebits(coeffs)
      << std::defaultfloat << "\n";
  return kPass;
}

struct SearchArgs {
  std::string config;
  std::string out;
  std::string report;
  bool json = false;
};

void print_search(std::ostream& out, const SearchResult& r) {
  for (std::size_t i = 0; i < r.names.size(); ++i)
    out << r.names[i] << " " << std::setprecision(17) << r.best_params[i] << "\n";
  for (const auto& e : r.exact) out << "exact " << e.variable << " " << e.form.to_string() << "\n";
  out << "residual " << sci(r.residual) << "\n";
  out << "evaluations " << r.evaluations << "\n";
  out << "converged " << (r.converged ? "true" : "false") << "\n";
}

int do_search(const SearchArgs& a, std::ostream& out) {
  const SearchConfig cfg = search_config_from_json(read_text(a.config));
  if (cfg.sweep) {
    const ContinuationResult cr = continuation(cfg, *cfg.sweep);
    const std::string js = continuation_to_json(cr);
    if (!a.report.empty()) write_text(a.report, js);
    if (!a.out.empty() && !cr.points.empty()) save_protocol(a.out, cr.points.back().result.protocol);
    if (a.json) {
      out << js;
    } else {
      out << "sweep " << cr.sweep.variable << " " << num(cr.sweep.from) << " .. " << num(cr.sweep.to)
          << " steps " << cr.sweep.steps << "\n";
      for (const auto& p : cr.points) {
        out << cr.sweep.variable << " " << num(p.value) << " residual " << sci(p.result.residual);
        if (p.extremal_c0)
          out << " extremal_c0 " << num(*p.extremal_c0) << " entropy_ebits " << num(*p.extremal_entropy);
        out << "\n";
      }
      out << "truncated " << (cr.truncated ? "true" : "false") << "\n";
      if (!cr.message.empty()) out << "message " << cr.message << "\n";
    }
    return cr.truncated ? kFail : kPass;
  }
  const SearchResult r = optimize(cfg);
  const std::string js = search_result_to_json(r);
  if (!a.report.empty()) write_text(a.report, js);
  if (!a.out.empty() && !r.protocol.kraus.empty()) save_protocol(a.out, r.protocol);
  if (a.json) {
    out << js;
  } else {
    print_search(out, r);
  }
  return r.converged ? kPass : kFail;
}

struct InvsymArgs {
  std::string value;
  double tol = kDefaultIdentifyTol;
  int max_q = 1000;
  int max_q_other = 100;
  std::size_t top = 10;
};

int do_invsym(const InvsymArgs& a, std::ostream& out) {
  double v = 0.0;
  try {
    v = evaluate_expr(a.value);
  } catch (const ParseError&) {
    throw ParseError("value", "cannot read '" + a.value + "' as a number or closed form");
  }
  TableLimits lim;
  lim.max_q_rational = a.max_q;
  lim.max_q_other = a.max_q_other;
  lim.max_abs_value = std::max(lim.max_abs_value, std::ceil(std::abs(v)) + 1.0);
  const SymbolTable table = SymbolTable::build(lim);
  const IdentifyResult res = identify(v, a.tol, table);
  out << "value " << std::setprecision(17) << v << "\n";
  out << "tolerance " << sci(a.tol) << "\n";
  if (res.empty()) {
    out << "no candidates\n";
    return kPass;
  }
  for (std::size_t i = 0; i < res.candidates.size() && i < a.top; ++i) {
    const auto& c = res.candidates[i];
    out << i + 1 << " " << c.form.to_string() << " kind " << kind_name(c.form.kind) << " complexity "
        << c.form.complexity << " error " << sci(c.abs_error) << "\n";
  }
  return kPass;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Verify, construct and search separable-operation protocols for bipartite gates.",
               "sepgate"};
  app.require_subcommand(1);

  VerifyArgs va;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a protocol file");
  verify_cmd->add_option("file", va.file, "Protocol file")->required();
  verify_cmd->add_option("--tol", va.tol, "Residual tolerance")->capture_default_str();
  verify_cmd->add_option("--chain-tol", va.chain_tol, "Proof-chain tolerance")->capture_default_str();
  verify_cmd->add_flag("--proof-chain", va.chain, "Also evaluate the identity chain");
  verify_cmd->add_flag("--json", va.json, "Machine-readable report");

  AppendixArgs aa;
  auto* appendix_cmd = app.add_subcommand("appendix", "Build and verify the exact sub-ebit protocol");
  appendix_cmd->add_option("--emit", aa.emit, "Write the protocol file here");
  appendix_cmd->add_option("--tol", aa.tol, "Residual tolerance")->capture_default_str();
  appendix_cmd->add_flag("--extended-precision", aa.extended, "Also check in double-double");
  appendix_cmd->add_flag("--proof-chain", aa.chain, "Also evaluate the identity chain");
  appendix_cmd->add_flag("--json", aa.json, "Machine-readable report");

  SchmidtArgs sa;
  auto* schmidt_cmd = app.add_subcommand("schmidt", "Schmidt coefficients of a state or unitary");
  auto* st = schmidt_cmd->add_option("--state", sa.state, "State or protocol file");
  auto* un = schmidt_cmd->add_option("--unitary", sa.unitary, "Unitary or protocol file");
  st->excludes(un);
  schmidt_cmd->add_option("--rank-tol", sa.rank_tol, "Relative rank tolerance")->capture_default_str();

  std::vector<double> coeffs;
  auto* entropy_cmd = app.add_subcommand("entropy", "Entanglement entropy in ebits");
  entropy_cmd->add_option("--coeffs", coeffs, "Schmidt coefficients, comma separated")
      ->required()
      ->delimiter(',');

  SearchArgs sra;
  auto* search_cmd = app.add_subcommand("search", "Run an optimization or continuation");
  search_cmd->add_option("--config", sra.config, "Search config file")->required();
  search_cmd->add_option("--out", sra.out, "Write the best protocol here");
  search_cmd->add_option("--report", sra.report, "Write the JSON run report here");
  search_cmd->add_flag("--json", sra.json, "Print the JSON run report");

  InvsymArgs ia;
  auto* invsym_cmd = app.add_subcommand("invsym", "Identify a constant as a closed form");
  invsym_cmd->add_option("value", ia.value, "Number or closed form")->required();
  invsym_cmd->add_option("--tol", ia.tol, "Match tolerance")->capture_default_str();
  invsym_cmd->add_option("--max-q", ia.max_q, "Largest rational denominator")->capture_default_str();
  invsym_cmd->add_option("--max-q-other", ia.max_q_other, "Largest denominator of other forms")
      ->capture_default_str();
  invsym_cmd->add_option("--top", ia.top, "Candidates to print")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (schmidt_cmd->parsed() && sa.state.empty() && sa.unitary.empty())
      throw CLI::RequiredError("--state or --unitary");
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kPass;
    }
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (verify_cmd->parsed()) return do_verify(va, out);
    if (appendix_cmd->parsed()) return do_appendix(aa, out);
    if (schmidt_cmd->parsed()) return do_schmidt(sa, out);
    if (entropy_cmd->parsed()) return do_entropy(coeffs, out);
    if (search_cmd->parsed()) return do_search(sra, out);
    if (invsym_cmd->parsed()) return do_invsym(ia, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  }
  err << app.help();
  return kUsage;
}

}  // namespace sepgate::cli
