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

#include <cstdio>
#include <unistd.h>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "sepgate/appendix.hpp"
#include "sepgate/cli.hpp"
#include "sepgate/error.hpp"
#include "sepgate/io.hpp"

using namespace sepgate;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "sepgate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("sepgate_test_" + std::to_string(::getpid()) + "_" +
                                         std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
  static inline int counter_ = 0;
};

double field_value(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string k;
  std::string v;
  while (in >> k) {
    std::getline(in, v);
    if (k == key) return std::stod(v);
  }
  FAIL("missing key " << key);
  return 0.0;
}

}  // namespace

TEST_SUITE("protocol files") {
  TEST_CASE("round trip is value-identical") {
    const SepProtocol p = exact_solution();
    const SepProtocol q = protocol_from_json(protocol_to_json(p));
    CHECK(q.dims == p.dims);
    CHECK(q.resource == p.resource);
    CHECK(q.unitary == p.unitary);
    REQUIRE(q.kraus.size() == p.kraus.size());
    for (std::size_t k = 0; k < p.kraus.size(); ++k) {
      CHECK(q.kraus[k].e == p.kraus[k].e);
      CHECK(q.kraus[k].f == p.kraus[k].f);
    }
    CHECK(q.meta == p.meta);
  }

  TEST_CASE("parse errors name the key") {
    nlohmann::json doc = nlohmann::json::parse(protocol_to_json(canonical_one_ebit_protocol(0.5)));
    auto key_of = [](const nlohmann::json& j) {
      try {
        protocol_from_json(j.dump());
      } catch (const ParseError& e) {
        return e.key();
      }
      return std::string("<none>");
    };
    auto d = doc;
    d.erase("unitary");
    CHECK(key_of(d) == "unitary");
    d = doc;
    d["kraus"][2]["F"][1][0] = "x";
    CHECK(key_of(d) == "kraus[2].F[1][0]");
    d = doc;
    d["dims"]["dAbar"] = 3;
    CHECK(key_of(d) == "dims");
    d = doc;
    d["resource"].erase(0);
    CHECK(key_of(d) == "resource");
    d = doc;
    d["extra"] = 1;
    CHECK(key_of(d) == "extra");
    CHECK_THROWS_AS(protocol_from_json("{not json"), ParseError);
  }

  TEST_CASE("state and unitary documents") {
    const auto s = state_from_json(R"j({"da": 2, "db": 2, "state": [[0.6, 0], [0, 0], [0, 0], [0.8, 0]]})j");
    CHECK(s.da == 2);
    CHECK(s.state[3] == Complex(0.8));
    const std::string proto = protocol_to_json(exact_solution());
    CHECK(state_from_json(proto).da == 3);
    CHECK(unitary_from_json(proto).dims.dA == 2);
  }
}

TEST_SUITE("search configs") {
  TEST_CASE("closed forms and defaults") {
    const auto c = search_config_from_json(R"j({
      "mode": "family",
      "fixed": {"theta": "2*acos(35/36)"},
      "bounds": {"x": [0, 4], "y": [-2, 2], "c0": ["1/100", 0.99]},
      "start": {"x": 1.7, "y": -0.55, "c0": 0.8},
      "simplify": true,
      "sweep": {"variable": "theta", "from": 0.2, "to": 0.5, "steps": 7}
    })j");
    CHECK(c.fixed.at("theta") == 2.0 * std::acos(35.0 / 36.0));
    CHECK(c.bounds.at("c0").lo == 0.01);
    CHECK(c.simplify.enabled);
    REQUIRE(c.sweep.has_value());
    CHECK(c.sweep->steps == 7);
    CHECK(c.max_evaluations == 20000);
    const auto back = search_config_from_json(search_config_to_json(c));
    CHECK(back.fixed == c.fixed);
    CHECK(back.start == c.start);
  }

  TEST_CASE("errors name the key") {
    auto key_of = [](const char* text) {
      try {
        search_config_from_json(text);
      } catch (const ParseError& e) {
        return e.key();
      }
      return std::string("<none>");
    };
    CHECK(key_of(R"j({"mode": "other"})j") == "mode");
    CHECK(key_of(R"j({"bounds": {"x": [0]}})j") == "bounds.x");
    CHECK(key_of(R"j({"fixed": {"theta": "acos(7)"}})j") == "fixed.theta");
    CHECK(key_of(R"j({"restarts": 1.5})j") == "restarts");
    CHECK(key_of(R"j({"colour": 1})j") == "colour");
  }
}

TEST_SUITE("cli") {
  TEST_CASE("appendix") {
    const Run r = run_cli({"appendix"});
    CHECK(r.code == cli::kPass);
    CHECK(field_value(r.out, "closure_residual") < 1e-10);
    CHECK(field_value(r.out, "determinism_residual") < 1e-10);
    CHECK(std::abs(field_value(r.out, "entropy_ebits") - 0.8915) < 5e-4);
    CHECK(r.out.find("tolerance") != std::string::npos);
  }

  TEST_CASE("appendix extended precision and json") {
    const Run r = run_cli({"appendix", "--extended-precision", "--json"});
    CHECK(r.code == cli::kPass);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["extended_precision"]["closure_residual"].get<double>() < 1e-25);
    CHECK(j["closure_residual"].get<double>() < 1e-10);
    CHECK(j["passed"].get<bool>());
  }

  TEST_CASE("emit then verify reproduces residuals") {
    TempDir dir;
    const std::string file = dir.file("appendix.json");
    const Run a = run_cli({"appendix", "--emit", file});
    REQUIRE(a.code == 0);
    const Run v = run_cli({"verify", file});
    CHECK(v.code == cli::kPass);
    for (const char* key : {"closure_residual", "determinism_residual", "alpha_norm_defect"})
      CHECK(std::abs(field_value(a.out, key) - field_value(v.out, key)) <= 1e-15);
    const Run chain = run_cli({"verify", file, "--proof-chain", "--json"});
    CHECK(chain.code == cli::kPass);
    const auto j = nlohmann::json::parse(chain.out);
    for (const char* key : {"dual_kraus", "adjoint_sum", "kraus_sum", "dual_sum",
                            "restricted_sum", "inverse_contraction", "restricted_kraus"})
      CHECK(j["chain_residuals"][key].get<double>() < 1e-8);
    const Run human = run_cli({"verify", file, "--proof-chain"});
    for (const auto& [k, v] : j["chain_residuals"].items())
      CHECK(human.out.find(k + "_residual") != std::string::npos);
  }

  TEST_CASE("verification failure") {
    TempDir dir;
    SepProtocol p = exact_solution();
    p.kraus[0].e *= Complex(1.01);
    const std::string file = dir.file("perturbed.json");
    save_protocol(file, p);
    const Run r = run_cli({"verify", file});
    CHECK(r.code == cli::kFail);
    CHECK(field_value(r.out, "closure_residual") > 1e-3);
    CHECK(r.out.find("passed false") != std::string::npos);
  }

  TEST_CASE("entropy") {
    const Run r = run_cli({"entropy", "--coeffs", "0.70710678,0.70710678"});
    CHECK(r.code == 0);
    CHECK(field_value(r.out, "entropy_ebits") == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(run_cli({"entropy", "--coeffs", "0.5,0.5"}).code == cli::kInput);
  }

  TEST_CASE("schmidt") {
    TempDir dir;
    const std::string file = dir.file("p.json");
    save_protocol(file, exact_solution());
    const Run s = run_cli({"schmidt", "--state", file});
    CHECK(s.code == 0);
    CHECK(field_value(s.out, "rank") == 3);
    const Run u = run_cli({"schmidt", "--unitary", file});
    CHECK(field_value(u.out, "rank") == 2);
    CHECK(run_cli({"schmidt"}).code == cli::kUsage);
    CHECK(run_cli({"schmidt", "--state", file, "--unitary", file}).code == cli::kUsage);
  }

  TEST_CASE("invsym") {
    const Run r = run_cli({"invsym", "0.81"});
    CHECK(r.code == 0);
    CHECK(r.out.find("1 81/100 kind rational") != std::string::npos);
    const Run t = run_cli({"invsym", "0.4725026", "--tol", "1e-6"});
    CHECK(t.out.find("1 2*acos(35/36)") != std::string::npos);
    CHECK(run_cli({"invsym", "pear"}).code == cli::kInput);
  }

  TEST_CASE("search") {
    TempDir dir;
    const std::string cfg = dir.file("cfg.json"), out = dir.file("best.json");
    write_text(cfg, R"j({"fixed": {"theta": "2*acos(35/36)"},
      "bounds": {"x": [0, 4], "y": [-2, 2], "c0": [0.01, 0.99]},
      "start": {"x": 1.7, "y": -0.55, "c0": 0.8}, "simplify": true})j");
    const Run r = run_cli({"search", "--config", cfg, "--out", out});
    CHECK(r.code == cli::kPass);
    CHECK(r.out.find("exact x 9/5") != std::string::npos);
    CHECK(run_cli({"verify", out}).code == cli::kPass);
  }

  TEST_CASE("exit codes") {
    CHECK(run_cli({}).code == cli::kUsage);
    CHECK(run_cli({"frobnicate"}).code == cli::kUsage);
    CHECK(run_cli({"verify"}).code == cli::kUsage);
    CHECK(run_cli({"appendix", "--bogus"}).code == cli::kUsage);
    CHECK(run_cli({"--help"}).code == cli::kPass);
    const Run missing = run_cli({"verify", "/nonexistent/file.json"});
    CHECK(missing.code == cli::kInput);
    CHECK(missing.err.find("/nonexistent/file.json") != std::string::npos);
    TempDir dir;
    const std::string bad = dir.file("bad.json");
    write_text(bad, R"j({"dims": {"dA": 2, "dB": 2, "dAbar": 2, "dBbar": 2, "da": 1, "db": 1}})j");
    const Run parse = run_cli({"verify", bad});
    CHECK(parse.code == cli::kInput);
    CHECK(parse.err.find("resource") != std::string::npos);
  }
}
