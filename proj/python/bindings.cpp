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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <tuple>
#include <vector>

#include "sepgate/appendix.hpp"
#include "sepgate/entanglement.hpp"
#include "sepgate/error.hpp"
#include "sepgate/invsym.hpp"
#include "sepgate/io.hpp"
#include "sepgate/protocol.hpp"
#include "sepgate/search.hpp"

namespace py = pybind11;
using namespace sepgate;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CMatrix to_matrix(const ComplexArray& a) {
  const auto buf = a.request();
  if (buf.ndim == 1) {
    const auto* p = static_cast<const Complex*>(buf.ptr);
    return CMatrix(buf.shape[0], 1, std::vector<Complex>(p, p + buf.shape[0]));
  }
  if (buf.ndim != 2) throw DimensionError("expected a 1-D or 2-D array");
  const auto* p = static_cast<const Complex*>(buf.ptr);
  return CMatrix(buf.shape[0], buf.shape[1], std::vector<Complex>(p, p + buf.shape[0] * buf.shape[1]));
}

SpaceDims to_dims(const std::tuple<int, int, int, int, int, int>& t) {
  const auto [dA, dB, dAbar, dBbar, da, db] = t;
  SpaceDims d{static_cast<std::size_t>(dA),    static_cast<std::size_t>(dB),
              static_cast<std::size_t>(dAbar), static_cast<std::size_t>(dBbar),
              static_cast<std::size_t>(da),    static_cast<std::size_t>(db)};
  d.validate();
  return d;
}

py::tuple schmidt_tuple(const SchmidtDecomposition& s) { return py::make_tuple(s.coefficients, s.rank); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sepgate native core";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);

  m.def("appendix_protocol_json", [] { return protocol_to_json(exact_solution()); });
  m.def("family_protocol_json",
        [](double x, double y, double c0, double theta) {
          return protocol_to_json(assemble_protocol<Complex>(family_params<double>(x, y, c0, theta)));
        },
        py::arg("x"), py::arg("y"), py::arg("c0"), py::arg("theta"));
  m.def("canonical_protocol_json", [](double phi) { return protocol_to_json(canonical_one_ebit_protocol(phi)); },
        py::arg("phi"));
  m.def("family_params",
        [](double x, double y, double theta) {
          const auto fp = family_params<double>(x, y, theta);
          return py::dict(py::arg("s") = fp.s, py::arg("p") = fp.p);
        },
        py::arg("x"), py::arg("y"), py::arg("theta"));

  m.def("verify_json",
        [](const std::string& protocol, double tol, bool chain, double chain_tol) {
          return report_to_json(verify(protocol_from_json(protocol), tol, chain, chain_tol));
        },
        py::arg("protocol"), py::arg("tol") = kDefaultTol, py::arg("proof_chain") = false,
        py::arg("chain_tol") = kDefaultChainTol);

  m.def("entropy_ebits", [](const std::vector<double>& c) { return entropy_ebits(c); }, py::arg("coefficients"));
  m.def("is_majorized",
        [](const std::vector<double>& x, const std::vector<double>& y) { return is_majorized(x, y); },
        py::arg("x"), py::arg("y"));
  m.def("schmidt_state",
        [](const ComplexArray& psi, int da, int db) {
          return schmidt_tuple(schmidt_state(to_matrix(psi), da, db));
        },
        py::arg("state"), py::arg("da"), py::arg("db"));
  m.def("schmidt_operator",
        [](const ComplexArray& u, const std::tuple<int, int, int, int, int, int>& dims) {
          return schmidt_tuple(schmidt_operator(to_matrix(u), to_dims(dims)));
        },
        py::arg("unitary"), py::arg("dims"));
  m.def("controlled_phase", [](double phi) {
    const CMatrix u = controlled_phase(phi);
    py::array_t<Complex> out({u.rows(), u.cols()});
    std::copy(u.data().begin(), u.data().end(), out.mutable_data());
    return out;
  });

  m.def("identify",
        [](double value, double tol, int top) {
          static const SymbolTable table = SymbolTable::build();
          py::list out;
          const auto r = identify(value, tol, table);
          for (std::size_t i = 0; i < r.candidates.size() && static_cast<int>(i) < top; ++i) {
            const auto& c = r.candidates[i];
            out.append(py::make_tuple(c.form.to_string(), std::string(kind_name(c.form.kind)),
                                      c.form.complexity, c.abs_error));
          }
          return out;
        },
        py::arg("value"), py::arg("tol") = kDefaultIdentifyTol, py::arg("top") = 5);
  m.def("evaluate_expr", [](const std::string& s) { return evaluate_expr(s); }, py::arg("expr"));

  m.def("search_json",
        [](const std::string& config) {
          const SearchConfig cfg = search_config_from_json(config);
          py::gil_scoped_release release;
          if (cfg.sweep) return continuation_to_json(continuation(cfg, *cfg.sweep));
          return search_result_to_json(optimize(cfg));
        },
        py::arg("config"));
}
