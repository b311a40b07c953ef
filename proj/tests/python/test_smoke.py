# Copyright 2026 The sepgate Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import sepgate

THETA = 2 * math.acos(35 / 36)


def test_appendix_protocol_verifies():
    proto = sepgate.appendix_protocol()
    assert len(proto["kraus"]) == 16
    report = sepgate.verify(proto, proof_chain=True)
    assert report["passed"]
    assert report["closure_residual"] < 1e-10
    assert report["determinism_residual"] < 1e-10
    assert all(v < 1e-8 for v in report["chain_residuals"].values())


def test_perturbed_protocol_fails():
    proto = sepgate.appendix_protocol()
    proto["kraus"][0]["E"][0][0][0] *= 1.5
    assert not sepgate.verify(proto)["passed"]


def test_family_params():
    fp = sepgate.family_params(1.8, -0.6, THETA)
    assert fp["s"] == pytest.approx(0.8, abs=1e-15)
    assert fp["p"] == pytest.approx(0.5, abs=1e-15)
    with pytest.raises(sepgate.PreconditionError):
        sepgate.family_params(0.0, 0.0, THETA)


def test_entropy_and_majorization():
    assert sepgate.entropy_ebits([math.sqrt(0.5)] * 2) == pytest.approx(1.0)
    assert sepgate.entropy_ebits([0.9, math.sqrt(0.095), math.sqrt(0.095)]) == pytest.approx(0.8915, abs=5e-4)
    assert not sepgate.is_majorized([0.81, 0.095, 0.095], [0.5, 0.5, 0.0])
    assert sepgate.is_majorized([0.25] * 4, [0.5, 0.5, 0.0, 0.0])


def test_schmidt_ranks():
    dims = (2, 2, 2, 2, 1, 1)
    assert sepgate.schmidt_operator(sepgate.controlled_phase(math.pi), dims)[1] == 2
    assert sepgate.schmidt_operator(np.eye(4), dims)[1] == 1
    psi = sepgate.resource_state(sepgate.appendix_protocol())
    coeffs, rank = sepgate.schmidt_state(psi, 3, 3)
    assert rank == 3
    assert coeffs[0] ** 2 == pytest.approx(0.81)


def test_identify():
    assert sepgate.identify(0.81)[0][0] == "81/100"
    form, kind, _, _ = sepgate.identify(THETA)[0]
    assert (form, kind) == ("2*acos(35/36)", "two_arccos_rational")
    assert sepgate.evaluate_expr("2*acos(35/36)") == THETA


def test_search_with_simplify():
    result = sepgate.search({
        "fixed": {"theta": "2*acos(35/36)"},
        "bounds": {"x": [0, 4], "y": [-2, 2], "c0": [0.01, 0.99]},
        "start": {"x": 1.7, "y": -0.55, "c0": 0.8},
        "simplify": True,
    })
    assert result["converged"]
    assert result["residual"] < 1e-16


def test_parse_error():
    with pytest.raises(sepgate.ParseError):
        sepgate.verify("{}")
