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

"""Separable-operation gate verification, entanglement measures and search."""

import json

import numpy as np

from ._core import (
    DimensionError,
    Error,
    ParseError,
    PreconditionError,
    controlled_phase,
    entropy_ebits,
    evaluate_expr,
    family_params,
    identify,
    is_majorized,
    schmidt_operator,
    schmidt_state,
)
from . import _core

__all__ = [
    "DimensionError",
    "Error",
    "ParseError",
    "PreconditionError",
    "appendix_protocol",
    "canonical_protocol",
    "controlled_phase",
    "entropy_ebits",
    "evaluate_expr",
    "family_params",
    "family_protocol",
    "identify",
    "is_majorized",
    "schmidt_operator",
    "schmidt_state",
    "resource_state",
    "search",
    "verify",
]


def appendix_protocol():
    """The 16-pair sub-ebit controlled-phase protocol as a JSON document."""
    return json.loads(_core.appendix_protocol_json())


def family_protocol(x, y, c0, theta):
    return json.loads(_core.family_protocol_json(x, y, c0, theta))


def canonical_protocol(phi):
    return json.loads(_core.canonical_protocol_json(phi))


def verify(protocol, tol=1e-10, proof_chain=False, chain_tol=1e-8):
    """Verification report for a protocol given as a dict or JSON string."""
    text = protocol if isinstance(protocol, str) else json.dumps(protocol)
    return json.loads(_core.verify_json(text, tol, proof_chain, chain_tol))


def search(config):
    """Runs a search (or a continuation when the config has a sweep)."""
    text = config if isinstance(config, str) else json.dumps(config)
    return json.loads(_core.search_json(text))


def resource_state(protocol):
    return np.array([complex(re, im) for re, im in protocol["resource"]])
