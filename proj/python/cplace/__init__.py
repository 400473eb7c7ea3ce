# Copyright 2026 The cplace Authors
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

"""Python bindings for the cplace coupler placement library.

Functions taking or returning documents use the same JSON formats as the
``cplace`` command-line tool; results are returned as parsed dictionaries.
"""

import json

from . import _core
from ._core import (
    CapExceededError,
    CplaceError,
    DisconnectedError,
    DomainError,
    InfeasibleError,
    ParseError,
    ValidationError,
    coupler_ttf,
    hop_distances,
    ttf_edge_weight,
)

__all__ = [
    "CapExceededError",
    "CplaceError",
    "DisconnectedError",
    "DomainError",
    "InfeasibleError",
    "ParseError",
    "ValidationError",
    "coupler_ttf",
    "evaluate",
    "generate_topology",
    "hop_distances",
    "normalize_device",
    "optimize",
    "random_circuit",
    "ttf_edge_weight",
    "validate",
]


def _text(doc):
    return doc if isinstance(doc, str) else json.dumps(doc)


def _config(config):
    return "" if config is None else _text(config)


def generate_topology(kind, n, **options):
    """Device document for a canonical topology (line, ring, grid, star, complete, heavy_hex)."""
    return json.loads(_core.generate_topology(kind, n, **options))


def normalize_device(device, strict=True):
    """Validate a device document and return its canonical form."""
    return json.loads(_core.normalize_device(_text(device), strict))


def evaluate(devices, placement, config=None, strict=True):
    """Cost breakdown of an explicit placement: one list of (u, v) links per adjacent chip pair."""
    return json.loads(
        _core.evaluate([_text(d) for d in devices], placement, _config(config), strict)
    )


def optimize(devices, k, method="anneal", seed=None, config=None, enumeration_cap=10_000_000,
             strict=True):
    """Select coupler links for a chain of chips. ``k`` is an int or one budget per pair."""
    budgets = [k] if isinstance(k, int) else list(k)
    return json.loads(
        _core.optimize([_text(d) for d in devices], budgets, method, seed, _config(config),
                       enumeration_cap, strict)
    )


def random_circuit(num_qubits, depth, seed):
    return json.loads(_core.random_circuit(num_qubits, depth, seed))


def validate(devices, placements, circuits, qubits, depth, seed, config=None, strict=True):
    """Route a seeded random circuit suite over each placement and compare the results."""
    return json.loads(
        _core.validate([_text(d) for d in devices], placements, circuits, qubits, depth, seed,
                       _config(config), strict)
    )
