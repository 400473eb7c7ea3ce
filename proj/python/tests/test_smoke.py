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

import math

import pytest

import cplace


def line(n, **kw):
    return cplace.generate_topology("line", n, **kw)


def test_generate_and_normalize_round_trip():
    hh = cplace.generate_topology("heavy_hex", 27)
    assert len(hh["qubits"]) == 27
    assert cplace.normalize_device(hh) == hh


def test_unknown_key_strict_and_lenient():
    doc = line(2)
    doc["vendor"] = "x"
    with pytest.raises(cplace.ParseError):
        cplace.normalize_device(doc)
    assert "vendor" not in cplace.normalize_device(doc, strict=False)


def test_hop_distances():
    assert cplace.hop_distances(__import__("json").dumps(line(3)))[0][2] == 2


def test_ttf_values():
    assert cplace.ttf_edge_weight(100.0, 0.0) == 100.0
    assert math.isclose(cplace.coupler_ttf(), 235.0356271776431511, rel_tol=1e-15)
    with pytest.raises(cplace.DomainError):
        cplace.ttf_edge_weight(1.0, 1.0)


def test_evaluate_congestion_only():
    weights = {"weights": {"alpha": 0, "beta": 0, "gamma": 1, "delta": 0, "epsilon": 0}}
    r = cplace.evaluate([line(4), line(3)], [[(1, 0), (1, 1), (1, 2)]], config=weights)
    assert math.isclose(r["system_cost"], 9.0)
    assert r["pairs"][0]["feasible"] is False


def test_optimize_singletons_and_seed_requirement():
    r = cplace.optimize([line(1), line(1)], 1, seed=3)
    assert r["pairs"][0]["links"] == [[0, 0]]
    with pytest.raises(cplace.ValidationError):
        cplace.optimize([line(3), line(3)], 1)
    with pytest.raises(cplace.InfeasibleError):
        cplace.optimize([line(2), line(2)], 3, method="greedy", config={"constraints": {"d_max": 1}})


def test_exhaustive_matches_frozen_optimum():
    r = cplace.optimize([line(3, gate_time_ns=100.0), line(3, gate_time_ns=100.0)], 2,
                        method="exhaustive")
    assert math.isclose(r["system_cost"], 7710.514053628468, rel_tol=1e-12)


def test_random_circuit_and_validate_are_deterministic():
    assert cplace.random_circuit(2, 1, 9)["layers"] == [[[0, 1]]]
    devices = [line(3), line(3)]
    a = cplace.validate(devices, [[[(2, 0)]]], circuits=3, qubits=6, depth=2, seed=4)
    b = cplace.validate(devices, [[[(2, 0)]]], circuits=3, qubits=6, depth=2, seed=4)
    assert a == b
    assert len(a["placements"]) == 1
    with pytest.raises(cplace.DisconnectedError):
        cplace.validate(devices, [[[]]], circuits=0, qubits=6, depth=1, seed=1)
