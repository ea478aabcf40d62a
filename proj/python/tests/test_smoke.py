# Copyright 2026 The marisim Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import math

import numpy as np
import pytest

import marisim


def random_snapshot(rng, n, m, i):
    def cn(*shape):
        return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / math.sqrt(2)

    return marisim.Snapshot(cn(m, i), [cn(n, m) for _ in range(i)], list(rng.uniform(0.5, 2.0, i)))


def test_sea_state_4_wave():
    w = marisim.wave(4)
    assert w["period"] == 9.0
    assert w["amplitude"] == pytest.approx(0.9375)
    assert w["wavelength"] == pytest.approx(9.81 * 81 / (2 * math.pi))


def test_path_loss_examples():
    assert marisim.two_ray_breakpoint(2, 5) == pytest.approx(773.9, abs=0.05)
    assert marisim.path_loss_los(500, 2, 5) == pytest.approx(99.4, abs=0.05)
    assert marisim.path_loss_nlos(10) == pytest.approx(151.6)


def test_energy_examples():
    assert marisim.harvested_power(1.0, 10.0) == pytest.approx(362, abs=0.5)
    assert marisim.available_tx_power(50, 10, 100) == 40


def test_los_probability_calm_sea():
    assert marisim.los_probability(3, 2.0, 2.0, samples=2000) >= 0.99


def test_noiseless_estimation_is_exact():
    rng = np.random.default_rng(0)
    s = random_snapshot(rng, 6, 2, 3)
    s = marisim.Snapshot(s.Hd, s.G, s.tx_power, 1e-3, 1.0)
    hd, g = marisim.estimate_channels(s, noiseless=True)
    assert np.allclose(hd, s.Hd, atol=1e-12)
    for a, b in zip(g, s.G):
        assert np.allclose(a, b, atol=1e-12)


def test_optimizer_beats_trivial_and_respects_bound():
    rng = np.random.default_rng(1)
    s = random_snapshot(rng, 3, 1, 2)
    sol = marisim.optimize_phases(s)
    assert np.allclose(np.abs(sol["q"]), 1.0)
    assert sol["capacity"] >= marisim.sum_capacity(s, np.ones(3, dtype=complex)) - 1e-12
    assert sol["capacity"] >= 0.95 * marisim.brute_force_phases(s, 16)["capacity"]
    assert sol["objective"] <= sol["dual_bound"] * (1 + 1e-9)


def test_snapshot_json_round_trip():
    rng = np.random.default_rng(2)
    s = random_snapshot(rng, 2, 2, 1)
    back = marisim.Snapshot.from_json(s.to_json())
    assert np.array_equal(back.Hd, s.Hd)


def test_sweep_is_deterministic():
    cfg = json.loads(marisim.default_config())
    cfg["radio"]["ris_elements"] = 8
    text = json.dumps(cfg)
    a = marisim.run_sweep(text, "hr0", [2.0, 5.0], [4], trials=2)
    b = marisim.run_sweep(text, "hr0", [2.0, 5.0], [4], trials=2)
    assert a == b
    assert len(a.strip().splitlines()) == 3


def test_interval_record():
    cfg = json.loads(marisim.default_config())
    cfg["radio"]["ris_elements"] = 8
    r = marisim.run_interval(json.dumps(cfg), 0, 5)
    assert r["status"] in {"ok", "no_active_iot"}
    assert r["eff_rate_ris"] == pytest.approx(r["overhead_factor"] * r["rate_ris"])


def test_config_errors_raise_value_error():
    with pytest.raises(ValueError):
        marisim.run_interval('{"bogus": 1}')
