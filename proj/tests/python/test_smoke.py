import cmath
import json
import math

import pytest

import _psnads


def scenario(**overrides):
    cfg = {
        "system": {
            "levels": [
                {"label": "g", "omega": 0.0},
                {"label": "e", "omega": 1.0},
            ],
            "dipoles": [{"a": 0, "b": 1, "mu": 1.0}],
        },
        "pulse": {
            "carrier": 1.0,
            "envelope": {
                "shape": "constant",
                "amplitude": 0.05,
                "t_on": -1.0,
                "t_off": 1e6,
            },
        },
        "initial_state": [[1.0, 0.0], [0.0, 0.0]],
        "time": {"start": 0.0, "end": 2 * math.pi / 0.05, "samples_per_cycle": 20},
        "frame": "rwa",
    }
    cfg.update(overrides)
    return json.dumps(cfg)


def test_mixing_angle_limits():
    assert _psnads.mixing_angle(1.0, 0.0) == 0.0
    assert _psnads.mixing_angle(0.0, 0.3) == pytest.approx(math.pi / 2)
    with pytest.raises(Exception):
        _psnads.mixing_angle(0.0, 0.0)


def test_quasi_energies_bare_limit():
    g, e = _psnads.quasi_energies(0.5, 2.0, 1.0, 0.0)
    assert g == pytest.approx(0.5)
    assert e == pytest.approx(2.0)


def test_quasi_energy_gap_is_generalized_rabi():
    delta, rabi = 0.3, 0.4
    g, e = _psnads.quasi_energies(0.0, 1.0 + delta, 1.0, rabi)
    gap = (e - g).real - 1.0  # remove the carrier offset of the upper branch
    assert gap == pytest.approx(math.hypot(delta, rabi), abs=1e-12)


def test_integrate_full_rabi_cycle():
    t, amps, norms = _psnads.integrate(scenario())
    assert len(t) == len(amps) == len(norms)
    assert norms[0] == pytest.approx(1.0, abs=1e-12)
    # resonant drive returns to the ground state after one Rabi period
    assert abs(amps[-1][1]) ** 2 == pytest.approx(0.0, abs=1e-6)
    p_peak = max(abs(a[1]) ** 2 for a in amps)
    assert p_peak == pytest.approx(1.0, abs=1e-6)


def test_build_psnads_resonant_strengths():
    d = _psnads.build_psnads(scenario(), 1.0)
    # resonance: theta = pi/2, equal real/virtual weights
    assert d["virtuals"][0]["theta"] == pytest.approx(math.pi / 2)
    assert d["C_r"] == pytest.approx(math.cos(math.pi / 4), abs=1e-12)
    assert d["virtuals"][0]["C_v"] == pytest.approx(math.sin(math.pi / 4), abs=1e-12)


def test_visibility_limits():
    assert _psnads.visibility([0.3, 0.5], [0.7, 0.7]) == pytest.approx(1.0)
    assert _psnads.visibility([0.4, 0.4], [0.0, math.pi]) == pytest.approx(0.0, abs=1e-14)


def test_run_scenario_writes_manifest(tmp_path):
    cfg = scenario(analyses=[{"type": "fast_correlation", "i": 0}])
    manifest = json.loads(_psnads.run_scenario(cfg, str(tmp_path)))
    assert manifest["summary"]["all_passed"] is True
    assert (tmp_path / "trajectory.csv").exists()
    assert (tmp_path / "ledger.csv").exists()
    assert (tmp_path / "manifest.json").exists()


def test_config_error_raises():
    bad = json.loads(scenario())
    bad["system"]["levels"][1]["gamma"] = -1.0
    with pytest.raises(Exception, match="damping"):
        _psnads.integrate(json.dumps(bad))
