import math
import os
import subprocess

import numpy as np
import pytest

import seek_esc as se


def short(preset="table1", **extra):
    overrides = {"sim.t_end": "0.5", "sim.record_every": "100"}
    overrides.update(extra)
    return se.config(preset, overrides)


def test_presets():
    assert se.preset_names() == ["table1", "table2", "table3"]
    cfg = se.config("table1")
    assert (cfg.a, cfg.c, cfg.epsilon, cfg.omega) == (0.5, 0.5, 0.001, 1.4)
    assert cfg.start == (1.6, -1.4)
    assert cfg.target == (1.0, -2.0)
    assert se.config("table3").field_kind == "light"
    assert "esc.epsilon = 0.001" in se.preset_text("table1")


def test_validation_error_names_key():
    with pytest.raises(se.ValidationError, match="esc.epsilon"):
        se.config("table1", {"esc.epsilon": "-1"})
    with pytest.raises(se.ParseError):
        se.config_from_text("not a key value line\n")


def test_simulate_returns_arrays():
    run = se.simulate(short(), with_lbs=True)
    assert not run["aborted"]
    t = run["t"]
    assert isinstance(t, np.ndarray) and t[0] == 0.0
    assert math.isclose(t[-1], 0.5)
    assert set("txyhJv") <= set(run)
    assert len(run["lbs"]["t"]) == len(t)
    assert run["summary"]["design"] == "third_order"
    np.testing.assert_allclose(run["J"][0], se.field_value(short(), 1.6, -1.4))


def test_simulate_is_deterministic():
    cfg = short(**{"sensor.noise_std": "0.01"})
    a, b = se.simulate(cfg), se.simulate(cfg)
    assert np.array_equal(a["x"], b["x"]) and np.array_equal(a["y"], b["y"])


def test_certificate():
    c1, c2 = se.lbs_gains(0.5, 0.5, 1.0, 1.0)
    assert math.isclose(c1, 1.5) and math.isclose(c2, 1.5)
    ok = se.certify(c1, c2, 1.4)
    assert ok["verdict"] and math.isclose(ok["omega_threshold"], 0.5)
    assert not se.certify(c1, c2, 0.4)["verdict"]


def test_moments():
    m1, m2, lam = se.moment_check("c1")
    assert abs(m1) < 1e-8 and abs(m2) < 1e-8 and lam > 0.1
    assert abs(se.moment_check("c3")[2]) < 1e-8


def test_lbs_decay_fit():
    run = se.lbs(se.config("table1", {"sim.t_end": "20"}))
    rate, r2 = se.fit_decay(run["t"], run["x"], run["y"], (1.0, -2.0), 0.0, 20.0, 2 * math.pi / 1.4)
    assert rate > 0 and r2 > 0.9
    assert se.convergence_time(run["t"], run["x"], run["y"], (1.0, -2.0), 0.05) is not None


def test_run_cli_in_process(tmp_path):
    code, out, _ = se.run_cli(["certify", "--preset", "table1", "--out", str(tmp_path)])
    assert code == 0 and "omega_threshold = 0.5" in out
    code, _, err = se.run_cli(["simulate", "--preset", "nope"])
    assert code == 1 and err


@pytest.mark.skipif(not os.environ.get("SEEK_CLI"), reason="SEEK_CLI not set")
def test_cli_binary(tmp_path):
    cfg = tmp_path / "s.cfg"
    cfg.write_text("scenario.base = table1\nesc.omega = 0.4\n")
    proc = subprocess.run([os.environ["SEEK_CLI"], "certify", "--config", str(cfg), "--out", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 3
    assert (tmp_path / "certificate.txt").exists()
