import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest
import yaml

from wgqed.cli import main
from wgqed.config import (expand_range, load_config, resolve_config,
                          validate_config)
from wgqed.errors import ConfigError

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def write_yaml(tmp_path, data, name="cfg.yaml"):
    p = tmp_path / name
    p.write_text(yaml.safe_dump(data))
    return p


FAST_LIFETIME = {
    "experiment": "lifetime",
    "seed": 3,
    "drive": {"mode": "pulsed", "weights": [1.0, 0.0],
              "pulse": {"sigma_ns": 0.03, "area_over_pi": 1.0,
                        "period_ns": 13.6}},
    "grid": {"t_max_ns": 2.0, "dt_ns": 0.02},
}


class TestConfigValidation:
    def test_examples_validate(self):
        for path in sorted(CONFIG_DIR.glob("*.yaml")):
            data = load_config(path)
            assert validate_config(data) == [], path.name
            resolve_config(data)

    def test_unknown_key_rejected(self):
        errors = validate_config({"experiment": "lifetime", "bogus": 1})
        assert any("bogus" in e["message"] for e in errors)

    def test_unknown_experiment_rejected(self):
        assert validate_config({"experiment": "nope"})

    def test_weights_invalid_for_cw(self, tmp_path):
        data = {"experiment": "g2-cw",
                "drive": {"mode": "cw", "weights": [1.0, 0.0]}}
        with pytest.raises(ConfigError, match="weights"):
            resolve_config(data)

    def test_range_expansion(self):
        np.testing.assert_allclose(
            expand_range({"start": 0.0, "stop": 1.0, "points": 3}),
            [0.0, 0.5, 1.0])
        np.testing.assert_allclose(
            expand_range({"values": [3.0, 1.0]}), [3.0, 1.0])
        log = expand_range({"start": 0.01, "stop": 1.0, "points": 3,
                            "log": True})
        np.testing.assert_allclose(log, [0.01, 0.1, 1.0])

    def test_default_system_is_device_pair(self):
        cfg = resolve_config({"experiment": "g2-cw"})
        assert cfg.system.n == 2
        assert cfg.system.emitters[0].beta == 0.95
        # default drive: weak CW on emitter 1 only
        assert cfg.drive.rabi_amplitude[1] == 0.0
        assert cfg.drive.rabi_amplitude[0] > 0


class TestCLI:
    def test_list_experiments(self, capsys):
        assert main(["list-experiments"]) == 0
        out = capsys.readouterr().out
        assert "scalability" in out and "g2-cw" in out

    def test_validate_ok(self, tmp_path, capsys):
        p = write_yaml(tmp_path, FAST_LIFETIME)
        assert main(["validate", str(p)]) == 0
        assert "ok" in capsys.readouterr().out

    def test_validate_bad_exit_2(self, tmp_path, capsys):
        p = write_yaml(tmp_path, {"experiment": "lifetime", "junk": True})
        assert main(["validate", str(p)]) == 2
        report = json.loads(capsys.readouterr().err)
        assert report["error"] == "config"

    def test_missing_file_exit_2(self, capsys):
        assert main(["validate", "/nonexistent/x.yaml"]) == 2

    def test_run_writes_tables_and_metadata(self, tmp_path, capsys):
        p = write_yaml(tmp_path, FAST_LIFETIME)
        out = tmp_path / "results"
        assert main(["run", str(p), "--out", str(out)]) == 0
        csv = out / "lifetime" / "lifetime.csv"
        meta = out / "lifetime" / "metadata.json"
        assert csv.exists() and meta.exists()
        head = csv.read_text().splitlines()
        assert head[0].startswith("# wgqed")
        assert head[4].split(",")[0] == "t_ns"
        md = json.loads(meta.read_text())
        assert md["seed"] == 3
        assert md["config"]["experiment"] == "lifetime"

    def test_byte_identical_reruns_and_thread_invariance(self, tmp_path):
        p = write_yaml(tmp_path, {
            "experiment": "transmission-scan", "seed": 9,
            "noise": {"scheme": "gauss_hermite", "nodes": 5},
            "grid": {"detuning1_ghz": {"start": -2.0, "stop": 2.0,
                                       "points": 7},
                     "detuning2_ghz": {"start": -2.0, "stop": 2.0,
                                       "points": 7}}})
        outs = []
        for i, threads in enumerate(("1", "1", "4")):
            out = tmp_path / f"r{i}"
            assert main(["run", str(p), "--out", str(out),
                         "--threads", threads]) == 0
            outs.append(
                (out / "transmission-scan" / "transmission.csv").read_bytes())
        assert outs[0] == outs[1] == outs[2]

    def test_seed_override(self, tmp_path):
        p = write_yaml(tmp_path, FAST_LIFETIME)
        out = tmp_path / "o"
        assert main(["run", str(p), "--out", str(out), "--seed", "77"]) == 0
        md = json.loads((out / "lifetime" / "metadata.json").read_text())
        assert md["seed"] == 77

    def test_numerical_failure_exit_3(self, tmp_path, capsys):
        # undriven lossless dephasing-free pair at phi=0 has a degenerate
        # steady state: the g2-cw pipeline must fail with exit code 3
        data = {
            "experiment": "g2-cw",
            "system": {"coupling_phase_over_pi": 0.0, "emitters": [
                {"gamma_ghz": 0.388, "beta": 1.0},
                {"gamma_ghz": 0.388, "beta": 1.0}]},
            "drive": {"mode": "cw", "rabi_ghz": [0.0, 0.0]},
            "grid": {"tau_max_ns": 1.0, "dt_ns": 0.05, "pairs": ["LL"]},
        }
        p = write_yaml(tmp_path, data)
        assert main(["run", str(p), "--out", str(tmp_path / "x")]) == 3
        report = json.loads(capsys.readouterr().err)
        assert report["error"] == "numerical"

    def test_console_entrypoint(self):
        proc = subprocess.run(
            [sys.executable, "-m", "wgqed.cli", "list-experiments"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        assert "transmission-scan" in proc.stdout
