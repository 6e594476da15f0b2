import csv
import json

import pytest

from diminish.cli import emit_csv, main, parse_config
from diminish.errors import ConfigurationError
from diminish import verification
from diminish.verification import CheckResult


class TestParseConfig:
    def test_flags_only(self):
        cfg = parse_config(
            {"process": "pentagon", "n": 10_000, "replicas": 1000, "seed": 42}
        )
        assert cfg.process == "polygon" and cfg.k == 5
        assert cfg.n == 10_000 and cfg.replicas == 1000 and cfg.seed == 42

    def test_out_of_range_names_key(self):
        with pytest.raises(ConfigurationError, match=r"c must lie in \[0, 1\]"):
            parse_config({"process": "interval", "n": 10, "replicas": 1, "c": 1.5})

    def test_unknown_key_named(self):
        with pytest.raises(ConfigurationError, match="unknown config key: 'turbo'"):
            parse_config({"process": "interval", "n": 10, "replicas": 1, "turbo": True})

    def test_missing_required(self):
        with pytest.raises(ConfigurationError, match="'process'"):
            parse_config({"n": 10, "replicas": 1})
        with pytest.raises(ConfigurationError, match="'replicas'"):
            parse_config({"process": "interval", "n": 10})

    def test_file_and_flags_equivalent(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(
            json.dumps({"process": "simplex", "d": 3, "n": 500, "replicas": 7, "seed": 9})
        )
        from_file = parse_config(str(path))
        from_flags = parse_config(
            {"process": "simplex", "d": 3, "n": 500, "replicas": 7, "seed": 9}
        )
        assert from_file == from_flags

    def test_flags_override_file(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({"process": "interval", "n": 500, "replicas": 7}))
        cfg = parse_config(str(path), {"n": 900, "seed": 3})
        assert cfg.n == 900 and cfg.replicas == 7 and cfg.seed == 3

    def test_bad_file(self, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        with pytest.raises(ConfigurationError, match="not valid JSON"):
            parse_config(str(bad))


class TestEmitCsv:
    def test_empty_records(self, tmp_path):
        dest = tmp_path / "empty.csv"
        assert emit_csv([], dest, ["replica", "value"]) == 0
        assert dest.read_text().strip() == "replica,value"

    def test_round_trip_bit_exact(self, tmp_path):
        values = [0.1 + 0.2, 1.0 / 3.0, 2.0**-52, 123456.789012345678]
        dest = tmp_path / "vals.csv"
        emit_csv([[i, v] for i, v in enumerate(values)], dest, ["replica", "value"])
        with open(dest) as fh:
            rows = list(csv.DictReader(fh))
        back = [float(r["value"]) for r in rows]
        assert back == values


class TestCommands:
    def test_simulate_interval(self, tmp_path, capsys):
        out = tmp_path / "traj.csv"
        rc = main(
            [
                "simulate",
                "--process",
                "interval",
                "--n",
                "50",
                "--seed",
                "1",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["step", "center", "radius"]
        assert len(rows) == 52  # header + steps 0..50
        assert float(rows[1][2]) == 1.0

    def test_simulate_polygon_snapshot_columns(self, tmp_path):
        out = tmp_path / "pent.csv"
        rc = main(
            ["simulate", "--process", "pentagon", "--n", "20", "--seed", "2", "--out", str(out)]
        )
        assert rc == 0
        with open(out) as fh:
            header = next(csv.reader(fh))
        assert header[:4] == ["step", "max_height", "area", "reduced"]
        assert header[4:] == [f"height_{i}" for i in range(1, 6)]

    def test_experiment_deterministic(self, tmp_path):
        args = [
            "experiment",
            "--process",
            "heptagon",
            "--n",
            "60",
            "--replicas",
            "8",
            "--seed",
            "5",
        ]
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(out1)]) == 0
        assert main(args + ["--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_figure_fig7_shape(self, tmp_path):
        out = tmp_path / "fig7.csv"
        rc = main(["figure", "--which", "fig7", "--seed", "6", "--out", str(out)])
        assert rc == 0
        with open(out) as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["replica", "value"]
        assert len(rows) == 201  # 200 outcomes

    def test_usage_error_exit_code(self, capsys):
        rc = main(["experiment", "--process", "interval", "--n", "10", "--replicas", "2", "--c", "1.5"])
        assert rc == 1
        assert "c must lie in [0, 1]" in capsys.readouterr().err

    def test_verify_exit_codes(self, monkeypatch, tmp_path, capsys):
        calls = {}

        def fake_pass(seed):
            calls["seed"] = seed
            return CheckResult("figure-ranges", True, ["stat = 1"])

        def fake_fail(seed):
            return CheckResult("cube", False, ["stat = 9"])

        monkeypatch.setitem(verification.ALL_CHECKS, "figure-ranges", fake_pass)
        monkeypatch.setitem(verification.ALL_CHECKS, "cube", fake_fail)
        assert main(["verify", "--check", "figure-ranges", "--seed", "77"]) == 0
        assert calls["seed"] == 77
        json_out = tmp_path / "report.json"
        rc = main(
            ["verify", "--check", "figure-ranges", "--check", "cube", "--json", str(json_out)]
        )
        assert rc == 2
        payload = json.loads(json_out.read_text())
        assert payload["cube"]["passed"] is False
        assert payload["figure-ranges"]["passed"] is True

    def test_env_seed_default(self, monkeypatch, tmp_path):
        monkeypatch.setenv("DIMINISH_SEED", "123")
        out1 = tmp_path / "one.csv"
        main(["experiment", "--process", "interval", "--n", "30", "--replicas", "4", "--out", str(out1)])
        out2 = tmp_path / "two.csv"
        main(
            [
                "experiment",
                "--process",
                "interval",
                "--n",
                "30",
                "--replicas",
                "4",
                "--seed",
                "123",
                "--out",
                str(out2),
            ]
        )
        assert out1.read_bytes() == out2.read_bytes()
