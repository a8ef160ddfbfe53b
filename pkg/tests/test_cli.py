"""End-to-end tests of the command-line interface."""

import csv

import pytest

from iterborda.cli import main
from iterborda.preflib import bundled_path


class TestRun:
    def test_trace_printed(self, capsys):
        rc = main([
            "run", "--dataset", str(bundled_path("sample7")),
            "--voters", "3", "--policy", "es", "--behavior", "truthful",
            "--seed", "1",
        ])
        assert rc == 0
        out = capsys.readouterr().out
        assert "winner: candidate" in out
        assert "round   1:" in out

    def test_careful_manipulative(self, capsys):
        rc = main([
            "run", "--dataset", str(bundled_path("sample7")),
            "--voters", "4", "--policy", "random", "--careful",
            "--behavior", "manipulative", "--seed", "3",
        ])
        assert rc == 0
        assert "policy=careful-random" in capsys.readouterr().out


class TestExperiment:
    def test_writes_both_csvs(self, tmp_path, capsys):
        config = tmp_path / "sweep.cfg"
        config.write_text(
            f"dataset = {bundled_path('sample7')}\n"
            "voter_counts = 3\n"
            "policies = es, careful-random\n"
            "behaviors = truthful, manipulative\n"
            "profile_sets = 1\n"
            "reps_per_set = 1\n"
            "base_seed = 5\n",
            encoding="utf-8",
        )
        out_dir = tmp_path / "out"
        rc = main(["experiment", "--config", str(config), "--out", str(out_dir)])
        assert rc == 0
        with open(out_dir / "records.csv", newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4
        assert {row["behavior"] for row in rows} == {"truthful", "manipulative"}
        assert (out_dir / "summary.csv").exists()

    def test_missing_config_errors(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            main(["experiment", "--config", str(tmp_path / "nope.cfg")])


class TestOracleCheck:
    def test_agreement_exit_zero(self, capsys):
        rc = main(["oracle-check", "--m", "4", "--instances", "200", "--seed", "0"])
        assert rc == 0
        assert "200 instances at m=4 agree" in capsys.readouterr().out
