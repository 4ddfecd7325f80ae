import json

import numpy as np
import pytest

from illume.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestSolve:
    def test_inline_flags(self, capsys):
        code, out, err = run_cli(
            capsys, "solve", "--p0", "0.5", "--eta", "0.6", "--spectrum", "0.5,0.3,0.2"
        )
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["perr_c"] == pytest.approx(0.26, abs=1e-12)
        assert data["perr_q"] == pytest.approx(0.5 - 0.3 * (28 / 31), abs=1e-12)
        assert err == ""

    def test_region_one_example(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--p0", "0.3", "--eta", "0.5", "--spectrum", "0.5,0.5"
        )
        data = json.loads(out)
        assert code == 0
        assert data["region_c"] == "I" and data["region_q"] == "I"
        assert data["perr_c"] == 0.3 and data["perr_q"] == 0.3

    def test_no_signal(self, capsys):
        code, out, _ = run_cli(
            capsys, "solve", "--p0", "0.7", "--eta", "0", "--spectrum", "0.5,0.5"
        )
        data = json.loads(out)
        assert data["perr_c"] == pytest.approx(0.3, abs=1e-12)
        assert data["perr_q"] == pytest.approx(0.3, abs=1e-12)

    def test_scenario_file(self, capsys, tmp_path):
        path = tmp_path / "scenario.json"
        path.write_text(json.dumps({"p0": 0.6, "eta": 0.08, "spectrum": [0.5, 0.3, 0.2]}))
        code, out, _ = run_cli(capsys, "solve", "--scenario", str(path))
        data = json.loads(out)
        assert code == 0
        assert (data["region_c"], data["region_q"]) == ("II", "III")

    def test_spectrum_normalization_within_tolerance(self, capsys):
        # hand-typed decimals that sum to 0.9999997 are accepted and renormalized
        code, out, _ = run_cli(
            capsys, "solve", "--p0", "0.5", "--eta", "0.6",
            "--spectrum", "0.4999997,0.3,0.2",
        )
        assert code == 0
        assert json.loads(out)["perr_c"] == pytest.approx(0.26, abs=1e-6)

    def test_bad_spectrum_is_input_error(self, capsys):
        code, out, err = run_cli(
            capsys, "solve", "--p0", "0.5", "--eta", "0.6", "--spectrum", "0.9,0.3"
        )
        assert code == 2
        assert out == ""
        assert "spectrum" in err

    def test_missing_flags(self, capsys):
        code, _, err = run_cli(capsys, "solve", "--p0", "0.5")
        assert code == 2
        assert "--eta" in err and "--spectrum" in err

    def test_unreadable_scenario_is_input_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "solve", "--scenario", str(tmp_path / "missing.json"))
        assert code == 2
        assert "cannot read" in err

    def test_invalid_json_is_input_error(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _, err = run_cli(capsys, "solve", "--scenario", str(path))
        assert code == 2


class TestOptimalState:
    def test_uniform_spectrum(self, capsys):
        code, out, _ = run_cli(capsys, "optimal-state", "--spectrum", "0.25,0.25,0.25,0.25")
        data = json.loads(out)
        assert code == 0
        np.testing.assert_allclose(data["mu"], [0.5] * 4, atol=1e-12)

    def test_skew3_schmidt_squares(self, capsys):
        code, out, _ = run_cli(capsys, "optimal-state", "--spectrum", "0.5,0.3,0.2")
        data = json.loads(out)
        np.testing.assert_allclose(data["mu_sq"], [6 / 31, 10 / 31, 15 / 31], atol=1e-12)
        assert data["lambda_h"] == pytest.approx(3 / 31, abs=1e-12)
        assert data["conventional_probe_index"] == 2


class TestSweep:
    def write_spec(self, tmp_path, **extra):
        payload = {"p0_range": [0, 1, 101], "eta_range": [0, 1, 101], "spectrum": [0.5, 0.5]}
        payload.update(extra)
        path = tmp_path / "spec.json"
        path.write_text(json.dumps(payload))
        return path

    def test_grid_row_count(self, capsys, tmp_path):
        spec = self.write_spec(tmp_path)
        out_csv = tmp_path / "out.csv"
        code, out, err = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out_csv))
        assert code == 0
        assert out == ""  # payload goes to the file, stdout stays clean
        assert "sweep:" in err
        lines = out_csv.read_text().splitlines()
        assert len(lines) == 10202
        assert lines[0] == "p0,eta,region_c,region_q,perr_c,perr_q,advantage"

    def test_byte_identical_reruns(self, capsys, tmp_path):
        spec = self.write_spec(tmp_path, p0_range=[0, 1, 21], eta_range=[0, 1, 21])
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(a))[0] == 0
        assert run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_oracle_columns(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("ILLUME_THREADS", "2")
        spec = self.write_spec(
            tmp_path,
            p0_range=[0.3, 0.7, 3],
            eta_range=[0.3, 0.9, 3],
            oracle_cfg={"restarts": 6, "steps_per_restart": 600, "seed": 2, "tolerance": 1e-6},
        )
        out_csv = tmp_path / "oracle.csv"
        code, _, _ = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(out_csv), "--oracle")
        assert code == 0
        lines = out_csv.read_text().splitlines()
        assert lines[0].endswith("oracle_perr_c,oracle_perr_q")
        for line in lines[1:]:
            parts = line.split(",")
            assert abs(float(parts[8]) - float(parts[5])) <= 1e-5
            assert abs(float(parts[7]) - float(parts[4])) <= 1e-5

    def test_unwritable_output_is_io_error(self, capsys, tmp_path):
        spec = self.write_spec(tmp_path, p0_range=[0, 1, 2], eta_range=[0, 1, 2])
        code, _, err = run_cli(
            capsys, "sweep", "--spec", str(spec), "--out", str(tmp_path / "no" / "dir.csv")
        )
        assert code == 3
        assert "I/O error" in err

    def test_malformed_spec(self, capsys, tmp_path):
        path = tmp_path / "spec.json"
        path.write_text(json.dumps({"p0_range": [0, 1, 5], "spectrum": [0.5, 0.5]}))
        code, _, err = run_cli(capsys, "sweep", "--spec", str(path), "--out", str(tmp_path / "x.csv"))
        assert code == 2

    def test_bad_threads_env(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("ILLUME_THREADS", "many")
        spec = self.write_spec(tmp_path, p0_range=[0, 1, 2], eta_range=[0, 1, 2], oracle=True,
                               oracle_cfg={"restarts": 1, "steps_per_restart": 10, "seed": 0,
                                           "tolerance": 1e-3})
        code, _, err = run_cli(capsys, "sweep", "--spec", str(spec), "--out", str(tmp_path / "x.csv"))
        assert code == 2
        assert "ILLUME_THREADS" in err


class TestVerify:
    def test_lemma_suite(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--suite", "lemmas", "--seed", "7",
                                 "--trials", "400")
        assert code == 0
        data = json.loads(out)
        assert data["schema"] == 1
        assert data["violations"] == 0
        assert data["suites"][0]["suite"] == "lemmas"
        assert "lemmas" in err

    def test_montecarlo_suite(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--suite", "montecarlo", "--seed", "3",
                               "--trials", "20000")
        assert code == 0
        data = json.loads(out)
        assert data["violations"] == 0
        assert len(data["suites"][0]["checks"]) == 20

    def test_violations_exit_one(self, capsys, monkeypatch):
        import illume.cli as cli_mod

        def fake_suite(seed, trials):
            return {"suite": "lemmas", "seed": seed,
                    "checks": [{"name": "x", "trials": 1, "violations": 1, "worst_margin": -1.0}],
                    "violations": 1}

        monkeypatch.setattr(cli_mod, "run_lemma_suite", fake_suite)
        code, out, _ = run_cli(capsys, "verify", "--suite", "lemmas", "--trials", "1")
        assert code == 1
        assert json.loads(out)["violations"] == 1


class TestSimulate:
    def test_deterministic(self, capsys):
        args = ["simulate", "--p0", "0.5", "--eta", "0.6", "--spectrum", "0.5,0.3,0.2",
                "--mode", "quantum", "--trials", "20000", "--seed", "11"]
        code_a, out_a, _ = run_cli(capsys, *args)
        code_b, out_b, _ = run_cli(capsys, *args)
        assert code_a == code_b == 0
        assert out_a == out_b
        data = json.loads(out_a)
        assert abs(data["empirical_perr"] - data["analytic_perr"]) <= 4 * data["std_error"]

    def test_probe_file(self, capsys, tmp_path):
        probe = tmp_path / "probe.json"
        probe.write_text(json.dumps([[1.0, 0.0], [0.0, 0.0]]))
        code, out, _ = run_cli(capsys, "simulate", "--p0", "0.5", "--eta", "0.6",
                               "--spectrum", "0.5,0.5", "--mode", "conventional",
                               "--trials", "50000", "--seed", "4",
                               "--probe-file", str(probe))
        assert code == 0
        data = json.loads(out)
        # any pure probe of I/2 achieves the optimum here
        assert abs(data["empirical_perr"] - 0.35) <= 4 * data["std_error"]

    def test_invalid_mode_rejected_by_parser(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["simulate", "--p0", "0.5", "--eta", "0.5", "--spectrum", "0.5,0.5",
                  "--mode", "classical"])
        assert exc.value.code == 2


class TestParser:
    def test_subcommand_required(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
