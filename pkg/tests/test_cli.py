import csv
import io
import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from conftest import EQUAL, PD, WIDE
from quantum_pd import Region
from quantum_pd.cli import main
from quantum_pd.errors import EmptyResultError, ValidationError
from quantum_pd.sweep import (
    CSV_HEADER,
    SweepConfig,
    emit_plot_script,
    rows_to_csv,
    run_sweep,
    sample_gammas,
    threshold_report,
)

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


class TestSweepConfig:
    @pytest.mark.parametrize("kwargs", [
        {"gamma_min": 0.5, "gamma_max": 0.4},
        {"gamma_max": 2.0},
        {"steps": 1},
        {"space": "other"},
        {"fmt": "xml"},
        {"eps": 0.0},
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValidationError):
            SweepConfig(PD, **kwargs)


class TestRunSweep:
    def test_threshold_samples(self):
        gammas = sample_gammas(SweepConfig(PD, steps=10))
        th1 = math.asin(math.sqrt(1 / 5))
        assert any(abs(g - (th1 - 1e-9)) < 1e-15 for g in gammas)
        assert any(abs(g - (th1 + 1e-9)) < 1e-15 for g in gammas)
        assert all(b > a for a, b in zip(gammas, gammas[1:]))

    def test_equal_regime_has_single_jump(self):
        rows = run_sweep(SweepConfig(EQUAL, steps=100))
        assert not any(r.region is Region.TRANSITIONAL for r in rows)
        pays = [r.equilibria[0].payoff_a for r in rows]
        assert set(round(p, 12) for p in pays) == {2.0, 3.0}

    def test_full_space_rows(self):
        rows = run_sweep(SweepConfig(PD, space="full", steps=50))
        gb = math.asin(math.sqrt(1 / 3))
        for row in rows:
            if row.gamma < gb:
                assert row.region is Region.INFINITE_FAMILY and row.verified
                for eq in row.equilibria:
                    assert eq.payoff_a == pytest.approx(1 + 2 * math.sin(row.gamma) ** 2, abs=1e-12)
            else:
                assert row.region is Region.NO_PURE_NE and not row.equilibria
                assert not row.verified

    def test_rows_verified(self):
        rows = run_sweep(SweepConfig(WIDE, steps=60))
        assert all(r.verified for r in rows)

    def test_oracle_gap(self):
        rows = run_sweep(SweepConfig(PD, steps=5, grid_n=32))
        assert all(0 <= r.oracle_gap < 0.05 for r in rows)


class TestCsv:
    def test_golden(self, capsys):
        code, out, _ = run(["sweep", "--payoffs", "3,1,5,0", "--steps", "5"], capsys)
        assert code == 0
        assert out == (GOLDEN / "sweep_pd_two_param_5.csv").read_text()

    def test_header(self):
        text = rows_to_csv(run_sweep(SweepConfig(PD, steps=3)))
        assert tuple(next(csv.reader(io.StringIO(text)))) == CSV_HEADER

    def test_deterministic(self, tmp_path, capsys):
        paths = [tmp_path / "a.json", tmp_path / "b.json"]
        for p in paths:
            assert main(["sweep", "--payoffs", "3,2,4,0", "--format", "json", "--space", "full",
                         "--steps", "30", "--out", str(p)]) == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()

    def test_json(self, capsys):
        code, out, _ = run(["sweep", "--payoffs", "3,1,5,0", "--steps", "3", "--format", "json"],
                           capsys)
        doc = json.loads(out)
        assert doc["thresholds"]["gamma_th1"] == pytest.approx(math.asin(math.sqrt(0.2)))
        assert all(row["verified"] for row in doc["rows"])


class TestExitCodes:
    def test_invalid_table(self, capsys):
        code, _, err = run(["sweep", "--payoffs", "4,3,2,1"], capsys)
        assert code == 2
        assert "t>r>p>s" in err and "t > r" in err

    def test_bad_range(self, capsys):
        assert run(["sweep", "--payoffs", "3,1,5,0", "--gamma-min", "1", "--gamma-max", "0.5"],
                   capsys)[0] == 2

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", "--payoffs", "3,1,5,0", "--bogus"])
        assert exc.value.code == 2

    def test_unwritable(self, tmp_path, capsys):
        out = tmp_path / "missing" / "x.csv"
        assert run(["sweep", "--payoffs", "3,1,5,0", "--out", str(out)], capsys)[0] == 3

    def test_empty_plot(self, tmp_path):
        with pytest.raises(EmptyResultError):
            emit_plot_script([], tmp_path / "plot.py")


class TestThresholdsCommand:
    def test_wide(self, capsys):
        code, out, _ = run(["thresholds", "--payoffs", "3,2,4,0", "--format", "json"], capsys)
        doc = json.loads(out)
        assert doc["regime"] == "r+p>t+s"
        middle = doc["two_param_regions"][1]
        assert middle["region"] == "Coexistent"
        assert (middle["from"], middle["to"]) == pytest.approx((math.pi / 6, math.pi / 4))

    def test_equal(self, capsys):
        code, out, _ = run(["thresholds", "--payoffs", "3,2,5,0"], capsys)
        assert code == 0
        assert "r+p=t+s" in out
        assert [r["region"] for r in threshold_report(EQUAL)["two_param_regions"]] == \
            ["Classical", "Quantum"]

    def test_invalid(self, capsys):
        code, _, err = run(["thresholds", "--payoffs", "4,3,2,1"], capsys)
        assert code == 2 and "t>r>p>s" in err


class TestOtherCommands:
    def test_tensor_golden(self, capsys):
        code, out, _ = run(["tensor", "--payoffs", "3,1,5,0", "--gamma", "1.5707963267948966"],
                           capsys)
        assert code == 0
        assert json.loads(out) == json.loads((GOLDEN / "tensor_pd_two_param_halfpi.json").read_text())

    def test_tensor_full_entries(self, capsys):
        code, out, _ = run(["tensor", "--payoffs", "3,1,5,0", "--space", "full", "--gamma", "90",
                            "--degrees"], capsys)
        entries = {(e["i"], e["j"], e["k"], e["l"]): e["value"] for e in json.loads(out)}
        assert entries[(1, 1, 2, 2)] == pytest.approx(5)
        assert entries[(1, 4, 2, 3)] == pytest.approx(-2.5)
        assert (1, 1, 3, 3) not in entries

    def test_best_response(self, capsys):
        code, out, _ = run(["best-response", "--payoffs", "3,1,5,0", "--gamma", "1.0",
                            "--strategy", "D"], capsys)
        doc = json.loads(out)
        assert doc["best_response_literal"] == "Q"
        assert doc["payoff"] == pytest.approx(5 * math.sin(1.0) ** 2)

    def test_verify(self, capsys):
        code, out, _ = run(["verify", "--payoffs", "3,1,5,0", "--space", "full", "--gamma", "0.4",
                            "--strategy", "vec4:0,0.6,0.8,0", "--grid-n", "16"], capsys)
        doc = json.loads(out)
        assert set(doc) == {"method_result", "oracle_result", "gap"}
        assert 0 <= doc["gap"] < 0.05

    def test_verify_scan(self, capsys):
        code, out, _ = run(["verify", "--payoffs", "3,1,5,0", "--gamma", "0.2", "--strategy", "D",
                            "--grid-n", "16", "--scan"], capsys)
        doc = json.loads(out)
        assert doc["scan"]["region"] == "Classical" and doc["scan"]["count"] >= 1

    def test_payoff(self, capsys):
        code, out, _ = run(["payoff", "--payoffs", "3,1,5,0", "--gamma", "1.5707963267948966",
                            "--alice", "Q", "--bob", "D"], capsys)
        doc = json.loads(out)
        assert (doc["payoff_a"], doc["payoff_b"]) == pytest.approx((5, 0))
        assert doc["simulated"]["payoff_a"] == pytest.approx(5)

    def test_bad_strategy(self, capsys):
        code, _, err = run(["payoff", "--payoffs", "3,1,5,0", "--gamma", "0.1", "--alice", "Z",
                            "--bob", "D"], capsys)
        assert code == 2


class TestPlotScript:
    def _script(self, tmp_path, table, lo=0.0, hi=math.pi / 2, space="two-param"):
        csv_path = tmp_path / "sweep.csv"
        config = SweepConfig(table, space=space, gamma_min=lo, gamma_max=hi, steps=80)
        rows = run_sweep(config)
        csv_path.write_text(rows_to_csv(rows))
        script = tmp_path / "plot.py"
        text = emit_plot_script(rows, script, csv_path=csv_path, table=table, space=space)
        compile(text, str(script), "exec")
        return text, script, csv_path

    def test_three_regions(self, tmp_path):
        text, _, _ = self._script(tmp_path, PD)
        for label in ("Classical", "Transitional", "Quantum"):
            assert f"'{label}'" in text
        assert "gamma_th1" in text and "gamma_th2" in text

    def test_coexistent_branches(self, tmp_path):
        text, _, _ = self._script(tmp_path, WIDE)
        assert "'Coexistent'" in text

    def test_no_thresholds_in_range(self, tmp_path):
        text, _, _ = self._script(tmp_path, PD, 0.0, 0.3)
        assert "THRESHOLDS = []" in text

    def test_runs(self, tmp_path):
        pytest.importorskip("matplotlib")
        _, script, csv_path = self._script(tmp_path, PD)
        png = tmp_path / "out.png"
        env = dict(os.environ, MPLBACKEND="Agg")
        subprocess.run([sys.executable, str(script), str(csv_path), str(png)], check=True,
                       env=env, capture_output=True)
        assert png.stat().st_size > 1000
