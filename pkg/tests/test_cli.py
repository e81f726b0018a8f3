import json
import math

import numpy as np
import pytest

from qgame.cli import MAXIMIN_HEADER, MIRACLE_HEADER, SURFACE_HEADER, main
from qgame.game import PayoffTable, play
from qgame.gates import PHASE_FLIP

HALF_PI = math.pi / 2


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_kv(text):
    out = {}
    for line in text.strip().splitlines():
        key, _, value = line.partition(": ")
        out[key] = value
    return out


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0], [line.split(",") for line in lines[1:]]


class TestPlay:
    def test_phase_flip_pair(self, capsys):
        code, out, _ = run_cli(
            capsys, "play", "--gamma", "1.5707963267948966",
            "--alice", "0,1.5707963267948966", "--bob", "0,1.5707963267948966",
        )
        assert code == 0
        values = parse_kv(out)
        assert float(values["payoff_alice"]) == pytest.approx(3.0, abs=1e-12)
        assert float(values["payoff_bob"]) == pytest.approx(3.0, abs=1e-12)

    def test_mutual_defection_separable(self, capsys):
        code, out, _ = run_cli(
            capsys, "play", "--gamma", "0",
            "--alice", "3.14159265358979,0", "--bob", "3.14159265358979,0",
        )
        assert code == 0
        values = parse_kv(out)
        assert float(values["payoff_alice"]) == pytest.approx(1.0, abs=1e-12)
        assert float(values["payoff_bob"]) == pytest.approx(1.0, abs=1e-12)

    def test_round_trip_matches_library(self, capsys):
        gamma, theta_a, phi_a, theta_b, phi_b = 0.8, 1.1, 0.3, 2.2, 1.0
        code, out, _ = run_cli(
            capsys, "play", "--gamma", repr(gamma),
            "--alice", f"{theta_a!r},{phi_a!r}", "--bob", f"{theta_b!r},{phi_b!r}",
        )
        assert code == 0
        values = parse_kv(out)
        from qgame.gates import StrategyParams

        result = play(
            gamma, StrategyParams(theta_a, phi_a), StrategyParams(theta_b, phi_b),
            PayoffTable.default(),
        )
        assert abs(float(values["payoff_alice"]) - result.payoffs.alice) <= 1e-12
        assert abs(float(values["payoff_bob"]) - result.payoffs.bob) <= 1e-12
        probs = result.distribution.as_array()
        for idx, label in enumerate(("cc", "cd", "dc", "dd")):
            assert abs(float(values[f"p_{label}"]) - probs[idx]) <= 1e-12
            assert complex(values[f"amp_{label}"]) == pytest.approx(
                complex(result.final_state.amp[idx]), abs=1e-12
            )

    def test_gamma_out_of_range_exits_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["play", "--gamma", "2.0"])
        assert info.value.code == 2
        err = capsys.readouterr().err
        assert "--gamma" in err and "[0, pi/2]" in err

    def test_bad_strategy_exits_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["play", "--alice", "4.0,0"])
        assert info.value.code == 2
        err = capsys.readouterr().err
        assert "--alice" in err and "[0, pi]" in err


class TestSurface:
    def test_separable_defection_row_dominates(self, capsys, tmp_path):
        out = tmp_path / "surface.csv"
        code, _, _ = run_cli(
            capsys, "surface", "--gamma", "0", "--steps", "41", "--out", str(out)
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == SURFACE_HEADER
        assert len(rows) == 41 * 41
        payoff = {(r[0], r[1]): float(r[2]) for r in rows}
        t_values = sorted({r[0] for r in rows}, key=float)
        for tb in t_values:
            column_best = max(payoff[(ta, tb)] for ta in t_values)
            assert payoff[("1", tb)] >= column_best - 1e-12

    def test_entangled_corners(self, capsys, tmp_path):
        out = tmp_path / "surface.csv"
        code, _, _ = run_cli(
            capsys, "surface", "--gamma", "1.5707963267948966",
            "--steps", "21", "--out", str(out),
        )
        assert code == 0
        _, rows = read_csv(out)
        payoff = {(r[0], r[1]): float(r[2]) for r in rows}
        assert payoff[("-1", "-1")] == pytest.approx(3.0, abs=1e-12)
        assert payoff[("1", "1")] == pytest.approx(1.0, abs=1e-12)

    def test_json_format(self, capsys, tmp_path):
        out = tmp_path / "surface.json"
        code, _, _ = run_cli(
            capsys, "surface", "--steps", "5", "--format", "json", "--out", str(out)
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert len(payload) == 25
        assert set(payload[0]) == {"t_a", "t_b", "payoff_a"}

    def test_unwritable_path_exits_2(self, capsys):
        code, _, err = run_cli(
            capsys, "surface", "--steps", "5", "--out", "/nonexistent/dir/x.csv"
        )
        assert code == 2
        assert err.startswith("error:") and err.count("\n") == 1


class TestMaximinCurve:
    def test_endpoints_and_monotonicity(self, capsys, tmp_path):
        out = tmp_path / "curve.csv"
        code, _, _ = run_cli(
            capsys, "maximin-curve", "--steps", "9", "--grid", "41x21",
            "--out", str(out),
        )
        assert code == 0
        header, rows = read_csv(out)
        assert header == MAXIMIN_HEADER
        assert len(rows) == 9
        assert float(rows[0][0]) == 0.0
        assert float(rows[0][1]) == pytest.approx(1.0, abs=1e-6)
        assert float(rows[-1][1]) == pytest.approx(3.0, abs=1e-6)
        values = [float(r[1]) for r in rows]
        assert all(b >= a - 1e-6 for a, b in zip(values, values[1:]))


class TestMiracle:
    def test_curve_bounds(self, capsys, tmp_path):
        out = tmp_path / "miracle.csv"
        code, _, _ = run_cli(capsys, "miracle", "--steps", "201", "--out", str(out))
        assert code == 0
        header, rows = read_csv(out)
        assert header == MIRACLE_HEADER
        assert len(rows) == 201
        alice_m = [float(r[3]) for r in rows]
        bob_vs_m = [float(r[4]) for r in rows]
        assert min(alice_m) >= 3.0 - 1e-9
        assert max(bob_vs_m) <= 0.5 + 1e-9
        assert float(rows[0][1]) == pytest.approx(3.0, abs=1e-12)  # C vs C


class TestNash:
    def test_separable_report(self, capsys, tmp_path):
        out = tmp_path / "nash.json"
        code, _, _ = run_cli(
            capsys, "nash", "--gamma", "0", "--grid", "41x21", "--out", str(out)
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert len(payload["equilibria"]) == 1
        eq = payload["equilibria"][0]
        assert eq["alice"]["theta"] == pytest.approx(math.pi, abs=1e-9)
        assert eq["alice"]["phi"] == 0.0
        assert eq["payoff_alice"] == pytest.approx(1.0, abs=1e-12)
        assert payload["dominant"] is not None
        assert payload["dominant"]["theta"] == pytest.approx(math.pi, abs=1e-9)

    def test_entangled_report(self, capsys, tmp_path):
        out = tmp_path / "nash.json"
        code, _, _ = run_cli(
            capsys, "nash", "--gamma", "1.5707963267948966", "--grid", "41x21",
            "--out", str(out),
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert len(payload["equilibria"]) == 1
        eq = payload["equilibria"][0]
        assert eq["alice"]["theta"] == 0.0
        assert eq["alice"]["phi"] == pytest.approx(HALF_PI, abs=1e-9)
        assert eq["is_pareto"] is True
        assert payload["dominant"] is None

    def test_intermediate_smoke(self, capsys, tmp_path):
        out = tmp_path / "nash.json"
        code, _, _ = run_cli(
            capsys, "nash", "--gamma", "0.7853981633974483", "--grid", "21x11",
            "--out", str(out),
        )
        assert code == 0
        json.loads(out.read_text())


class TestThreshold:
    def test_default_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "threshold", "--tol", "1e-4", "--grid", "41x21"
        )
        assert code == 0
        values = parse_kv(out)
        reference = math.asin(1 / math.sqrt(5))
        assert float(values["gamma_th"]) == pytest.approx(reference, abs=1e-3)
        assert float(values["reference"]) == pytest.approx(reference, abs=1e-9)
        assert float(values["difference"]) == pytest.approx(
            float(values["gamma_th"]) - float(values["reference"]), abs=1e-9
        )

    def test_modified_table(self, capsys):
        code, out, _ = run_cli(
            capsys, "threshold", "--tol", "1e-3", "--grid", "41x21",
            "--payoffs", "3,1,4,0",
        )
        assert code == 0
        value = float(parse_kv(out)["gamma_th"])
        assert 0.0 < value < HALF_PI


class TestVerify:
    def test_residuals_ok(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--gamma", "1.5707963267948966")
        assert code == 0
        values = parse_kv(out)
        assert values["status"] == "ok"
        assert float(values["commutator_dd"]) <= 1e-12
        assert float(values["factorization_deviation"]) <= 1e-10


class TestDeterminism:
    CASES = [
        ("play", "--gamma", "0.9", "--alice", "1.1,0.4", "--bob", "2.0,0.2"),
        ("surface", "--gamma", "0.3", "--steps", "17"),
        ("maximin-curve", "--steps", "5", "--grid", "21x11"),
        ("miracle", "--steps", "51"),
        ("nash", "--gamma", "1.5707963267948966", "--grid", "21x11"),
        ("threshold", "--tol", "1e-2", "--grid", "21x11"),
        ("verify", "--gamma", "0.7"),
    ]

    @pytest.mark.parametrize("argv", CASES, ids=[c[0] for c in CASES])
    def test_repeat_runs_are_identical(self, capsys, argv):
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    @pytest.mark.parametrize(
        "argv",
        [c for c in CASES if c[0] not in ("play", "verify")],
        ids=[c[0] for c in CASES if c[0] not in ("play", "verify")],
    )
    def test_worker_counts_are_identical(self, capsys, argv):
        _, serial, _ = run_cli(capsys, *argv, "--workers", "1")
        _, parallel, _ = run_cli(capsys, *argv, "--workers", "3")
        assert serial == parallel


def test_csv_headers_are_frozen():
    assert SURFACE_HEADER == "t_a,t_b,payoff_a"
    assert MAXIMIN_HEADER == "gamma,m,argmax_theta,argmax_phi"
    assert MIRACLE_HEADER == "theta,alice_c,alice_d,alice_m,bob_vs_m"
