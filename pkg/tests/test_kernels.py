import math

import numpy as np
import pytest

from qgame import _kernels_py, backend
from qgame.game import PayoffTable, play
from qgame.gates import StrategyParams

try:
    from qgame import _kernels
except ImportError:
    _kernels = None

TABLE = PayoffTable.default()
WA = TABLE.alice_weights()
WB = TABLE.bob_weights()


def random_nodes(rng, n):
    return rng.uniform(0, math.pi, n), rng.uniform(0, math.pi / 2, n)


def test_fallback_matches_reference_path():
    rng = np.random.default_rng(41)
    for _ in range(200):
        gamma = rng.uniform(0, math.pi / 2)
        ta, pa = rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2)
        tb, pb = rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2)
        result = play(gamma, StrategyParams(ta, pa), StrategyParams(tb, pb), TABLE)
        got = _kernels_py.payoff_pair(gamma, ta, pa, tb, pb, WA, WB)
        assert got[0] == pytest.approx(result.payoffs.alice, abs=1e-12)
        assert got[1] == pytest.approx(result.payoffs.bob, abs=1e-12)


def test_matrix_matches_pair_entries():
    rng = np.random.default_rng(43)
    ta, pa = random_nodes(rng, 17)
    tb, pb = random_nodes(rng, 13)
    mat_a, mat_b = _kernels_py.payoff_matrices(0.9, ta, pa, tb, pb, WA, WB)
    for i in (0, 7, 16):
        for j in (0, 5, 12):
            pair = _kernels_py.payoff_pair(0.9, ta[i], pa[i], tb[j], pb[j], WA, WB)
            assert mat_a[i, j] == pytest.approx(pair[0], abs=1e-14)
            assert mat_b[i, j] == pytest.approx(pair[1], abs=1e-14)


def test_matrix_block_split_is_bit_identical(monkeypatch):
    rng = np.random.default_rng(47)
    ta, pa = random_nodes(rng, 40)
    tb, pb = random_nodes(rng, 23)
    whole, _ = _kernels_py.payoff_matrices(0.6, ta, pa, tb, pb, WA, None)
    monkeypatch.setattr(_kernels_py, "_BLOCK", 7)
    split, _ = _kernels_py.payoff_matrices(0.6, ta, pa, tb, pb, WA, None)
    assert np.array_equal(whole, split)


@pytest.mark.parametrize("workers", [2, 3, 7])
def test_worker_split_is_bit_identical(workers):
    rng = np.random.default_rng(53)
    ta, pa = random_nodes(rng, 50)
    tb, pb = random_nodes(rng, 31)
    serial = backend.payoff_matrices(1.1, ta, pa, tb, pb, WA, WB, workers=1)
    parallel = backend.payoff_matrices(1.1, ta, pa, tb, pb, WA, WB, workers=workers)
    assert np.array_equal(serial[0], parallel[0])
    assert np.array_equal(serial[1], parallel[1])


def test_weights_b_none_skips_bob():
    rng = np.random.default_rng(59)
    ta, pa = random_nodes(rng, 5)
    _, out_b = _kernels_py.payoff_matrices(0.4, ta, pa, ta, pa, WA, None)
    assert out_b is None


def test_fair_game_transpose_symmetry():
    # With identical node lists the column player's matrix is the row
    # player's transpose (up to summation-order rounding).
    rng = np.random.default_rng(61)
    ta, pa = random_nodes(rng, 30)
    mat_a, mat_b = backend.payoff_matrices(1.3, ta, pa, ta, pa, WA, WB)
    assert np.abs(mat_b - mat_a.T).max() <= 1e-12


@pytest.mark.skipif(_kernels is None, reason="compiled extension not built")
class TestCompiledKernel:
    def test_matrices_agree_with_fallback(self):
        rng = np.random.default_rng(67)
        for gamma in (0.0, 0.5, 1.0, math.pi / 2):
            ta, pa = random_nodes(rng, 60)
            tb, pb = random_nodes(rng, 41)
            fast = _kernels.payoff_matrices(gamma, ta, pa, tb, pb, WA, WB)
            slow = _kernels_py.payoff_matrices(gamma, ta, pa, tb, pb, WA, WB)
            assert np.abs(fast[0] - slow[0]).max() <= 1e-12
            assert np.abs(fast[1] - slow[1]).max() <= 1e-12

    def test_pair_agrees_with_fallback(self):
        rng = np.random.default_rng(71)
        for _ in range(500):
            gamma = rng.uniform(0, math.pi / 2)
            ta, pa = rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2)
            tb, pb = rng.uniform(0, math.pi), rng.uniform(0, math.pi / 2)
            fast = _kernels.payoff_pair(gamma, ta, pa, tb, pb, WA, WB)
            slow = _kernels_py.payoff_pair(gamma, ta, pa, tb, pb, WA, WB)
            assert fast[0] == pytest.approx(slow[0], abs=1e-12)
            assert fast[1] == pytest.approx(slow[1], abs=1e-12)
