"""Time the payoff-matrix kernels: compiled extension vs pure NumPy.

Run after installing the package:

    python benchmarks/bench_kernels.py

Prints one row per (backend, grid size) and cross-checks that both
backends agree to 1e-12 on every entry.
"""
import math
import timeit

import numpy as np

from qgame import _kernels_py
from qgame.analysis import StrategyGrid
from qgame.game import PayoffTable

try:
    from qgame import _kernels
except ImportError:
    _kernels = None

GAMMA = math.pi / 2
GRIDS = [(26, 14), (51, 26), (101, 51)]


def node_arrays(theta_steps, phi_steps):
    grid = StrategyGrid(theta_steps, phi_steps)
    return grid.node_arrays()


def run(kernel, thetas, phis, weights):
    return kernel.payoff_matrices(GAMMA, thetas, phis, thetas, phis, weights, None)[0]


def main():
    table = PayoffTable.default()
    weights = table.alice_weights()
    backends = [("numpy", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    else:
        print("compiled extension not available; benchmarking the fallback only")

    print(f"{'backend':>8} {'grid':>9} {'nodes':>6} {'pairs':>12} {'seconds':>9} {'Mpairs/s':>9}")
    for theta_steps, phi_steps in GRIDS:
        thetas, phis = node_arrays(theta_steps, phi_steps)
        n = len(thetas)
        results = {}
        for name, kernel in backends:
            reps = 3 if n <= 2000 else 1
            seconds = min(
                timeit.repeat(
                    lambda: run(kernel, thetas, phis, weights), number=1, repeat=reps
                )
            )
            results[name] = run(kernel, thetas, phis, weights)
            rate = n * n / seconds / 1e6
            print(
                f"{name:>8} {theta_steps:>4}x{phi_steps:<4} {n:>6} {n * n:>12}"
                f" {seconds:>9.3f} {rate:>9.1f}"
            )
        if len(results) == 2:
            dev = float(np.abs(results["cython"] - results["numpy"]).max())
            print(f"{'':>8} backend agreement: max |delta| = {dev:.3e}")
            assert dev <= 1e-12, "kernel backends disagree"


if __name__ == "__main__":
    main()
