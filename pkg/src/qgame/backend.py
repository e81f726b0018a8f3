"""Kernel backend selection and worker-parallel dispatch.

The compiled extension is preferred when importable; the pure-NumPy kernel
is a drop-in replacement.  Set QGAME_BACKEND=numpy (or =cython) to force a
choice, e.g. for benchmarking.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels_py

_FORCED = os.environ.get("QGAME_BACKEND", "").strip().lower()

if _FORCED == "numpy":
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _FORCED == "cython":
            raise ImportError(
                "QGAME_BACKEND=cython but the compiled extension is not "
                "available; build it with `pip install -e .`"
            ) from None
        _impl = _kernels_py

#: Name of the active kernel implementation ("cython" or "numpy").
BACKEND = _impl.BACKEND

payoff_pair = _impl.payoff_pair


def payoff_matrices(
    gamma: float,
    thetas_a: np.ndarray,
    phis_a: np.ndarray,
    thetas_b: np.ndarray,
    phis_b: np.ndarray,
    weights_a: np.ndarray,
    weights_b: np.ndarray | None = None,
    workers: int = 1,
):
    """Payoff matrices over two node lists, optionally split across threads.

    Each row is a pure function of its own node values, so the result is
    bit-identical for every worker count.
    """
    thetas_a = np.ascontiguousarray(thetas_a, dtype=float)
    phis_a = np.ascontiguousarray(phis_a, dtype=float)
    n_a = thetas_a.shape[0]
    if workers <= 1 or n_a < 2 * workers:
        return _impl.payoff_matrices(
            gamma, thetas_a, phis_a, thetas_b, phis_b, weights_a, weights_b
        )

    bounds = np.linspace(0, n_a, workers + 1).astype(int)
    chunks = [(bounds[w], bounds[w + 1]) for w in range(workers)]

    def run(chunk):
        lo, hi = chunk
        return _impl.payoff_matrices(
            gamma, thetas_a[lo:hi], phis_a[lo:hi], thetas_b, phis_b,
            weights_a, weights_b,
        )

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(run, chunks))
    out_a = np.vstack([p[0] for p in parts])
    out_b = np.vstack([p[1] for p in parts]) if weights_b is not None else None
    return out_a, out_b
