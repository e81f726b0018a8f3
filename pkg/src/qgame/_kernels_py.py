"""Pure-NumPy payoff kernels (fallback for the compiled extension).

The final state for a strategy pair decomposes into four per-player outer
products, so a whole grid-by-grid payoff matrix is a handful of broadcast
multiplies per basis component.  Entries are computed with the exact same
scalar expression regardless of block or worker splits, which keeps results
bit-identical under any chunking.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

BACKEND = "numpy"

# Rows of A are processed in blocks of this many nodes to bound temporaries.
_BLOCK = 512


def _components(thetas, phis):
    """Per-node state columns (uC, uD) and their defect images (DuC, DuD).

    Returns four (2, n) complex arrays indexed [basis component, node].
    """
    half = np.asarray(thetas, dtype=float) * 0.5
    c = np.cos(half)
    s = np.sin(half)
    ph = np.exp(1j * np.asarray(phis, dtype=float))
    u_c = np.stack([ph * c, -s])
    u_d = np.stack([s, ph.conj() * c])
    # Defect move sends (v0, v1) -> (v1, -v0).
    du_c = np.stack([u_c[1], -u_c[0]])
    du_d = np.stack([u_d[1], -u_d[0]])
    return u_c, u_d, du_c, du_d


def payoff_matrices(gamma, thetas_a, phis_a, thetas_b, phis_b, weights_a, weights_b=None):
    """Expected-payoff matrices over the cross product of two node lists.

    Returns (A, B): A[i, j] is the row player's payoff when row node i meets
    column node j; B is the column player's, or None when ``weights_b`` is.
    Weights are per-outcome payoffs in (cc, cd, dc, dd) order.
    """
    c = math.cos(gamma / 2)
    s = math.sin(gamma / 2)
    c2, s2, ics = c * c, s * s, 1j * (c * s)

    a_c, a_d, da_c, da_d = _components(thetas_a, phis_a)
    b_c, b_d, db_c, db_d = _components(thetas_b, phis_b)

    n_a = a_c.shape[1]
    n_b = b_c.shape[1]
    out_a = np.empty((n_a, n_b))
    out_b = np.empty((n_a, n_b)) if weights_b is not None else None
    weights_a = np.asarray(weights_a, dtype=float)
    if weights_b is not None:
        weights_b = np.asarray(weights_b, dtype=float)

    for lo in range(0, n_a, _BLOCK):
        hi = min(lo + _BLOCK, n_a)
        acc_a = np.zeros((hi - lo, n_b))
        acc_b = np.zeros((hi - lo, n_b)) if weights_b is not None else None
        for j in (0, 1):
            for k in (0, 1):
                psi = (
                    c2 * np.outer(a_c[j, lo:hi], b_c[k])
                    - ics * (np.outer(a_d[j, lo:hi], b_d[k]) - np.outer(da_c[j, lo:hi], db_c[k]))
                    + s2 * np.outer(da_d[j, lo:hi], db_d[k])
                )
                prob = psi.real * psi.real + psi.imag * psi.imag
                acc_a += weights_a[2 * j + k] * prob
                if acc_b is not None:
                    acc_b += weights_b[2 * j + k] * prob
        out_a[lo:hi] = acc_a
        if out_b is not None:
            out_b[lo:hi] = acc_b
    return out_a, out_b


def payoff_pair(gamma, theta_a, phi_a, theta_b, phi_b, weights_a, weights_b):
    """Scalar fast path: one strategy pair, both players' payoffs."""
    c = math.cos(gamma / 2)
    s = math.sin(gamma / 2)
    c2, s2, cs = c * c, s * s, c * s

    ca, sa = math.cos(theta_a / 2), math.sin(theta_a / 2)
    cb, sb = math.cos(theta_b / 2), math.sin(theta_b / 2)
    pha = cmath.exp(1j * phi_a)
    phb = cmath.exp(1j * phi_b)

    a_c = (pha * ca, -sa)
    a_d = (sa, pha.conjugate() * ca)
    da_c = (a_c[1], -a_c[0])
    da_d = (a_d[1], -a_d[0])
    b_c = (phb * cb, -sb)
    b_d = (sb, phb.conjugate() * cb)
    db_c = (b_c[1], -b_c[0])
    db_d = (b_d[1], -b_d[0])

    pay_a = 0.0
    pay_b = 0.0
    for j in (0, 1):
        for k in (0, 1):
            psi = (
                c2 * (a_c[j] * b_c[k])
                - 1j * cs * (a_d[j] * b_d[k] - da_c[j] * db_c[k])
                + s2 * (da_d[j] * db_d[k])
            )
            prob = psi.real * psi.real + psi.imag * psi.imag
            pay_a += weights_a[2 * j + k] * prob
            pay_b += weights_b[2 * j + k] * prob
    return pay_a, pay_b
