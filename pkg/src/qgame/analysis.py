"""Equilibrium and worst-case analysis over the strategy space.

Everything here is grid search plus local golden-section refinement over
the (theta, phi) rectangle, driven by the payoff kernels.  All reductions
break ties toward the lexicographically smallest (theta, phi) node so that
results are deterministic for any worker count or kernel backend.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from . import backend
from .game import PayoffPair, PayoffTable, play
from .gates import (
    DEFECT,
    PHASE_FLIP,
    StrategyParams,
    entangling_gate,
    evolve,
    strategy_unitary,
)

# Payoff differences at or below this are treated as exact ties; it absorbs
# rounding noise between backends without masking any real payoff gap.
TIE_TOL = 1e-12

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class BracketError(RuntimeError):
    """A bisection bracket did not behave as required."""


@dataclass(frozen=True)
class StrategyGrid:
    """Uniform grid over [0, pi] x [0, pi/2], inclusive of all edges.

    ``classical_only`` collapses the phi axis to the single value 0,
    restricting the space to the coin-flip sector.
    """

    theta_steps: int = 101
    phi_steps: int = 51
    classical_only: bool = False

    def __post_init__(self):
        if int(self.theta_steps) != self.theta_steps or self.theta_steps < 2:
            raise ValueError(f"theta_steps must be an integer >= 2, got {self.theta_steps!r}")
        if int(self.phi_steps) != self.phi_steps or self.phi_steps < 2:
            raise ValueError(f"phi_steps must be an integer >= 2, got {self.phi_steps!r}")

    @property
    def theta_values(self) -> np.ndarray:
        return np.linspace(0.0, math.pi, self.theta_steps)

    @property
    def phi_values(self) -> np.ndarray:
        if self.classical_only:
            return np.zeros(1)
        return np.linspace(0.0, math.pi / 2, self.phi_steps)

    @property
    def theta_step(self) -> float:
        return math.pi / (self.theta_steps - 1)

    @property
    def phi_step(self) -> float:
        if self.classical_only:
            return 0.0
        return (math.pi / 2) / (self.phi_steps - 1)

    @property
    def n_nodes(self) -> int:
        return self.theta_steps * len(self.phi_values)

    def node_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Flattened (thetas, phis), theta-major so flat order is the
        lexicographic (theta, phi) order."""
        phis = self.phi_values
        return (
            np.repeat(self.theta_values, len(phis)),
            np.tile(phis, self.theta_steps),
        )

    def params_at(self, flat_index: int) -> StrategyParams:
        n_phi = len(self.phi_values)
        i, j = divmod(int(flat_index), n_phi)
        return StrategyParams(float(self.theta_values[i]), float(self.phi_values[j]))

    def refined(self) -> "StrategyGrid":
        """Grid at doubled resolution containing every node of this one."""
        return StrategyGrid(
            2 * self.theta_steps - 1, 2 * self.phi_steps - 1, self.classical_only
        )


@dataclass(frozen=True)
class EquilibriumReport:
    pair: tuple[StrategyParams, StrategyParams]
    payoffs: PayoffPair
    is_nash: bool
    nash_slack: float
    is_pareto: bool


@dataclass(frozen=True)
class MaximinPoint:
    gamma: float
    m: float
    argmax_strategy: StrategyParams


@dataclass(frozen=True)
class CorrespondenceReport:
    gamma: float
    commutator_dd: float
    commutator_dc: float
    commutator_cd: float
    factorization_deviation: float


def _argmax_lex(values: np.ndarray, tie_tol: float = TIE_TOL) -> int:
    """First index attaining the max up to ``tie_tol`` (flat order is
    lexicographic node order)."""
    return int(np.flatnonzero(values >= values.max() - tie_tol)[0])


def _argmin_lex(values: np.ndarray, tie_tol: float = TIE_TOL) -> int:
    return int(np.flatnonzero(values <= values.min() + tie_tol)[0])


def golden_section_max(f, lo: float, hi: float, tol: float = 1e-6) -> tuple[float, float]:
    """Maximize a unimodal scalar function on [lo, hi] to width ``tol``."""
    a, b = float(lo), float(hi)
    if b - a <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _alice_payoff(gamma, params: StrategyParams, opp: StrategyParams, table) -> float:
    return backend.payoff_pair(
        gamma, params.theta, params.phi, opp.theta, opp.phi,
        table.alice_weights(), table.bob_weights(),
    )[0]


def _payoff_matrix(gamma, grid: StrategyGrid, table, workers=1) -> np.ndarray:
    """Row player's payoff over grid x grid."""
    thetas, phis = grid.node_arrays()
    a, _ = backend.payoff_matrices(
        gamma, thetas, phis, thetas, phis, table.alice_weights(), None, workers
    )
    return a


def best_response(
    gamma: float,
    opponent: StrategyParams,
    grid: StrategyGrid,
    table: PayoffTable,
    workers: int = 1,
) -> tuple[StrategyParams, float]:
    """Responder's best reply (played in Alice's seat) against ``opponent``.

    Grid argmax followed by one golden-section pass per parameter
    (+- one grid step, clipped); ties go to the smallest (theta, phi).
    """
    thetas, phis = grid.node_arrays()
    vals, _ = backend.payoff_matrices(
        gamma, thetas, phis, np.array([opponent.theta]), np.array([opponent.phi]),
        table.alice_weights(), None, workers,
    )
    i = _argmax_lex(vals[:, 0])
    best = grid.params_at(i)
    best_val = float(vals[i, 0])

    th, ph = best.theta, best.phi
    lo, hi = max(0.0, th - grid.theta_step), min(math.pi, th + grid.theta_step)
    x, v = golden_section_max(
        lambda t: _alice_payoff(gamma, StrategyParams(t, ph), opponent, table), lo, hi
    )
    if v > best_val:
        th, best_val = x, v
    if not grid.classical_only:
        lo, hi = max(0.0, ph - grid.phi_step), min(math.pi / 2, ph + grid.phi_step)
        x, v = golden_section_max(
            lambda p: _alice_payoff(gamma, StrategyParams(th, p), opponent, table), lo, hi
        )
        if v > best_val:
            ph, best_val = x, v
    return StrategyParams(th, ph), best_val


def nash_slack(
    gamma: float,
    pair: tuple[StrategyParams, StrategyParams],
    grid: StrategyGrid,
    table: PayoffTable,
    workers: int = 1,
) -> float:
    """Largest unilateral gain either player can find on the grid."""
    a, b = pair
    wa, wb = table.alice_weights(), table.bob_weights()
    current_a, current_b = backend.payoff_pair(
        gamma, a.theta, a.phi, b.theta, b.phi, wa, wb
    )
    thetas, phis = grid.node_arrays()
    dev_a, _ = backend.payoff_matrices(
        gamma, thetas, phis, np.array([b.theta]), np.array([b.phi]), wa, None, workers
    )
    _, dev_b = backend.payoff_matrices(
        gamma, np.array([a.theta]), np.array([a.phi]), thetas, phis, wa, wb, workers
    )
    return max(float(dev_a.max()) - current_a, float(dev_b.max()) - current_b)


def _merge_components(coords_by_label: list[np.ndarray], radius: int) -> list[int]:
    """Union labels whose point sets come within Chebyshev ``radius``."""
    n = len(coords_by_label)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    boxes = [(c.min(axis=0), c.max(axis=0)) for c in coords_by_label]
    for p in range(n):
        for q in range(p + 1, n):
            if find(p) == find(q):
                continue
            gap = np.maximum(
                boxes[p][0] - boxes[q][1], boxes[q][0] - boxes[p][1]
            ).max()
            if gap > radius:
                continue
            a, b = coords_by_label[p], coords_by_label[q]
            hit = False
            for lo in range(0, len(a), 1024):
                chunk = a[lo : lo + 1024]
                d = np.abs(chunk[:, None, :] - b[None, :, :]).max(axis=2)
                if d.min() <= radius:
                    hit = True
                    break
            if hit:
                parent[find(q)] = find(p)
    return [find(i) for i in range(n)]


def find_nash(
    gamma: float,
    grid: StrategyGrid,
    table: PayoffTable,
    epsilon: float = 1e-3,
    workers: int = 1,
) -> list[EquilibriumReport]:
    """All grid strategy pairs that are epsilon-Nash, clustered.

    A pair qualifies when neither player can gain more than ``epsilon`` by
    moving to any other grid node.  Qualifying pairs within two grid steps
    (Chebyshev, over all four indices) merge into one cluster, reported at
    its most-stable node: smallest slack, then largest total payoff, then
    lexicographic order.  The symmetric game means the column player's
    payoff matrix is the transpose of the row player's.
    """
    if epsilon <= 0:
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    a_mat = _payoff_matrix(gamma, grid, table, workers)
    colmax = a_mat.max(axis=0)
    ok = a_mat >= colmax[None, :] - epsilon
    qualifying = ok & ok.T
    if not qualifying.any():
        return []

    n_phi = len(grid.phi_values)
    shape4 = (grid.theta_steps, n_phi, grid.theta_steps, n_phi)
    mask4 = qualifying.reshape(shape4)
    labels4, n_labels = ndimage.label(mask4, structure=np.ones((3,) * 4, bool))
    coords = np.argwhere(mask4)
    labels = labels4[mask4]
    coords_by_label = [coords[labels == l] for l in range(1, n_labels + 1)]
    merged = _merge_components(coords_by_label, radius=2)

    flat_i = coords[:, 0] * n_phi + coords[:, 1]
    flat_j = coords[:, 2] * n_phi + coords[:, 3]
    pay_a = a_mat[flat_i, flat_j]
    pay_b = a_mat[flat_j, flat_i]
    slack = np.maximum(colmax[flat_j] - pay_a, colmax[flat_i] - pay_b)
    merged_per_node = np.array([merged[l - 1] for l in labels])

    reports = []
    for root in sorted(set(merged)):
        sel = np.flatnonzero(merged_per_node == root)
        cand = sel[slack[sel] <= slack[sel].min() + TIE_TOL]
        total = pay_a[cand] + pay_b[cand]
        cand = cand[total >= total.max() - TIE_TOL]
        node = int(cand[0])  # coords are lexicographically sorted already
        pair = (grid.params_at(int(flat_i[node])), grid.params_at(int(flat_j[node])))
        payoffs = PayoffPair(float(pay_a[node]), float(pay_b[node]))
        s = float(slack[node])
        reports.append(
            EquilibriumReport(
                pair=pair,
                payoffs=payoffs,
                is_nash=s <= epsilon,
                nash_slack=s,
                is_pareto=_pareto_from_matrix(a_mat, payoffs),
            )
        )
    reports.sort(key=lambda r: (r.pair[0].theta, r.pair[0].phi, r.pair[1].theta, r.pair[1].phi))
    return reports


def _pareto_from_matrix(a_mat: np.ndarray, payoffs: PayoffPair, margin: float = 1e-9) -> bool:
    pa, pb = payoffs
    b_mat = a_mat.T
    better_a = (a_mat > pa + margin) & (b_mat > pb - margin)
    if better_a.any():
        return False
    better_b = (b_mat > pb + margin) & (a_mat > pa - margin)
    return not better_b.any()


def is_pareto_optimal(
    pair: tuple[StrategyParams, StrategyParams],
    gamma: float,
    grid: StrategyGrid,
    table: PayoffTable,
    workers: int = 1,
) -> bool:
    """True when no grid pair raises one payoff without strictly lowering
    the other (strictness margin 1e-9)."""
    result = play(gamma, pair[0], pair[1], table)
    a_mat = _payoff_matrix(gamma, grid, table, workers)
    return _pareto_from_matrix(a_mat, result.payoffs)


def dominant_strategy(
    gamma: float,
    grid: StrategyGrid,
    table: PayoffTable,
    workers: int = 1,
    tol: float = 1e-9,
) -> StrategyParams | None:
    """The grid strategy that best-responds (within ``tol``) to every
    opponent node, or None if there is none."""
    a_mat = _payoff_matrix(gamma, grid, table, workers)
    gap = (a_mat - a_mat.max(axis=0)[None, :]).min(axis=1)
    winners = np.flatnonzero(gap >= -tol)
    if winners.size == 0:
        return None
    return grid.params_at(int(winners[0]))


def _clip(x: float, lo: float, hi: float) -> float:
    return lo if x < lo else hi if x > hi else x


def maximin(
    gamma: float,
    grid_a: StrategyGrid,
    table: PayoffTable,
    workers: int = 1,
    refine_tol: float = 1e-6,
) -> MaximinPoint:
    """Best payoff Alice can guarantee against a worst-case classical Bob.

    Bob ranges over the theta-only sector (phi = 0, same theta resolution
    as Alice's grid).  The outer max starts from the grid argmax and runs
    alternating golden-section sweeps in theta and phi; where the guarantee
    is a tie between two worst-case replies those sweeps stall on the tie
    ridge, so a golden-section line search along the estimated ridge
    tangent finishes the job.  The inner min gets its own golden-section
    polish around the grid argmin.  Every step keeps the best value seen,
    so the result never drops below the pure grid answer.
    """
    wa, wb = table.alice_weights(), table.bob_weights()
    bob_thetas = grid_a.theta_values
    bob_phis = np.zeros_like(bob_thetas)
    h_bob = grid_a.theta_step

    def vs_bob(params: StrategyParams, theta_b: float) -> float:
        return backend.payoff_pair(
            gamma, params.theta, params.phi, theta_b, 0.0, wa, wb
        )[0]

    def worst_case_detail(params: StrategyParams) -> tuple[float, np.ndarray]:
        vals, _ = backend.payoff_matrices(
            gamma, np.array([params.theta]), np.array([params.phi]),
            bob_thetas, bob_phis, wa,
        )
        vals = vals[0]
        j = _argmin_lex(vals)
        lo = max(0.0, bob_thetas[j] - h_bob)
        hi = min(math.pi, bob_thetas[j] + h_bob)
        _, neg = golden_section_max(
            lambda tb: -vs_bob(params, tb), lo, hi, refine_tol
        )
        value = min(float(vals[j]), -neg)
        active = bob_thetas[vals <= value + 1e-6 * (1.0 + abs(value))]
        return value, active

    def worst_case(params: StrategyParams) -> float:
        return worst_case_detail(params)[0]

    thetas, phis = grid_a.node_arrays()
    mat, _ = backend.payoff_matrices(
        gamma, thetas, phis, bob_thetas, bob_phis, wa, None, workers
    )
    guarantees = mat.min(axis=1)
    start = _argmax_lex(guarantees)
    best = grid_a.params_at(start)
    best_val = float(guarantees[start])

    h_th = grid_a.theta_step
    h_ph = grid_a.phi_step if not grid_a.classical_only else 0.0

    def ridge_step() -> tuple[StrategyParams, float] | None:
        """Line search along the tie ridge of the two active replies."""
        _, active = worst_case_detail(best)
        if active.size < 2 or active[-1] - active[0] <= h_bob + 1e-12:
            return None
        tb1, tb2 = float(active[0]), float(active[-1])

        def tie_gap(p: StrategyParams) -> float:
            return vs_bob(p, tb1) - vs_bob(p, tb2)

        eps = 1e-6
        t_lo, t_hi = max(0.0, best.theta - eps), min(math.pi, best.theta + eps)
        g_th = (
            tie_gap(StrategyParams(t_hi, best.phi))
            - tie_gap(StrategyParams(t_lo, best.phi))
        ) / (t_hi - t_lo)
        p_lo, p_hi = max(0.0, best.phi - eps), min(math.pi / 2, best.phi + eps)
        g_ph = (
            tie_gap(StrategyParams(best.theta, p_hi))
            - tie_gap(StrategyParams(best.theta, p_lo))
        ) / (p_hi - p_lo)
        norm = math.hypot(g_th, g_ph)
        if norm == 0.0:
            return None
        tangent = (-g_ph / norm, g_th / norm)
        span = 2.0 * max(h_th, h_ph)

        def along(s: float) -> float:
            return worst_case(StrategyParams(
                _clip(best.theta + s * tangent[0], 0.0, math.pi),
                _clip(best.phi + s * tangent[1], 0.0, math.pi / 2),
            ))

        s, v = golden_section_max(along, -span, span, refine_tol)
        point = StrategyParams(
            _clip(best.theta + s * tangent[0], 0.0, math.pi),
            _clip(best.phi + s * tangent[1], 0.0, math.pi / 2),
        )
        return point, v

    for _ in range(100):
        moved = 0.0
        lo, hi = max(0.0, best.theta - h_th), min(math.pi, best.theta + h_th)
        x, v = golden_section_max(
            lambda t: worst_case(StrategyParams(t, best.phi)), lo, hi, refine_tol
        )
        if v > best_val:
            moved = max(moved, abs(x - best.theta))
            best, best_val = StrategyParams(x, best.phi), v
        if not grid_a.classical_only:
            lo, hi = max(0.0, best.phi - h_ph), min(math.pi / 2, best.phi + h_ph)
            x, v = golden_section_max(
                lambda p: worst_case(StrategyParams(best.theta, p)), lo, hi, refine_tol
            )
            if v > best_val:
                moved = max(moved, abs(x - best.phi))
                best, best_val = StrategyParams(best.theta, x), v
        if moved >= refine_tol:
            continue
        if not grid_a.classical_only:
            step = ridge_step()
            if step is not None and step[1] > best_val:
                moved = max(
                    abs(step[0].theta - best.theta), abs(step[0].phi - best.phi)
                )
                best, best_val = step
        if moved < refine_tol:
            break
    return MaximinPoint(gamma=float(gamma), m=best_val, argmax_strategy=best)


def threshold_gamma(
    table: PayoffTable,
    grid: StrategyGrid,
    tol: float = 1e-4,
    workers: int = 1,
    jump_distance: float = 0.1,
) -> float:
    """Entanglement level at which the guaranteed-payoff strategy leaves
    defection, located by bisection on the argmax-jump indicator."""
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol!r}")

    def jumped(g: float) -> bool:
        point = maximin(g, grid, table, workers)
        return point.argmax_strategy.distance(DEFECT) > jump_distance

    lo, hi = 0.0, math.pi / 2
    if jumped(lo):
        raise BracketError(
            "guaranteed-payoff strategy is already away from defection at gamma=0"
        )
    if not jumped(hi):
        raise BracketError(
            "guaranteed-payoff strategy never leaves defection on [0, pi/2]"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if jumped(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def verify_correspondence(gamma: float, theta_steps: int = 33) -> CorrespondenceReport:
    """Residuals of the classical-embedding conditions at ``gamma``.

    Reports the max-entry norms of the commutators of the entangler with
    DxD, DxI and IxD, plus the worst factorization error
    |P - p_A p_B| over a theta-only strategy grid.
    """
    j = entangling_gate(gamma)
    d = strategy_unitary(DEFECT)
    eye = np.eye(2)

    def comm_norm(op: np.ndarray) -> float:
        return float(np.abs(j @ op - op @ j).max())

    thetas = np.linspace(0.0, math.pi, theta_steps)
    marginals = np.stack([np.cos(thetas / 2) ** 2, np.sin(thetas / 2) ** 2])
    worst = 0.0
    for ta in range(theta_steps):
        for tb in range(theta_steps):
            probs = evolve(
                gamma, StrategyParams(float(thetas[ta])), StrategyParams(float(thetas[tb]))
            ).probabilities()
            expected = np.outer(marginals[:, ta], marginals[:, tb]).reshape(-1)
            worst = max(worst, float(np.abs(probs - expected).max()))
    return CorrespondenceReport(
        gamma=float(gamma),
        commutator_dd=comm_norm(np.kron(d, d)),
        commutator_dc=comm_norm(np.kron(d, eye)),
        commutator_cd=comm_norm(np.kron(eye, d)),
        factorization_deviation=worst,
    )


def analytic_nash_bound_check(grid: StrategyGrid, workers: int = 1) -> float:
    """Deviation of the computed payoff against the phase-flip opponent from
    its closed form cos^2(theta/2) (3 sin^2 phi + cos^2 phi).

    Runs at gamma = pi/2 with the default table; raises if any payoff
    exceeds the reward bound of 3.
    """
    table = PayoffTable.default()
    thetas, phis = grid.node_arrays()
    vals, _ = backend.payoff_matrices(
        math.pi / 2, thetas, phis,
        np.array([PHASE_FLIP.theta]), np.array([PHASE_FLIP.phi]),
        table.alice_weights(), None, workers,
    )
    vals = vals[:, 0]
    if vals.max() > 3.0 + 1e-12:
        raise ValueError(
            f"payoff against the phase-flip move exceeds 3: {vals.max()!r}"
        )
    closed = np.cos(thetas / 2) ** 2 * (3 * np.sin(phis) ** 2 + np.cos(phis) ** 2)
    return float(np.abs(vals - closed).max())
