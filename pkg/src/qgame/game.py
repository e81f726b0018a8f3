"""Payoff semantics on top of the quantum board.

Maps outcome distributions to expected payoffs for a symmetric two-player
dilemma table (temptation > reward > punishment > sucker), and provides the
biased-coin classical game used as the factorization oracle plus the
one-parameter strategy path used for payoff surfaces.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .gates import (
    GameState,
    OutcomeDistribution,
    StrategyParams,
    evolve,
    outcome_distribution,
)


@dataclass(frozen=True)
class PayoffTable:
    """Reward / punishment / temptation / sucker payoffs.

    Only the single-shot dilemma ordering t > r > p > s is enforced; the
    values themselves are abstract payoff units.
    """

    r: float
    p: float
    t: float
    s: float

    def __post_init__(self):
        vals = (self.r, self.p, self.t, self.s)
        if not all(math.isfinite(v) for v in vals):
            raise ValueError(f"payoffs must be finite, got {vals}")
        if not (self.t > self.r > self.p > self.s):
            raise ValueError(
                f"dilemma ordering t > r > p > s violated: "
                f"t={self.t}, r={self.r}, p={self.p}, s={self.s}"
            )

    @classmethod
    def default(cls) -> "PayoffTable":
        """The customary (r, p, t, s) = (3, 1, 5, 0) table."""
        return cls(r=3.0, p=1.0, t=5.0, s=0.0)

    def alice_weights(self) -> np.ndarray:
        """Alice's payoff per joint outcome, in (cc, cd, dc, dd) order."""
        return np.array([self.r, self.s, self.t, self.p], dtype=float)

    def bob_weights(self) -> np.ndarray:
        """Bob's payoff per joint outcome; t and s swap roles."""
        return np.array([self.r, self.t, self.s, self.p], dtype=float)


class PayoffPair(NamedTuple):
    alice: float
    bob: float

    def swapped(self) -> "PayoffPair":
        return PayoffPair(self.bob, self.alice)


def expected_payoffs(dist: OutcomeDistribution, table: PayoffTable) -> PayoffPair:
    """Expected payoffs r*P_cc + p*P_dd + t*P_dc + s*P_cd (Alice) and the
    t<->s swap for Bob."""
    probs = dist.as_array()
    return PayoffPair(
        float(table.alice_weights() @ probs),
        float(table.bob_weights() @ probs),
    )


@dataclass(frozen=True, eq=False)
class GameResult:
    """One fully played round, with the inputs echoed for self-describing rows."""

    gamma: float
    strategy_a: StrategyParams
    strategy_b: StrategyParams
    final_state: GameState
    distribution: OutcomeDistribution
    payoffs: PayoffPair


def play(
    gamma: float,
    a: StrategyParams,
    b: StrategyParams,
    table: PayoffTable | None = None,
) -> GameResult:
    """Run one round: evolve, measure exactly, pay off."""
    if table is None:
        table = PayoffTable.default()
    state = evolve(gamma, a, b)
    dist = outcome_distribution(state)
    return GameResult(
        gamma=float(gamma),
        strategy_a=a,
        strategy_b=b,
        final_state=state,
        distribution=dist,
        payoffs=expected_payoffs(dist, table),
    )


def classical_mixed_oracle(pa: float, pb: float, table: PayoffTable) -> PayoffPair:
    """Expected payoffs when both players flip independent biased coins.

    ``pa`` and ``pb`` are the cooperation probabilities.  This is the
    brute-force reference the theta-only sector must reproduce.
    """
    for name, prob in (("pa", pa), ("pb", pb)):
        if not (math.isfinite(prob) and 0.0 <= prob <= 1.0):
            raise ValueError(f"{name} must be a probability in [0, 1], got {prob!r}")
    dist = OutcomeDistribution(
        p_cc=pa * pb,
        p_cd=pa * (1.0 - pb),
        p_dc=(1.0 - pa) * pb,
        p_dd=(1.0 - pa) * (1.0 - pb),
    )
    return expected_payoffs(dist, table)


def figure_path_strategy(t: float) -> StrategyParams:
    """Map the scalar path t in [-1, 1] onto the strategy family.

    t in [0, 1] walks the classical edge (theta = t*pi, phi = 0) from
    cooperate to defect; t in [-1, 0) walks the phase edge
    (theta = 0, phi = -t*pi/2) out to the phase-flip move at t = -1.
    """
    t = float(t)
    if not (math.isfinite(t) and -1.0 <= t <= 1.0):
        raise ValueError(f"path parameter t must lie in [-1, 1], got {t!r}")
    if t >= 0.0:
        return StrategyParams(theta=t * math.pi, phi=0.0)
    return StrategyParams(theta=0.0, phi=-t * math.pi / 2)
