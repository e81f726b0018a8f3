"""Entangled two-player binary-choice games.

Exact two-qubit simulation of the entangle / move / disentangle / measure
protocol, expected payoffs for dilemma tables, and the game-theoretic
analysis on top: best responses, Nash equilibria, Pareto checks, and the
guaranteed-payoff curve over the entanglement range.
"""

from .backend import BACKEND
from .gates import (
    COOPERATE,
    DEFECT,
    MIRACLE,
    PHASE_FLIP,
    GameState,
    OutcomeDistribution,
    StrategyParams,
    entangling_gate,
    evolve,
    outcome_distribution,
    require_unitary,
    schmidt_weights,
    strategy_unitary,
    tensor_product,
)
from .game import (
    GameResult,
    PayoffPair,
    PayoffTable,
    classical_mixed_oracle,
    expected_payoffs,
    figure_path_strategy,
    play,
)
from .analysis import (
    BracketError,
    CorrespondenceReport,
    EquilibriumReport,
    MaximinPoint,
    StrategyGrid,
    analytic_nash_bound_check,
    best_response,
    dominant_strategy,
    find_nash,
    golden_section_max,
    is_pareto_optimal,
    maximin,
    nash_slack,
    threshold_gamma,
    verify_correspondence,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "COOPERATE",
    "CorrespondenceReport",
    "DEFECT",
    "EquilibriumReport",
    "GameResult",
    "GameState",
    "MIRACLE",
    "MaximinPoint",
    "OutcomeDistribution",
    "PHASE_FLIP",
    "PayoffPair",
    "PayoffTable",
    "StrategyGrid",
    "StrategyParams",
    "analytic_nash_bound_check",
    "best_response",
    "classical_mixed_oracle",
    "dominant_strategy",
    "entangling_gate",
    "evolve",
    "expected_payoffs",
    "figure_path_strategy",
    "find_nash",
    "golden_section_max",
    "is_pareto_optimal",
    "maximin",
    "nash_slack",
    "outcome_distribution",
    "play",
    "require_unitary",
    "schmidt_weights",
    "strategy_unitary",
    "tensor_product",
    "threshold_gamma",
    "verify_correspondence",
]
