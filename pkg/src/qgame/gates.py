"""Two-qubit board for entangled binary-choice games.

One qubit per player, computational basis |C> (cooperate) and |D> (defect).
Joint basis ordering is fixed everywhere in this package:

    index 0 -> |CC>,  1 -> |CD>,  2 -> |DC>,  3 -> |DD>

with Alice's symbol first.  All amplitudes are complex128 and all gate
constructions are closed-form, so probabilities are exact to double
precision; nothing is ever sampled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Tolerance for unitarity / normalization invariants (a handful of 4x4
# products in double precision stays comfortably inside this).
ATOL = 1e-12

# GameState basis indices.
CC, CD, DC, DD = 0, 1, 2, 3

BASIS_LABELS = ("cc", "cd", "dc", "dd")


@dataclass(frozen=True)
class StrategyParams:
    """A move (theta, phi) in the two-parameter unitary strategy family.

    theta in [0, pi] interpolates cooperate -> defect, phi in [0, pi/2]
    adds the phase degree of freedom that has no classical counterpart.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.theta) and 0.0 <= self.theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        if not (math.isfinite(self.phi) and 0.0 <= self.phi <= math.pi / 2):
            raise ValueError(f"phi must lie in [0, pi/2], got {self.phi!r}")

    def as_tuple(self) -> tuple[float, float]:
        return (self.theta, self.phi)

    def distance(self, other: "StrategyParams") -> float:
        """Euclidean distance in the (theta, phi) parameter plane."""
        return math.hypot(self.theta - other.theta, self.phi - other.phi)


#: The four named moves.  PHASE_FLIP (i * sigma_z) and MIRACLE live outside
#: the classical sector and only matter once the board is entangled.
COOPERATE = StrategyParams(0.0, 0.0)
DEFECT = StrategyParams(math.pi, 0.0)
PHASE_FLIP = StrategyParams(0.0, math.pi / 2)
MIRACLE = StrategyParams(math.pi / 2, math.pi / 2)


def require_unitary(m: np.ndarray, atol: float = ATOL) -> np.ndarray:
    """Return ``m`` unchanged if it is unitary to ``atol`` (max entry dev)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()
    if not dev <= atol:
        raise ValueError(f"matrix is not unitary: max |U^dag U - I| = {dev:.3e}")
    return m


def strategy_unitary(params: StrategyParams) -> np.ndarray:
    """2x2 unitary for a move.

    [[exp(i phi) cos(theta/2),            sin(theta/2)],
     [          -sin(theta/2),  exp(-i phi) cos(theta/2)]]
    """
    c = math.cos(params.theta / 2)
    s = math.sin(params.theta / 2)
    ph = complex(math.cos(params.phi), math.sin(params.phi))
    return np.array([[ph * c, s], [-s, ph.conjugate() * c]], dtype=np.complex128)


_DEFECT_MAT = strategy_unitary(DEFECT)
_D_TENSOR_D = np.kron(_DEFECT_MAT, _DEFECT_MAT)
_D_TENSOR_C = np.kron(_DEFECT_MAT, np.eye(2))
_C_TENSOR_D = np.kron(np.eye(2), _DEFECT_MAT)


def _require_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not (math.isfinite(gamma) and 0.0 <= gamma <= math.pi / 2):
        raise ValueError(f"gamma must lie in [0, pi/2], got {gamma!r}")
    return gamma


def entangling_gate(gamma: float) -> np.ndarray:
    """Symmetric two-qubit gate exp(i gamma (D x D) / 2).

    (D x D) squares to the identity, so the series collapses to
    cos(gamma/2) I + i sin(gamma/2) (D x D) exactly.  gamma measures how
    entangled the board is: 0 is a product board, pi/2 maximally entangled.
    """
    gamma = _require_gamma(gamma)
    return (
        math.cos(gamma / 2) * np.eye(4, dtype=np.complex128)
        + 1j * math.sin(gamma / 2) * _D_TENSOR_D
    )


def tensor_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product A x B of two single-player 2x2 unitaries.

    Row/column ordering matches the GameState basis (Alice factor first).
    """
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise ValueError(f"expected two 2x2 matrices, got {a.shape} and {b.shape}")
    return np.kron(a, b)


@dataclass(frozen=True, eq=False)
class GameState:
    """Normalized 4-component amplitude vector over (|CC>,|CD>,|DC>,|DD>)."""

    amp: np.ndarray

    def __post_init__(self):
        amp = np.asarray(self.amp, dtype=np.complex128).reshape(-1).copy()
        if amp.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {np.shape(self.amp)}")
        if not np.all(np.isfinite(amp.view(np.float64))):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.sum(amp.real**2 + amp.imag**2))
        if abs(norm2 - 1.0) > ATOL:
            raise ValueError(f"state is not normalized: sum |amp|^2 = {norm2!r}")
        amp.flags.writeable = False
        object.__setattr__(self, "amp", amp)

    def probabilities(self) -> np.ndarray:
        return self.amp.real**2 + self.amp.imag**2

    def overlap(self, other: "GameState") -> float:
        """|<self|other>|, 1 for states equal up to a global phase."""
        return float(abs(np.vdot(self.amp, other.amp)))


@dataclass(frozen=True)
class OutcomeDistribution:
    """Joint measurement probabilities over the four channel pairs."""

    p_cc: float
    p_cd: float
    p_dc: float
    p_dd: float

    def __post_init__(self):
        probs = self.as_array()
        if not np.all(np.isfinite(probs)):
            raise ValueError("probabilities must be finite")
        if probs.min() < -ATOL or probs.max() > 1.0 + ATOL:
            raise ValueError(f"probabilities outside [0, 1]: {probs}")
        if abs(float(probs.sum()) - 1.0) > ATOL:
            raise ValueError(f"probabilities must sum to 1, got {probs.sum()!r}")

    def as_array(self) -> np.ndarray:
        return np.array([self.p_cc, self.p_cd, self.p_dc, self.p_dd], dtype=float)


def outcome_distribution(state: GameState) -> OutcomeDistribution:
    """Squared moduli of the state amplitudes, in basis order."""
    p = state.probabilities()
    return OutcomeDistribution(float(p[CC]), float(p[CD]), float(p[DC]), float(p[DD]))


def evolve(gamma: float, a: StrategyParams, b: StrategyParams) -> GameState:
    """Final pre-measurement state J (U_A x U_B) J^dag |CC>.

    The board is prepared by conjugating |CC> with the entangler's adjoint
    and undone with the entangler itself after both moves.  This
    orientation commutes with the classical moves, so pure theta-play
    reproduces the classical game at every gamma, while phase moves pick up
    the entanglement.
    """
    j = entangling_gate(gamma)
    u = tensor_product(strategy_unitary(a), strategy_unitary(b))
    amp = j @ (u @ j.conj().T[:, CC])
    return GameState(amp)


def schmidt_weights(gamma: float) -> tuple[float, float]:
    """Schmidt weights (cos^2(gamma/2), sin^2(gamma/2)) of the prepared board.

    Equal weights at gamma = pi/2 certify a maximally entangled start.
    """
    gamma = _require_gamma(gamma)
    return (math.cos(gamma / 2) ** 2, math.sin(gamma / 2) ** 2)
