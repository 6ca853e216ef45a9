"""Maximin analysis of the gambling game over its two parameters.

The player's expected gain is convex in the casino's bias epsilon at any
fixed splitting eta (a linear term plus a convex punishment term), so the
casino's best response is a one-dimensional convex minimization.  The
player's guaranteed value is found by maximizing that worst case over
eta with a coarse grid followed by local refinement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .protocol import GameConfig, SplittingChoice

__all__ = [
    "BestResponse",
    "EquilibriumResult",
    "SweepTable",
    "bob_gain",
    "golden_section_min",
    "alice_best_response",
    "bob_optimal_eta",
    "sweep_distribution",
    "sweep_gain",
]

# default tolerance on the casino's minimizing epsilon
EPSILON_TOL = 1e-6
# default tolerance on the player's optimal eta
ETA_TOL = 1e-4

_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def bob_gain(epsilon: float, eta: float, punishment: float) -> float:
    """Player's expected gain in reduced algebraic form.

    Equals 2*p1 + (R+1)*p3 - 1; the sqrt argument is clamped at zero so
    that rounding near epsilon = 1/2 cannot go negative.
    """
    root = math.sqrt(max(0.0, 0.25 - epsilon * epsilon))
    return (
        -eta
        - 2.0 * epsilon * (1.0 - eta)
        + (punishment + 1.0) * eta * (1.0 - 2.0 * root) / (1.0 + eta)
    )


def golden_section_min(
    f: Callable[[float], float], lo: float, hi: float, tol: float
) -> tuple[float, float]:
    """Minimize a unimodal function on [lo, hi].

    Returns (x, f(x)) with x within tol of the true minimizer; endpoint
    minima are handled by the shrinking bracket.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    if hi < lo:
        raise ValueError(f"empty bracket [{lo}, {hi}]")
    span = hi - lo
    c = hi - _INV_GOLDEN * span
    d = lo + _INV_GOLDEN * span
    fc, fd = f(c), f(d)
    while hi - lo > tol:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - _INV_GOLDEN * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + _INV_GOLDEN * (hi - lo)
            fd = f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


@dataclass(frozen=True)
class BestResponse:
    """Casino's minimizing bias and the player's gain it pins."""

    epsilon_star: float
    value: float


@dataclass(frozen=True)
class EquilibriumResult:
    """Player's maximin splitting parameter and the value it guarantees."""

    eta_tilde: float
    guaranteed_gain: float
    alice_best_epsilon: float
    tolerance: float


def alice_best_response(
    splitting: SplittingChoice, config: GameConfig, tol: float = EPSILON_TOL
) -> BestResponse:
    """Bias minimizing the player's expected gain at fixed eta.

    Convexity in epsilon makes the golden-section search over [0, 1/2]
    exact up to tol.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    eta = splitting.eta
    x, v = golden_section_min(
        lambda e: bob_gain(e, eta, config.punishment), 0.0, 0.5, tol
    )
    return BestResponse(epsilon_star=x, value=v)


def bob_optimal_eta(config: GameConfig, tol: float = ETA_TOL) -> EquilibriumResult:
    """Splitting parameter maximizing the player's worst-case gain.

    The outer maximization runs a 0.01-step grid over [0, 1] and refines
    the best cell with a golden-section search to tol; smoothness of the
    worst case in eta is not assumed beyond unimodality on the refined
    bracket.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")

    def worst_case(eta: float) -> float:
        return golden_section_min(
            lambda e: bob_gain(e, eta, config.punishment), 0.0, 0.5, EPSILON_TOL
        )[1]

    grid = [i / 100.0 for i in range(101)]
    best = max(range(101), key=lambda i: worst_case(grid[i]))
    lo = max(0.0, grid[best] - 0.01)
    hi = min(1.0, grid[best] + 0.01)
    eta_tilde, _ = golden_section_min(lambda t: -worst_case(t), lo, hi, tol)
    response = alice_best_response(SplittingChoice(eta_tilde), config)
    return EquilibriumResult(
        eta_tilde=eta_tilde,
        guaranteed_gain=response.value,
        alice_best_epsilon=response.epsilon_star,
        tolerance=tol,
    )


@dataclass(frozen=True)
class SweepTable:
    """Detector probabilities (and optionally gain) on an epsilon x eta grid.

    Value grids are row-major: rows follow epsilon_grid, columns eta_grid.
    """

    epsilon_grid: np.ndarray
    eta_grid: np.ndarray
    p1: np.ndarray
    p2: np.ndarray
    p3: np.ndarray
    gain: np.ndarray | None = None
    punishment: float | None = None

    def __post_init__(self):
        shape = (self.epsilon_grid.size, self.eta_grid.size)
        for name in ("p1", "p2", "p3"):
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} grid shape does not match the axes")
        if self.gain is not None and self.gain.shape != shape:
            raise ValueError("gain grid shape does not match the axes")


def _check_grids(epsilon_grid: np.ndarray, eta_grid: np.ndarray) -> None:
    if epsilon_grid.size < 2 or eta_grid.size < 2:
        raise ValueError("sweep grids need at least 2 points per axis")
    if epsilon_grid.min() < 0.0 or epsilon_grid.max() > 0.5:
        raise ValueError("epsilon grid must stay within [0, 0.5]")
    if eta_grid.min() < 0.0 or eta_grid.max() > 1.0:
        raise ValueError("eta grid must stay within [0, 1]")


def sweep_distribution(epsilon_grid, eta_grid) -> SweepTable:
    """Tabulate the outcome distribution over the Cartesian grid."""
    eps = np.asarray(epsilon_grid, dtype=float)
    eta = np.asarray(eta_grid, dtype=float)
    _check_grids(eps, eta)
    e = eps[:, None]
    h = eta[None, :]
    a = np.sqrt(0.5 + e)
    b = np.sqrt(0.5 - e)
    p1 = (0.5 - e) * (1.0 - h)
    p2 = (a + h * b) ** 2 / (1.0 + h)
    p3 = h * (a - b) ** 2 / (1.0 + h)
    return SweepTable(eps, eta, p1, p2, p3)


def sweep_gain(config: GameConfig, epsilon_grid, eta_grid) -> SweepTable:
    """Tabulate the player's expected gain over the Cartesian grid."""
    table = sweep_distribution(epsilon_grid, eta_grid)
    gain = (
        config.bet * table.p1
        + config.punishment * table.p3
        - config.bet * table.p2
    )
    return replace(table, gain=gain, punishment=config.punishment)
