"""Exact state mathematics of the two-box quantum gambling protocol.

The casino (Alice) prepares a particle in a superposition over boxes A
and B; box B is handed to the player (Bob), who may coherently divert a
fraction of its amplitude into a flag state |b'> before opening it.  If
the particle is not found in B, a projective measurement on the leftover
superposition of |a> and |b'> either confirms an unbiased preparation or
flags a biased one, in which case the player collects the agreed
punishment.

Everything in this module is closed-form real arithmetic over the basis
{|a>, |b>, |b'>}, using the non-negative amplitude convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PreparationChoice",
    "SplittingChoice",
    "GameConfig",
    "ProtocolState",
    "VerificationBasis",
    "OutcomeDistribution",
    "prepare",
    "split",
    "collapse_after_no_click",
    "verification_basis",
    "outcome_distribution",
    "outcome_distribution_statevector",
    "expected_gain",
    "alice_expected_gain",
]

NORM_TOL = 1e-12
# hand-entered states printed to a few decimals may be this far off unit
# norm; anything worse is treated as a caller bug
_CONSTRUCT_TOL = 1e-4


@dataclass(frozen=True)
class PreparationChoice:
    """Casino-side bias of the box superposition, epsilon in [0, 1/2]."""

    epsilon: float

    def __post_init__(self):
        if not 0.0 <= self.epsilon <= 0.5:
            raise ValueError(
                f"epsilon must be within [0, 0.5], got {self.epsilon}"
            )


@dataclass(frozen=True)
class SplittingChoice:
    """Player-side fraction of |b> amplitude diverted into the flag state."""

    eta: float

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must be within [0, 1], got {self.eta}")


@dataclass(frozen=True)
class GameConfig:
    """Agreed stakes: punishment coins on a flag, a fixed one-coin bet."""

    punishment: float
    bet: float = 1.0

    def __post_init__(self):
        if not self.punishment > 0.0:
            raise ValueError(
                f"punishment must be positive, got {self.punishment}"
            )
        if self.bet != 1.0:
            raise ValueError(f"bet is fixed at one coin, got {self.bet}")


@dataclass(frozen=True)
class ProtocolState:
    """Real non-negative amplitudes over the basis {|a>, |b>, |b'>}.

    Construction renormalizes inputs that are slightly off unit norm
    (within 1e-4) and rejects anything worse, so every stored state is
    normalized to 1e-12.
    """

    amp_a: float
    amp_b: float
    amp_bprime: float

    def __post_init__(self):
        amps = (self.amp_a, self.amp_b, self.amp_bprime)
        if any(a < 0.0 for a in amps):
            raise ValueError(f"amplitudes must be non-negative, got {amps}")
        norm = math.sqrt(sum(a * a for a in amps))
        if abs(norm - 1.0) > _CONSTRUCT_TOL:
            raise ValueError(f"state norm {norm} is too far from 1")
        if abs(norm - 1.0) > NORM_TOL:
            object.__setattr__(self, "amp_a", self.amp_a / norm)
            object.__setattr__(self, "amp_b", self.amp_b / norm)
            object.__setattr__(self, "amp_bprime", self.amp_bprime / norm)

    def norm(self) -> float:
        return math.sqrt(
            self.amp_a**2 + self.amp_b**2 + self.amp_bprime**2
        )


@dataclass(frozen=True)
class VerificationBasis:
    """Orthonormal pair {|phi_a>, |phi_b>} on span{|a>, |b'>}."""

    phi_a: tuple[float, float]
    phi_b: tuple[float, float]

    def __post_init__(self):
        for name, vec in (("phi_a", self.phi_a), ("phi_b", self.phi_b)):
            if abs(math.hypot(*vec) - 1.0) > NORM_TOL:
                raise ValueError(f"{name} is not normalized: {vec}")
        dot = (
            self.phi_a[0] * self.phi_b[0] + self.phi_a[1] * self.phi_b[1]
        )
        if abs(dot) > NORM_TOL:
            raise ValueError(f"phi_a and phi_b are not orthogonal: {dot}")


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities of detectors D1, D2, D3.

    D1: the player finds the particle in box B and wins the bet.
    D2: the verification passes and the player loses the bet.
    D3: the verification flags the preparation and the player wins the
        punishment.
    """

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name, p in (("p1", self.p1), ("p2", self.p2), ("p3", self.p3)):
            if not -NORM_TOL <= p <= 1.0 + NORM_TOL:
                raise ValueError(f"{name} out of [0, 1]: {p}")
        total = self.p1 + self.p2 + self.p3
        if abs(total - 1.0) > NORM_TOL:
            raise ValueError(f"probabilities sum to {total}, not 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.p1, self.p2, self.p3)


def prepare(choice: PreparationChoice) -> ProtocolState:
    """Superpose the particle over the boxes with the chosen bias.

    Amplitudes are sqrt(1/2 + epsilon) on |a> and sqrt(1/2 - epsilon)
    on |b>; epsilon = 0 is the unbiased, honest preparation.
    """
    return ProtocolState(
        math.sqrt(0.5 + choice.epsilon),
        math.sqrt(0.5 - choice.epsilon),
        0.0,
    )


def split(state: ProtocolState, choice: SplittingChoice) -> ProtocolState:
    """Divert a sqrt(eta) fraction of the |b> amplitude into |b'>.

    Applies once, to a freshly prepared state; a state that already
    carries flag amplitude is rejected.
    """
    if state.amp_bprime != 0.0:
        raise ValueError("state was already split: amp_bprime must be zero")
    return ProtocolState(
        state.amp_a,
        math.sqrt(1.0 - choice.eta) * state.amp_b,
        math.sqrt(choice.eta) * state.amp_b,
    )


def collapse_after_no_click(state: ProtocolState) -> tuple[float, float]:
    """Conditional state over {|a>, |b'>} given the particle is not in B."""
    norm = math.hypot(state.amp_a, state.amp_bprime)
    if norm == 0.0:
        raise ValueError(
            "impossible post-selection: state has no amplitude outside |b>"
        )
    return (state.amp_a / norm, state.amp_bprime / norm)


def verification_basis(choice: SplittingChoice) -> VerificationBasis:
    """Measurement basis separating honest from biased preparations.

    |phi_a> = (1, sqrt(eta)) / sqrt(1 + eta) is the no-click state under
    an unbiased preparation; |phi_b> = (sqrt(eta), -1) / sqrt(1 + eta) is
    its orthogonal complement (sign convention fixed here), so a |phi_b>
    outcome in the noiseless protocol witnesses cheating.
    """
    s = math.sqrt(choice.eta)
    n = math.sqrt(1.0 + choice.eta)
    return VerificationBasis(
        phi_a=(1.0 / n, s / n),
        phi_b=(s / n, -1.0 / n),
    )


def _distribution(epsilon: float, eta: float) -> tuple[float, float, float]:
    # unchecked fast path shared by sweeps and Monte Carlo sessions
    a = math.sqrt(0.5 + epsilon)
    b = math.sqrt(0.5 - epsilon)
    p1 = (0.5 - epsilon) * (1.0 - eta)
    p2 = (a + eta * b) ** 2 / (1.0 + eta)
    p3 = eta * (a - b) ** 2 / (1.0 + eta)
    return (p1, p2, p3)


def outcome_distribution(
    prep: PreparationChoice, splitting: SplittingChoice
) -> OutcomeDistribution:
    """Detector probabilities in closed form.

    p1 = (1/2 - epsilon)(1 - eta)
    p2 = (sqrt(1/2 + epsilon) + eta sqrt(1/2 - epsilon))^2 / (1 + eta)
    p3 = eta (sqrt(1/2 + epsilon) - sqrt(1/2 - epsilon))^2 / (1 + eta)

    The three formulas are independent; they sum to one identically.
    """
    return OutcomeDistribution(*_distribution(prep.epsilon, splitting.eta))


def outcome_distribution_statevector(
    prep: PreparationChoice, splitting: SplittingChoice
) -> OutcomeDistribution:
    """Detector probabilities rebuilt step by step from the state vector.

    Authoritative cross-check for the closed forms: prepare, split, read
    p1 off the |b> amplitude, collapse on no click, then project onto the
    verification basis.
    """
    state = split(prepare(prep), splitting)
    p1 = state.amp_b**2
    psi = collapse_after_no_click(state)
    basis = verification_basis(splitting)
    no_click = 1.0 - p1
    p2 = no_click * (basis.phi_a[0] * psi[0] + basis.phi_a[1] * psi[1]) ** 2
    p3 = no_click * (basis.phi_b[0] * psi[0] + basis.phi_b[1] * psi[1]) ** 2
    return OutcomeDistribution(p1, p2, p3)


def expected_gain(
    prep: PreparationChoice, splitting: SplittingChoice, config: GameConfig
) -> float:
    """Player's expected coins per round; the casino's is the negation."""
    p1, p2, p3 = _distribution(prep.epsilon, splitting.eta)
    return config.bet * p1 + config.punishment * p3 - config.bet * p2


def alice_expected_gain(
    prep: PreparationChoice, splitting: SplittingChoice, config: GameConfig
) -> float:
    """Casino's expected coins per round (the game is zero-sum)."""
    return -expected_gain(prep, splitting, config)
