"""Seeded Monte Carlo gambling sessions and statistical cheat detection.

Sessions are pure functions of (strategies, config, rounds, seed): one
PCG64 generator per session, one uniform draw per round, and a fixed
(D1, D2, D3) cumulative order turning the draw into a detector click.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy import stats

from .equilibrium import bob_optimal_eta
from .optics import NoiseModel, angles_for, run_circuit
from .protocol import (
    GameConfig,
    PreparationChoice,
    SplittingChoice,
    _distribution,
)

__all__ = [
    "DETECTORS",
    "Strategy",
    "RoundOutcome",
    "SessionLedger",
    "SessionSummary",
    "CheatTestResult",
    "payoff_for",
    "play_round",
    "round_probabilities",
    "run_session",
    "summarize",
    "detect_cheating",
    "cheat_detection_power",
]

DETECTORS = ("D1", "D2", "D3")

ROLES = ("alice", "bob")
_POLICY_KINDS = ("fixed", "equilibrium", "schedule")


def payoff_for(detector: str, config: GameConfig) -> float:
    """Player's coins for a click: D1 wins the bet, D2 loses it, D3 wins R."""
    if detector == "D1":
        return config.bet
    if detector == "D2":
        return -config.bet
    if detector == "D3":
        return config.punishment
    raise ValueError(f"unknown detector {detector!r}")


def _validate_parameter(role: str, value: float) -> float:
    if role == "alice":
        PreparationChoice(value)
    else:
        SplittingChoice(value)
    return value


@lru_cache(maxsize=None)
def _equilibrium_parameters(punishment: float) -> tuple[float, float]:
    result = bob_optimal_eta(GameConfig(punishment))
    return result.eta_tilde, result.alice_best_epsilon


@dataclass(frozen=True)
class Strategy:
    """Per-round parameter policy for one role.

    ``fixed`` repeats one value, ``equilibrium`` plays the maximin
    parameter for the session's punishment (the casino side plays its
    best response to it), and ``schedule`` follows an explicit list.
    """

    role: str
    kind: str
    value: float | None = None
    values: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")
        if self.kind not in _POLICY_KINDS:
            raise ValueError(f"unknown policy kind {self.kind!r}")
        if self.kind == "fixed":
            if self.value is None:
                raise ValueError("fixed policy needs a value")
            _validate_parameter(self.role, self.value)
        if self.kind == "schedule":
            if not self.values:
                raise ValueError("schedule policy needs values")
            for v in self.values:
                _validate_parameter(self.role, v)

    @classmethod
    def fixed(cls, role: str, value: float) -> "Strategy":
        return cls(role=role, kind="fixed", value=value)

    @classmethod
    def equilibrium(cls, role: str) -> "Strategy":
        return cls(role=role, kind="equilibrium")

    @classmethod
    def schedule(cls, role: str, values) -> "Strategy":
        return cls(role=role, kind="schedule", values=tuple(values))

    @classmethod
    def parse(cls, role: str, text: str) -> "Strategy":
        """Parse a policy string: fair | equilibrium | fixed:<v> | cheat:<v>."""
        if text == "fair":
            return cls.fixed(role, 0.0)
        if text == "equilibrium":
            return cls.equilibrium(role)
        if text.startswith("fixed:"):
            return cls.fixed(role, float(text.split(":", 1)[1]))
        if text.startswith("cheat:"):
            if role != "alice":
                raise ValueError("cheat policy applies to the alice role only")
            return cls.fixed(role, float(text.split(":", 1)[1]))
        raise ValueError(
            f"unknown policy {text!r}: expected fair, equilibrium, "
            "fixed:<value> or cheat:<value>"
        )

    def parameter(self, round_index: int, config: GameConfig) -> float:
        """Parameter this strategy plays in the given round."""
        if self.kind == "fixed":
            return self.value
        if self.kind == "equilibrium":
            eta_tilde, epsilon_star = _equilibrium_parameters(config.punishment)
            return eta_tilde if self.role == "bob" else epsilon_star
        if round_index >= len(self.values):
            raise ValueError(
                f"schedule has {len(self.values)} values, round "
                f"{round_index} requested"
            )
        return self.values[round_index]


@dataclass(frozen=True)
class RoundOutcome:
    """One resolved round: which detector fired and what it paid."""

    round_index: int
    epsilon_used: float
    eta_used: float
    detector: str
    payoff: float


@dataclass
class SessionLedger:
    """Ordered record of rounds with the player's running bankroll."""

    config: GameConfig
    seed: int
    rounds: list[RoundOutcome] = field(default_factory=list)
    bankroll: list[float] = field(default_factory=list)

    def append(self, outcome: RoundOutcome) -> None:
        previous = self.bankroll[-1] if self.bankroll else 0.0
        self.rounds.append(outcome)
        self.bankroll.append(previous + outcome.payoff)

    @property
    def n_rounds(self) -> int:
        return len(self.rounds)

    @property
    def final_bankroll(self) -> float:
        return self.bankroll[-1] if self.bankroll else 0.0

    def detector_counts(self) -> dict[str, int]:
        counts = {d: 0 for d in DETECTORS}
        for outcome in self.rounds:
            counts[outcome.detector] += 1
        return counts


def _pick_detector(p1: float, p2: float, draw: float) -> str:
    # fixed cumulative order (D1, D2, D3)
    if draw < p1:
        return "D1"
    if draw < p1 + p2:
        return "D2"
    return "D3"


def round_probabilities(
    epsilon: float, eta: float, noise: NoiseModel | None = None
) -> tuple[float, float, float]:
    """Per-round detector probabilities, optionally degraded by dephasing."""
    prep = PreparationChoice(epsilon)
    splitting = SplittingChoice(eta)
    if noise is None or noise.error_rate == 0.0:
        return _distribution(epsilon, eta)
    return run_circuit(angles_for(prep, splitting), noise).as_tuple()


def play_round(
    epsilon: float,
    eta: float,
    config: GameConfig,
    rng_draw: float,
    round_index: int = 0,
) -> RoundOutcome:
    """Resolve one noiseless round from a uniform draw in [0, 1)."""
    if not 0.0 <= rng_draw < 1.0:
        raise ValueError(f"rng_draw must be within [0, 1), got {rng_draw}")
    PreparationChoice(epsilon)
    SplittingChoice(eta)
    p1, p2, _ = _distribution(epsilon, eta)
    detector = _pick_detector(p1, p2, rng_draw)
    return RoundOutcome(
        round_index=round_index,
        epsilon_used=epsilon,
        eta_used=eta,
        detector=detector,
        payoff=payoff_for(detector, config),
    )


def run_session(
    alice: Strategy,
    bob: Strategy,
    config: GameConfig,
    n_rounds: int,
    seed: int,
    noise: NoiseModel | None = None,
) -> SessionLedger:
    """Play a seeded session; identical inputs give identical ledgers."""
    if alice.role != "alice" or bob.role != "bob":
        raise ValueError("strategies passed with swapped or wrong roles")
    if n_rounds < 1:
        raise ValueError(f"n_rounds must be at least 1, got {n_rounds}")
    rng = np.random.default_rng(seed)
    ledger = SessionLedger(config=config, seed=seed)
    cached_params = None
    probs = None
    for k in range(n_rounds):
        epsilon = alice.parameter(k, config)
        eta = bob.parameter(k, config)
        if (epsilon, eta) != cached_params:
            probs = round_probabilities(epsilon, eta, noise)
            cached_params = (epsilon, eta)
        detector = _pick_detector(probs[0], probs[1], rng.random())
        ledger.append(
            RoundOutcome(
                round_index=k,
                epsilon_used=epsilon,
                eta_used=eta,
                detector=detector,
                payoff=payoff_for(detector, config),
            )
        )
    return ledger


@dataclass(frozen=True)
class SessionSummary:
    """Empirical statistics of a finished session."""

    n_rounds: int
    p1_hat: float
    p2_hat: float
    p3_hat: float
    mean_gain: float
    std_error: float
    final_bankroll: float
    bankroll_min: float
    bankroll_max: float


def summarize(ledger: SessionLedger) -> SessionSummary:
    """Frequencies, mean gain with its standard error, bankroll extremes."""
    n = ledger.n_rounds
    if n == 0:
        raise ValueError("cannot summarize an empty ledger")
    counts = ledger.detector_counts()
    payoffs = np.array([r.payoff for r in ledger.rounds])
    std_error = float(payoffs.std(ddof=1) / np.sqrt(n)) if n > 1 else 0.0
    return SessionSummary(
        n_rounds=n,
        p1_hat=counts["D1"] / n,
        p2_hat=counts["D2"] / n,
        p3_hat=counts["D3"] / n,
        mean_gain=float(payoffs.mean()),
        std_error=std_error,
        final_bankroll=ledger.final_bankroll,
        bankroll_min=min(ledger.bankroll),
        bankroll_max=max(ledger.bankroll),
    )


@dataclass(frozen=True)
class CheatTestResult:
    """One-sided binomial test of the D3 count against the noise rate."""

    d3_count: int
    rounds_observed: int
    expected_noise_rate: float
    p_value: float
    significance: float
    flagged: bool


def detect_cheating(
    ledger: SessionLedger,
    eta_used: float,
    noise: NoiseModel,
    significance: float = 0.01,
) -> CheatTestResult:
    """Test whether the casino's preparation was biased.

    Null hypothesis: honest play (epsilon = 0), under which D3 fires only
    through dephasing, at the rate the bench model predicts.  The test is
    one-sided since bias can only raise the D3 rate.  With zero noise a
    single D3 click is a probability-zero event and flags immediately.
    """
    if not 0.0 < significance < 1.0:
        raise ValueError(
            f"significance must be within (0, 1), got {significance}"
        )
    if ledger.n_rounds == 0:
        raise ValueError("cannot test an empty ledger")
    etas = {r.eta_used for r in ledger.rounds}
    if etas != {eta_used}:
        raise ValueError(
            f"ledger used eta values {sorted(etas)}, expected only {eta_used}"
        )
    n = ledger.n_rounds
    k = ledger.detector_counts()["D3"]
    if noise.error_rate == 0.0:
        rate = 0.0
        p_value = 1.0 if k == 0 else 0.0
    else:
        rate = run_circuit(
            angles_for(PreparationChoice(0.0), SplittingChoice(eta_used)),
            noise,
        ).d3
        p_value = 1.0 if k == 0 else float(stats.binom.sf(k - 1, n, rate))
    return CheatTestResult(
        d3_count=k,
        rounds_observed=n,
        expected_noise_rate=rate,
        p_value=p_value,
        significance=significance,
        flagged=p_value < significance,
    )


def cheat_detection_power(
    epsilon_cheat: float,
    eta: float,
    config: GameConfig,
    noise: NoiseModel,
    n_rounds: int,
    n_replications: int,
    seed: int,
    significance: float = 0.01,
) -> float:
    """Fraction of seeded sessions in which a biased preparation is flagged."""
    alice = Strategy.fixed("alice", epsilon_cheat)
    bob = Strategy.fixed("bob", eta)
    rng = np.random.default_rng(seed)
    session_seeds = rng.integers(0, 2**63, size=n_replications)
    flags = 0
    for s in session_seeds:
        ledger = run_session(alice, bob, config, n_rounds, int(s), noise)
        if detect_cheating(ledger, eta, noise, significance).flagged:
            flags += 1
    return flags / n_replications
