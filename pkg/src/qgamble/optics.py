"""Jones-calculus model of the tabletop gambling interferometer.

A single photon carries the protocol on two degrees of freedom: its path
plays the role of the boxes and its polarization distinguishes the flag
state.  Half waveplates set the preparation bias and the splitting
fraction; polarizing beamsplitters route H and V onto separate paths.
The merge of the box-A arm with the split-out component interferes, and
a one-parameter dephasing model degrades exactly that interference.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .protocol import GameConfig, PreparationChoice, SplittingChoice

__all__ = [
    "ModeState",
    "CircuitSettings",
    "NoiseModel",
    "DetectorDistribution",
    "hwp_jones",
    "angles_for",
    "run_circuit",
    "error_threshold",
    "max_punishment",
    "PATHS",
    "H",
    "V",
]

PATHS = ("P0", "Pa", "Pb", "Pm")
P0, PA, PB, PM = range(4)
H, V = 0, 1

_PROB_TOL = 1e-12


def hwp_jones(theta: float) -> np.ndarray:
    """Half-waveplate matrix on (H, V) amplitudes, fast axis at theta.

    [[cos 2t, sin 2t], [sin 2t, -cos 2t]]: orthogonal and involutive.
    """
    c = math.cos(2.0 * theta)
    s = math.sin(2.0 * theta)
    return np.array([[c, s], [s, -c]])


@dataclass(frozen=True)
class CircuitSettings:
    """Fast-axis angles (radians) of the three adjustable waveplates."""

    theta_a: float
    theta_b1: float
    theta_b2: float

    def __post_init__(self):
        for name in ("theta_a", "theta_b1", "theta_b2"):
            value = getattr(self, name)
            if not 0.0 <= value <= math.pi / 2.0:
                raise ValueError(f"{name} must be within [0, pi/2], got {value}")


@dataclass(frozen=True)
class NoiseModel:
    """Dephasing rate: the probability that the merged arms add incoherently."""

    error_rate: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.error_rate <= 1.0:
            raise ValueError(
                f"error_rate must be within [0, 1], got {self.error_rate}"
            )


@dataclass(frozen=True)
class DetectorDistribution:
    """Click probabilities of detectors D1, D2, D3."""

    d1: float
    d2: float
    d3: float

    def __post_init__(self):
        for name, p in (("d1", self.d1), ("d2", self.d2), ("d3", self.d3)):
            if not -_PROB_TOL <= p <= 1.0 + _PROB_TOL:
                raise ValueError(f"{name} out of [0, 1]: {p}")
        total = self.d1 + self.d2 + self.d3
        if abs(total - 1.0) > _PROB_TOL:
            raise ValueError(f"detector probabilities sum to {total}, not 1")

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.d1, self.d2, self.d3)


@dataclass
class ModeState:
    """Complex amplitudes over (path, polarization) plus detected probability.

    ``amplitudes[path, pol]`` indexes the live modes; ``detected`` holds
    probability already routed into a detector, so the total stays 1 at
    every stage.
    """

    amplitudes: np.ndarray
    detected: float = 0.0

    @classmethod
    def source(cls) -> "ModeState":
        """Photon fresh off the polarizer: V on the input path."""
        amps = np.zeros((len(PATHS), 2), dtype=complex)
        amps[P0, V] = 1.0
        return cls(amps)

    def total_probability(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2)) + self.detected

    def _check(self) -> None:
        total = self.total_probability()
        if abs(total - 1.0) > _PROB_TOL:
            raise AssertionError(
                f"optical element leaked probability: total {total}"
            )

    def apply_hwp(self, path: int, theta: float) -> None:
        self.amplitudes[path] = hwp_jones(theta) @ self.amplitudes[path]
        self._check()

    def route(self, src: int, pol: int, dst: int, dst_pol: int) -> None:
        """Lossless beamsplitter port: move one mode onto another path."""
        if self.amplitudes[dst, dst_pol] != 0.0:
            raise AssertionError("routing onto an occupied mode")
        self.amplitudes[dst, dst_pol] = self.amplitudes[src, pol]
        self.amplitudes[src, pol] = 0.0
        self._check()

    def detect(self, path: int, pol: int) -> float:
        """Absorb one mode into a detector; returns the click probability."""
        p = float(abs(self.amplitudes[path, pol]) ** 2)
        self.amplitudes[path, pol] = 0.0
        self.detected += p
        self._check()
        return p


def angles_for(
    prep: PreparationChoice, splitting: SplittingChoice
) -> CircuitSettings:
    """Waveplate angles that realize a given (epsilon, eta) on the bench.

    With a V-polarized source and H-transmitting beamsplitters:
    theta_a = arcsin(sqrt(1/2 + epsilon)) / 2 sets the preparation,
    theta_b1 = arcsin(sqrt(eta)) / 2 sets the split, and
    theta_b2 = arctan(sqrt(eta)) / 2 rotates the verification basis onto
    the output beamsplitter axes.
    """
    return CircuitSettings(
        theta_a=0.5 * math.asin(math.sqrt(0.5 + prep.epsilon)),
        theta_b1=0.5 * math.asin(math.sqrt(splitting.eta)),
        theta_b2=0.5 * math.atan(math.sqrt(splitting.eta)),
    )


def run_circuit(
    settings: CircuitSettings, noise: NoiseModel = NoiseModel()
) -> DetectorDistribution:
    """Propagate one photon through the bench.

    Stages: source polarizer (V) -> HWP(theta_a) -> PBS1 (H transmits to
    the box-A arm, V reflects to the box-B arm) -> fixed half waveplate
    on the box-B arm restoring H -> HWP(theta_b1) -> PBS2 (H clicks D1,
    V heads to the merge) -> PBS3 (box-A arm joins the split-out V
    component on the merged path) -> HWP(theta_b2) -> PBS4 (H clicks D2,
    V clicks D3).

    Dephasing with rate e leaves d1 untouched and mixes the merge:
    (d2, d3) = (1 - e) * coherent + e * incoherent, the incoherent term
    pushing the two merged contributions through HWP(theta_b2)/PBS4
    separately and adding probabilities.
    """
    state = ModeState.source()
    state.apply_hwp(P0, settings.theta_a)
    # PBS1: H transmits to the box-A arm, V reflects to the box-B arm
    state.route(P0, H, PA, H)
    state.route(P0, V, PB, V)
    # Fixed half waveplate at -45 deg: swaps V onto H on the box-B arm
    # with a positive amplitude.  The +45 deg branch would flip the sign
    # that the merge interference depends on.
    state.apply_hwp(PB, -math.pi / 4.0)
    state.apply_hwp(PB, settings.theta_b1)
    # PBS2: the H component is the particle found in box B
    d1 = state.detect(PB, H)
    # PBS3: merge the box-A arm with the split-out V component
    state.route(PA, H, PM, H)
    state.route(PB, V, PM, V)

    merged = state.amplitudes[PM].copy()
    plate = hwp_jones(settings.theta_b2)
    out = plate @ merged
    d2_coherent = float(abs(out[H]) ** 2)
    d3_coherent = float(abs(out[V]) ** 2)
    # incoherent mix: each merged contribution meets PBS4 on its own
    d2_incoherent = float(
        abs(plate[H, H] * merged[H]) ** 2 + abs(plate[H, V] * merged[V]) ** 2
    )
    d3_incoherent = float(
        abs(plate[V, H] * merged[H]) ** 2 + abs(plate[V, V] * merged[V]) ** 2
    )
    e = noise.error_rate
    d2 = (1.0 - e) * d2_coherent + e * d2_incoherent
    d3 = (1.0 - e) * d3_coherent + e * d3_incoherent
    total = d1 + d2 + d3
    if abs(total - 1.0) > _PROB_TOL:
        raise AssertionError(f"detector probabilities leaked: total {total}")
    return DetectorDistribution(d1, d2, d3)


def error_threshold(config: GameConfig) -> float:
    """Largest tolerable error rate for a given punishment: sqrt(2/R^3)."""
    return math.sqrt(2.0 / config.punishment**3)


def max_punishment(noise: NoiseModel) -> float:
    """Largest punishment a bench with the given error rate supports.

    Inverts the threshold: (2/e^2)^(1/3).  A zero error rate imposes no
    bound at all, which is signaled as an error rather than a number.
    """
    if noise.error_rate == 0.0:
        raise ValueError(
            "error_rate 0 places no constraint on the punishment"
        )
    return (2.0 / noise.error_rate**2) ** (1.0 / 3.0)
