"""Quantum gambling table: protocol math, strategies, optics, and sessions."""

from .protocol import (
    GameConfig,
    OutcomeDistribution,
    PreparationChoice,
    ProtocolState,
    SplittingChoice,
    VerificationBasis,
    alice_expected_gain,
    collapse_after_no_click,
    expected_gain,
    outcome_distribution,
    outcome_distribution_statevector,
    prepare,
    split,
    verification_basis,
)

__version__ = "0.1.0"
