import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from pytest import approx

from qgamble.optics import (
    CircuitSettings,
    DetectorDistribution,
    ModeState,
    NoiseModel,
    angles_for,
    error_threshold,
    hwp_jones,
    max_punishment,
    run_circuit,
)
from qgamble.protocol import (
    GameConfig,
    PreparationChoice,
    SplittingChoice,
    outcome_distribution,
)

angles = st.floats(min_value=0.0, max_value=math.pi / 2, allow_nan=False)


def circuit_distribution(epsilon, eta, error_rate=0.0):
    return run_circuit(
        angles_for(PreparationChoice(epsilon), SplittingChoice(eta)),
        NoiseModel(error_rate),
    )


# --- waveplate matrix ---


def test_hwp_fast_axis_along_h():
    assert hwp_jones(0.0) == approx(np.diag([1.0, -1.0]), abs=1e-12)


def test_hwp_at_45_degrees_swaps_polarizations():
    assert hwp_jones(math.pi / 4) == approx(
        np.array([[0.0, 1.0], [1.0, 0.0]]), abs=1e-12
    )


def test_hwp_at_22p5_degrees():
    expected = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    assert hwp_jones(math.pi / 8) == approx(expected, abs=1e-12)


@given(st.floats(min_value=-math.pi, max_value=math.pi, allow_nan=False))
def test_hwp_orthogonal_and_involutive(theta):
    m = hwp_jones(theta)
    assert m @ m.T == approx(np.eye(2), abs=1e-12)
    assert m @ m == approx(np.eye(2), abs=1e-12)


# --- settings and angle solver ---


def test_circuit_settings_domain():
    CircuitSettings(0.0, math.pi / 4, math.pi / 2)
    with pytest.raises(ValueError, match="theta_b1"):
        CircuitSettings(0.0, -0.1, 0.0)
    with pytest.raises(ValueError, match="theta_a"):
        CircuitSettings(2.0, 0.0, 0.0)


def test_noise_model_domain():
    NoiseModel(0.0)
    NoiseModel(1.0)
    with pytest.raises(ValueError, match="error_rate"):
        NoiseModel(1.5)


def test_angles_all_to_box_a_no_split():
    s = angles_for(PreparationChoice(0.5), SplittingChoice(0.0))
    assert math.degrees(s.theta_a) == approx(45.0, abs=1e-9)
    assert math.degrees(s.theta_b1) == approx(0.0, abs=1e-12)
    assert math.degrees(s.theta_b2) == approx(0.0, abs=1e-12)


def test_angles_equal_superposition_full_split():
    s = angles_for(PreparationChoice(0.0), SplittingChoice(1.0))
    assert math.degrees(s.theta_a) == approx(22.5, abs=1e-9)
    assert math.degrees(s.theta_b1) == approx(45.0, abs=1e-9)
    assert math.degrees(s.theta_b2) == approx(22.5, abs=1e-9)


def test_angles_half_split():
    s = angles_for(PreparationChoice(0.0), SplittingChoice(0.5))
    assert math.degrees(s.theta_a) == approx(22.5, abs=1e-9)
    assert math.degrees(s.theta_b1) == approx(22.5, abs=1e-9)
    assert s.theta_b2 == approx(0.5 * math.atan(math.sqrt(0.5)), abs=1e-12)
    assert math.degrees(s.theta_b2) == approx(17.632, abs=1e-3)


# --- circuit propagation ---


def test_source_state_is_single_v_photon():
    state = ModeState.source()
    assert state.total_probability() == approx(1.0, abs=1e-15)
    assert state.amplitudes[0, 1] == 1.0


def test_circuit_matches_closed_form_at_optimal_eta():
    d = circuit_distribution(0.0, 0.27)
    assert d.d1 == approx(0.365, abs=1e-10)
    assert d.d2 == approx(0.635, abs=1e-10)
    assert d.d3 == approx(0.0, abs=1e-10)


def test_circuit_matches_closed_form_full_bias():
    d = circuit_distribution(0.5, 0.5)
    assert d.d1 == approx(0.0, abs=1e-10)
    assert d.d2 == approx(2.0 / 3.0, abs=1e-10)
    assert d.d3 == approx(1.0 / 3.0, abs=1e-10)


def test_circuit_equals_protocol_on_grid():
    for epsilon in np.linspace(0.0, 0.5, 21):
        for eta in np.linspace(0.0, 1.0, 21):
            d = circuit_distribution(float(epsilon), float(eta))
            p = outcome_distribution(
                PreparationChoice(float(epsilon)), SplittingChoice(float(eta))
            )
            assert d.d1 == approx(p.p1, abs=1e-10)
            assert d.d2 == approx(p.p2, abs=1e-10)
            assert d.d3 == approx(p.p3, abs=1e-10)


def test_full_dephasing_destroys_the_interference():
    # with no coherence left, honest play still trips D3 at eta/(1+eta)
    d = circuit_distribution(0.0, 0.27, error_rate=1.0)
    assert d.d3 == approx(0.27 / 1.27, abs=1e-12)
    assert d.d1 == approx(0.365, abs=1e-12)


def test_detector_distribution_affine_in_error_rate():
    settings = angles_for(PreparationChoice(0.2), SplittingChoice(0.4))
    ideal = run_circuit(settings, NoiseModel(0.0))
    broken = run_circuit(settings, NoiseModel(1.0))
    for e in (0.1, 0.25, 0.5, 0.9):
        d = run_circuit(settings, NoiseModel(e))
        assert d.d1 == approx(ideal.d1, abs=1e-12)
        assert d.d2 == approx((1 - e) * ideal.d2 + e * broken.d2, abs=1e-12)
        assert d.d3 == approx((1 - e) * ideal.d3 + e * broken.d3, abs=1e-12)


@given(angles, angles, angles)
def test_circuit_conserves_probability(theta_a, theta_b1, theta_b2):
    d = run_circuit(CircuitSettings(theta_a, theta_b1, theta_b2))
    assert d.d1 + d.d2 + d.d3 == approx(1.0, abs=1e-12)


# --- error bounds ---


def test_error_threshold_values():
    assert error_threshold(GameConfig(5.0)) == approx(
        math.sqrt(2.0 / 125.0), abs=1e-12
    )
    assert error_threshold(GameConfig(2.0)) == approx(0.5, abs=1e-12)
    assert error_threshold(GameConfig(14.4)) == approx(0.0258804, abs=1e-6)


def test_max_punishment_values():
    assert max_punishment(NoiseModel(0.5)) == approx(2.0, abs=1e-12)
    assert max_punishment(NoiseModel(1.0 / 40.0)) == approx(
        14.7361260, abs=1e-6
    )
    assert max_punishment(NoiseModel(0.1264911)) == approx(5.0, abs=1e-5)


def test_max_punishment_zero_error_rate_signals_no_constraint():
    with pytest.raises(ValueError, match="no constraint"):
        max_punishment(NoiseModel(0.0))


def test_threshold_and_punishment_are_inverses():
    for punishment in (2.0, 5.0, 10.0):
        e = error_threshold(GameConfig(punishment))
        assert max_punishment(NoiseModel(e)) == approx(punishment, abs=1e-9)
