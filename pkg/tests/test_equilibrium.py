import numpy as np
import pytest
from pytest import approx

from qgamble.equilibrium import (
    SweepTable,
    alice_best_response,
    bob_gain,
    bob_optimal_eta,
    golden_section_min,
    sweep_distribution,
    sweep_gain,
)
from qgamble.protocol import (
    GameConfig,
    PreparationChoice,
    SplittingChoice,
    expected_gain,
)

R5 = GameConfig(5.0)


def grid_scan_best_response(eta, punishment, step=1e-5):
    """Independent oracle: dense grid over epsilon."""
    eps = np.arange(0.0, 0.5 + step / 2, step)
    a = np.sqrt(0.5 + eps)
    b = np.sqrt(0.5 - eps)
    p1 = (0.5 - eps) * (1.0 - eta)
    p3 = eta * (a - b) ** 2 / (1.0 + eta)
    gain = 2.0 * p1 + (punishment + 1.0) * p3 - 1.0
    i = int(np.argmin(gain))
    return float(eps[i]), float(gain[i])


# --- golden section search ---


def test_golden_section_interior_minimum():
    x, fx = golden_section_min(lambda x: (x - 0.3) ** 2, 0.0, 1.0, 1e-8)
    assert x == approx(0.3, abs=1e-7)
    assert fx == approx(0.0, abs=1e-12)


def test_golden_section_endpoint_minimum():
    x, _ = golden_section_min(lambda x: x, 0.0, 1.0, 1e-8)
    assert x == approx(0.0, abs=1e-7)


def test_golden_section_rejects_bad_tol():
    with pytest.raises(ValueError, match="tol"):
        golden_section_min(lambda x: x, 0.0, 1.0, 0.0)


# --- reduced gain form ---


def test_bob_gain_matches_distribution_form():
    rng = np.random.default_rng(7)
    for _ in range(200):
        epsilon = float(rng.uniform(0.0, 0.5))
        eta = float(rng.uniform(0.0, 1.0))
        punishment = float(rng.uniform(0.5, 20.0))
        via_dist = expected_gain(
            PreparationChoice(epsilon),
            SplittingChoice(eta),
            GameConfig(punishment),
        )
        assert bob_gain(epsilon, eta, punishment) == approx(
            via_dist, abs=1e-12
        )


def test_bob_gain_convex_in_epsilon():
    # nonnegative second differences on a fine grid
    eps = np.linspace(0.0, 0.5, 2001)
    for eta in (0.1, 0.27, 0.9):
        for punishment in (2.0, 5.0, 10.0):
            g = np.array([bob_gain(e, eta, punishment) for e in eps])
            second = g[2:] - 2.0 * g[1:-1] + g[:-2]
            assert second.min() >= -1e-12


# --- alice best response ---


def test_best_response_no_split_is_full_bias():
    br = alice_best_response(SplittingChoice(0.0), R5)
    assert br.epsilon_star == approx(0.5, abs=1e-5)
    assert br.value == approx(-1.0, abs=1e-5)


def test_best_response_at_optimal_eta():
    # frozen from a 1e-5-step grid scan
    br = alice_best_response(SplittingChoice(0.27), R5)
    assert br.epsilon_star == approx(0.248349, abs=1e-4)
    assert br.value == approx(-0.4641139, abs=1e-6)


def test_best_response_full_split_is_honest_endpoint():
    # at eta = 1 the gain is nondecreasing in epsilon, so the computed
    # minimizer is the epsilon = 0 endpoint
    br = alice_best_response(SplittingChoice(1.0), R5)
    assert br.epsilon_star == approx(0.0, abs=1e-5)
    assert br.value == approx(-1.0, abs=1e-5)
    assert br.value <= bob_gain(0.0, 1.0, 5.0) + 1e-9
    assert br.value <= bob_gain(0.5, 1.0, 5.0) + 1e-9


def test_best_response_value_consistent_with_gain():
    br = alice_best_response(SplittingChoice(0.27), R5)
    assert br.value == approx(bob_gain(br.epsilon_star, 0.27, 5.0), abs=1e-12)


def test_best_response_matches_grid_oracle():
    # 20 random (eta, R) pairs against the 1e-5-step scan, within 1e-6 coins
    rng = np.random.default_rng(42)
    for _ in range(20):
        eta = float(rng.uniform(0.0, 1.0))
        punishment = float(rng.uniform(1.0, 15.0))
        br = alice_best_response(
            SplittingChoice(eta), GameConfig(punishment)
        )
        _, oracle_value = grid_scan_best_response(eta, punishment)
        assert br.value == approx(oracle_value, abs=1e-6)


def test_best_response_rejects_bad_tol():
    with pytest.raises(ValueError, match="tol"):
        alice_best_response(SplittingChoice(0.27), R5, tol=-1.0)


# --- bob optimal eta ---


def test_optimal_eta_reproduces_published_value():
    result = bob_optimal_eta(R5)
    assert 0.26 <= result.eta_tilde <= 0.28


def test_optimal_eta_guaranteed_gain():
    # frozen from the two-level grid oracle (eta step 1e-4, eps step 1e-5)
    result = bob_optimal_eta(R5)
    assert result.guaranteed_gain == approx(-0.4641016, abs=1e-4)
    assert result.alice_best_epsilon == approx(0.2500, abs=2e-3)


def test_worst_case_values_around_optimum():
    # frozen oracle values; the maximum of the three sits at 0.27
    values = {
        eta: alice_best_response(SplittingChoice(eta), R5).value
        for eta in (0.20, 0.27, 0.50)
    }
    assert values[0.20] == approx(-0.4806248, abs=1e-6)
    assert values[0.27] == approx(-0.4641139, abs=1e-6)
    assert values[0.50] == approx(-0.5615528, abs=1e-6)
    assert max(values, key=values.get) == 0.27


def test_optimal_eta_beats_grid():
    result = bob_optimal_eta(R5)
    for eta in np.linspace(0.0, 1.0, 101):
        g = alice_best_response(SplittingChoice(float(eta)), R5).value
        assert result.guaranteed_gain >= g - 1e-6


def test_optimal_eta_stable_under_tolerance_change():
    coarse = bob_optimal_eta(R5, tol=1e-3)
    fine = bob_optimal_eta(R5, tol=1e-5)
    assert coarse.guaranteed_gain == approx(fine.guaranteed_gain, abs=1e-3)
    assert coarse.eta_tilde == approx(fine.eta_tilde, abs=2e-2)


def test_alice_guarantee_at_honest_play():
    # the casino's gain at epsilon = 0 is +eta, never negative
    config = GameConfig(9.0)
    worst = min(
        -bob_gain(0.0, float(eta), config.punishment)
        for eta in np.linspace(0.0, 1.0, 101)
    )
    assert worst == approx(0.0, abs=1e-12)


# --- sweeps ---


def test_sweep_distribution_corner_grid():
    table = sweep_distribution([0.0, 0.5], [0.0, 1.0])
    assert table.p1.ravel() == approx((0.5, 0.0, 0.0, 0.0), abs=1e-12)
    assert table.p3[1, 1] == approx(0.5, abs=1e-12)
    assert table.p3[0, 0] == approx(0.0, abs=1e-12)


def test_sweep_distribution_cells_normalized():
    table = sweep_distribution(
        np.linspace(0.0, 0.5, 21), np.linspace(0.0, 1.0, 21)
    )
    total = table.p1 + table.p2 + table.p3
    assert np.max(np.abs(total - 1.0)) < 1e-12


def test_sweep_distribution_honest_row_has_no_flags():
    table = sweep_distribution([0.0, 0.25], np.linspace(0.0, 1.0, 11))
    assert np.all(table.p3[0] == 0.0)


def test_sweep_gain_honest_row_is_minus_eta():
    eta_grid = np.linspace(0.0, 1.0, 11)
    table = sweep_gain(R5, [0.0, 0.25], eta_grid)
    assert table.gain[0] == approx(-eta_grid, abs=1e-12)


def test_sweep_gain_known_cells():
    table = sweep_gain(R5, [0.0, 0.5], [0.0, 0.5])
    assert table.gain[0, 0] == approx(0.0, abs=1e-12)
    assert table.gain[1, 1] == approx(1.0, abs=1e-12)


def test_sweep_cells_match_scalar_protocol_path():
    from qgamble.protocol import outcome_distribution

    eps_grid = np.linspace(0.0, 0.5, 7)
    eta_grid = np.linspace(0.0, 1.0, 9)
    table = sweep_distribution(eps_grid, eta_grid)
    for i, epsilon in enumerate(eps_grid):
        for j, eta in enumerate(eta_grid):
            d = outcome_distribution(
                PreparationChoice(float(epsilon)), SplittingChoice(float(eta))
            )
            assert table.p1[i, j] == approx(d.p1, abs=1e-12)
            assert table.p2[i, j] == approx(d.p2, abs=1e-12)
            assert table.p3[i, j] == approx(d.p3, abs=1e-12)


def test_sweep_rejects_tiny_or_out_of_domain_grids():
    with pytest.raises(ValueError, match="at least 2"):
        sweep_distribution([0.0], [0.0, 1.0])
    with pytest.raises(ValueError, match="epsilon"):
        sweep_distribution([0.0, 0.7], [0.0, 1.0])
    with pytest.raises(ValueError, match="eta"):
        sweep_distribution([0.0, 0.5], [0.0, 1.5])


def test_sweep_table_shape_validation():
    with pytest.raises(ValueError, match="p1"):
        SweepTable(
            epsilon_grid=np.array([0.0, 0.5]),
            eta_grid=np.array([0.0, 1.0]),
            p1=np.zeros((3, 2)),
            p2=np.zeros((2, 2)),
            p3=np.zeros((2, 2)),
        )
