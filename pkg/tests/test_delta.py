import numpy as np
import pytest

import bicforge as bf
from bicforge.errors import NoBoundState, ZeroExpression


def test_single_band_bound_values():
    sol = bf.single_band_bound(-1.0, 1.0)
    assert sol.e_b == pytest.approx(-0.5, abs=1e-15)
    assert sol.kappa == pytest.approx(1.0, abs=1e-15)
    sol = bf.single_band_bound(-2.0, 0.5)
    assert sol.e_b == pytest.approx(-1.0, abs=1e-15)
    assert sol.kappa == pytest.approx(1.0, abs=1e-15)


def test_single_band_repulsive_raises():
    with pytest.raises(NoBoundState):
        bf.single_band_bound(1.0, 1.0)
    with pytest.raises(NoBoundState):
        bf.single_band_bound(0.0, 1.0)


def test_single_band_profile_is_exponential():
    sol = bf.single_band_bound(-1.5, 0.8)
    x = np.linspace(-4, 4, 101)
    vals = sol.sample(x)[:, 0]
    assert np.allclose(vals, np.exp(-sol.kappa * np.abs(x)), atol=1e-14)


def test_extended_green_values():
    assert bf.extended_green_1d(0.5, 1.0, np.pi / 2) == pytest.approx(1.0)
    assert bf.extended_green_1d(0.5, 1.0, 0.0) == 0.0
    assert bf.extended_green_1d(2.0, 1.0, -np.pi / 4) == pytest.approx(0.5)


def test_extended_green_matches_residue_kernel():
    model = bf.single_band_model()
    for e in (0.3, 1.7):
        kernel = bf.residue_green(model, e)
        for x in (-2.1, -0.4, 0.9, 3.3):
            assert bf.extended_green_1d(e, 1.0, x) == pytest.approx(
                kernel(x)[0, 0].real, abs=1e-12)


def test_two_band_energy_examples():
    assert bf.two_band_bound_energy(0.3, 0.0, -1.0, 1.0).e_b == pytest.approx(-0.2)
    res = bf.two_band_bound_energy(0.0, 1.0, -1.0, 1.0)
    assert res.e_b == pytest.approx(0.875)
    assert res.in_gap
    # vanishing coupling pushes the energy to the upper band edge s
    res = bf.two_band_bound_energy(0.4, 0.9, -1e-9, 1.0)
    assert res.e_b == pytest.approx(np.hypot(0.4, 0.9), abs=1e-12)


def test_two_band_g_zero_reduction():
    rng = np.random.default_rng(2)
    for _ in range(20):
        mu = rng.uniform(0.05, 2.0)
        lam = -rng.uniform(0.05, 2.0)
        m = rng.uniform(0.5, 2.0)
        res = bf.two_band_bound_energy(mu, 0.0, lam, m)
        assert res.e_b == pytest.approx(mu - lam * lam * m / 2.0, abs=1e-12)


def test_lambda_critical_values():
    assert bf.lambda_critical(0.0, 1.0, 1.0) == pytest.approx(-4.0, abs=1e-12)
    assert bf.lambda_critical(1.0, 0.0, 1.0) == pytest.approx(-2.0, abs=1e-12)
    assert bf.lambda_critical(0.0, 4.0, 1.0) == pytest.approx(-8.0, abs=1e-12)


def test_lambda_critical_hits_lower_edge():
    rng = np.random.default_rng(4)
    for _ in range(30):
        mu = rng.uniform(0.0, 1.5)
        g = rng.uniform(0.1, 2.0)
        m = rng.uniform(0.5, 2.0)
        s = np.hypot(mu, g)
        lc = bf.lambda_critical(mu, g, m)
        assert bf.two_band_bound_energy(mu, g, lc, m).e_b == pytest.approx(-s, abs=1e-10)


def test_two_band_solution_flagship():
    sol = bf.two_band_solution(0.0, 1.0, -1.0, 1.0)
    assert sol.kappa == pytest.approx(0.5)
    assert sol.e_b == pytest.approx(0.875)
    assert sol.p_real == pytest.approx(np.sqrt(3.75))
    assert sol.amp_loc / sol.amp_ext == pytest.approx(3.872983346, abs=1e-8)


def test_two_band_solution_decoupled_limit():
    sol = bf.two_band_solution(1.0, 1e-9, -1.0, 1.0)
    assert sol.kappa == pytest.approx(1.0, abs=1e-8)
    assert sol.e_b == pytest.approx(0.5, abs=1e-8)  # mu - lam^2 m/2


def test_two_band_solution_below_critical():
    sol = bf.two_band_solution(0.0, 1.0, -5.0, 1.0)
    assert sol.e_b == pytest.approx(-2.125)
    assert not sol.in_gap
    assert sol.amp_ext == 0.0


def test_amplitude_ratio_invariant():
    rng = np.random.default_rng(6)
    for _ in range(30):
        mu = rng.uniform(0.0, 1.2)
        g = rng.uniform(0.1, 1.5)
        lc = bf.lambda_critical(mu, g, 1.0)
        lam = rng.uniform(0.98 * lc, -0.02)
        sol = bf.two_band_solution(mu, g, lam, 1.0)
        if sol.amp_ext:
            assert sol.amp_loc / sol.amp_ext == pytest.approx(
                sol.p_real / sol.kappa, abs=1e-12)


def test_spinors_are_a0_eigenvectors():
    rng = np.random.default_rng(7)
    for _ in range(20):
        mu = rng.uniform(0.0, 1.2)
        g = rng.uniform(0.1, 1.5)
        s = np.hypot(mu, g)
        sol = bf.two_band_solution(mu, g, -0.3, 1.0)
        a0 = mu * bf.sigma_z() + g * bf.sigma_x()
        v1, v2 = sol.spinor_loc, sol.spinor_ext
        assert np.allclose(a0 @ v1, s * v1, atol=1e-12 * max(1, s))
        assert np.allclose(a0 @ v2, -s * v2, atol=1e-12 * max(1, s))


def test_gap_membership_sweep():
    mu, g, m = 0.2, 0.9, 1.0
    s = np.hypot(mu, g)
    lc = bf.lambda_critical(mu, g, m)
    for lam in np.linspace(0.99 * lc, -0.01, 50):
        e_b = bf.two_band_bound_energy(mu, g, lam, m).e_b
        assert -s < e_b < s
    for lam in np.linspace(1.5 * lc, 1.01 * lc, 10):
        assert bf.two_band_bound_energy(mu, g, lam, m).e_b < -s


def test_general_b_reduces_to_single_channel():
    rng = np.random.default_rng(8)
    for _ in range(30):
        mu = rng.uniform(0.0, 1.2)
        g = rng.uniform(0.1, 1.5)
        lam = -rng.uniform(0.05, 2.0)
        m = rng.uniform(0.5, 2.0)
        b = np.array([[lam, 0.0], [0.0, 0.0]])
        res = bf.general_b_kappa(b, mu, g, m)
        sol = bf.two_band_solution(mu, g, lam, m)
        assert res.kappa == pytest.approx(sol.kappa, abs=1e-12)
        assert res.e_b == pytest.approx(sol.e_b, abs=1e-12)


def test_general_b_example_and_zero():
    res = bf.general_b_kappa(np.array([[-1.0, 0.0], [0.0, -1.0]]), 0.0, 1.0, 1.0)
    assert res.kappa == pytest.approx(1.0)
    assert res.e_b == pytest.approx(0.5)
    assert res.net_attractive
    with pytest.raises(ZeroExpression):
        bf.general_b_kappa(np.zeros((2, 2)), 0.0, 1.0, 1.0)


def test_boundary_residual_constructed_solutions():
    sol = bf.two_band_solution(0.0, 1.0, -1.0, 1.0)
    b = np.array([[-1.0, 0.0], [0.0, 0.0]])
    r = bf.boundary_residual(sol, b, 1.0)
    assert np.linalg.norm(r) < 1e-10

    sol1 = bf.single_band_bound(-1.0, 1.0)
    r1 = bf.boundary_residual(sol1, np.array([[-1.0]]), 1.0)
    assert np.linalg.norm(r1) < 1e-12


def test_boundary_residual_general_b_random():
    # the projected amplitude ratio must satisfy the jump condition exactly;
    # this is the discriminating test between the two candidate ratio formulas
    rng = np.random.default_rng(9)
    checked = 0
    while checked < 25:
        mu = rng.uniform(0.0, 1.2)
        g = rng.uniform(0.15, 1.5)
        b = np.array([[rng.uniform(-1.5, 0.5), rng.uniform(-0.5, 0.5)],
                      [0.0, rng.uniform(-1.5, 0.5)]])
        b[1, 0] = b[0, 1]
        try:
            sol = bf.general_b_solution(b, mu, g, 1.0)
        except (NoBoundState, ZeroExpression):
            continue
        if not sol.in_gap or sol.amp_ext == 0.0:
            continue
        scale = max(np.linalg.norm(b @ sol.value_at_zero()), 1e-6)
        assert np.linalg.norm(bf.boundary_residual(sol, b, 1.0)) < 1e-10 * scale
        checked += 1


def test_bare_extended_mode_fails_boundary_condition():
    for lam in (-0.1, -0.5, -1.0, -2.0):
        mode = bf.bare_extended_mode(0.0, 1.0, lam, 1.0)
        b = np.array([[lam, 0.0], [0.0, 0.0]])
        assert np.linalg.norm(bf.boundary_residual(mode, b, 1.0)) >= 1e-3


def test_sampled_wave_is_eigenfunction_away_from_origin():
    mu, g, lam, m = 0.3, 0.8, -1.0, 1.0
    sol = bf.two_band_solution(mu, g, lam, m)
    a0 = mu * bf.sigma_z() + g * bf.sigma_x()

    def h_residual(dx):
        x = np.arange(0.5, 6.0, dx)
        psi = sol.sample(x)
        lap = (psi[2:] - 2 * psi[1:-1] + psi[:-2]) / dx**2
        hpsi = -lap / (2 * m) + psi[1:-1] @ a0.T
        return np.abs(hpsi - sol.e_b * psi[1:-1]).max()

    r1 = h_residual(1e-3)
    r2 = h_residual(5e-4)
    scale = np.abs(sol.sample(np.array([0.5]))).max()
    assert r1 < 1e-4 * scale
    assert r1 / r2 > 3.0  # at least quadratic in dx
