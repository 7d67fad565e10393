import numpy as np
import pytest

from dirac_mfg import (
    F,
    GridSpec,
    NotInG,
    build_measure,
    fd_jacobian,
    grid_F,
    initial_guess,
    mass_check,
    nash_check,
    solve,
)

from conftest import random_levels_in_G, random_measure


def test_grid_spec_validation():
    with pytest.raises(ValueError):
        GridSpec(step=0)
    with pytest.raises(ValueError):
        GridSpec(padding=0.5)


def test_grid_F_single_parabola():
    m = build_measure([0.0], [1.0])
    assert grid_F([1.0], m, GridSpec(step=1e-4))[0] == pytest.approx(4 / 3, abs=1e-6)


def test_grid_F_dominated_atom_gets_nothing():
    m = build_measure([0, 0.5, 1], [1, 1, 1])
    assert grid_F([1.0, 0.01, 1.0], m, GridSpec(step=1e-4))[1] == 0.0


def test_grid_F_error_within_bound(rng):
    # an interface cell is credited whole to one atom, so the error at a given
    # h depends on where the crossing falls in its cell; only the bound halves
    for _ in range(10):
        m = random_measure(rng, n_max=6)
        C = random_levels_in_G(rng, m)
        exact = F(C, m)
        for h in (2e-3, 1e-3, 5e-4, 2.5e-4, 1e-5):
            bound = 5 * h**2 * m.n * (1 + C.max()) + h * C.max() * (m.n + 1)
            assert np.abs(grid_F(C, m, GridSpec(step=h)) - exact).max() <= bound


def test_grid_F_smooth_part_second_order():
    # detached parabolas: only the zero crossings, no interfaces
    m = build_measure([0.0, 5.0], [1.0, 1.0])
    C = np.array([1.0, 2.0])
    errs = [np.abs(grid_F(C, m, GridSpec(step=h)) - F(C, m)).max() for h in (1e-2, 1e-3)]
    assert errs[1] <= errs[0] / 50


def test_fd_jacobian_detached_and_banded(rng):
    J = fd_jacobian([1.3], build_measure([0], [1]))
    assert J[0, 0] == pytest.approx(2 * np.sqrt(1.3), abs=1e-8)  # d/dC of 4/3 C**1.5
    m = random_measure(rng, n_max=8, n=6)
    J = fd_jacobian(random_levels_in_G(rng, m, margin=1e-3), m)
    band = np.abs(np.subtract.outer(np.arange(6), np.arange(6))) <= 1
    assert np.abs(J[~band]).max() < 1e-8


def test_nash_single_atom():
    m = build_measure([0.0], [1.0])
    C = np.array([0.75 ** (2 / 3)])
    rep = nash_check(C, m, GridSpec(step=1e-4))
    assert rep.passed
    assert rep.best_value[0] == pytest.approx(C[0], abs=1e-12)


def test_nash_detached_pair():
    m = build_measure([0, 10], [0.5, 0.5])
    C = solve(m).C_star
    rep = nash_check(C, m)
    assert rep.passed
    np.testing.assert_allclose(rep.best_value, C, rtol=0, atol=1e-10)


def test_nash_equispaced_random_weights(rng):
    m = build_measure(np.arange(1.0, 11.0), rng.uniform(0.05, 1.0, 10))
    rep = nash_check(solve(m).C_star, m, GridSpec(step=1e-4))
    assert rep.passed
    assert np.all(rep.argmin_set_ok)


def test_nash_rejects_non_equilibrium(fig1):
    # right argmin structure but wrong masses
    C = initial_guess(fig1)
    rep = nash_check(C, fig1)
    assert np.all(rep.argmin_set_ok)
    assert not rep.passed


def test_nash_needs_G():
    m = build_measure([0, 0.5, 1], [1, 1, 1])
    with pytest.raises(NotInG):
        nash_check([1.0, 0.01, 1.0], m)


def test_mass_check(fig1):
    assert mass_check(solve(fig1).C_star, fig1) <= 1e-10
    assert mass_check(initial_guess(fig1), fig1) > 1e-3
    assert mass_check(np.zeros(4), fig1) == 0.25
