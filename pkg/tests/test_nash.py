"""Poisson solver, game construction, and equilibrium convergence tests."""

import math

import numpy as np
import pytest

from saddleprox.core import ConfigurationError, PrimalDualState, SolveOptions, solve, step
from saddleprox.nash import (
    Grid,
    NashConfig,
    NashProblem,
    PoissonSolver,
    Profile,
    apply_laplacian,
    default_profile,
    half_masks,
    manufacture,
    poisson_solve,
    proj_box,
)
from saddleprox.schedules import StepTriple
from saddleprox.verify import fd_grad_check

GAME_TRIPLE = StepTriple(0.99, 1.0, 1.0)


def dense_laplacian(n: int) -> np.ndarray:
    """Independent 5-point Dirichlet Laplacian as a dense matrix."""
    h = 1.0 / (n + 1)
    a = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            k = i * n + j
            a[k, k] = 4.0
            if i > 0:
                a[k, k - n] = -1.0
            if i < n - 1:
                a[k, k + n] = -1.0
            if j > 0:
                a[k, k - 1] = -1.0
            if j < n - 1:
                a[k, k + 1] = -1.0
    return a / h**2


# ---------------------------------------------------------------------------
# Grid and Poisson solver.
# ---------------------------------------------------------------------------


def test_grid_mesh_and_coordinates():
    grid = Grid(3)
    assert grid.h == 0.25
    xx, yy = grid.coords()
    assert xx.shape == (3, 3)
    assert xx[1, 0] == 0.5
    assert yy[0, 2] == 0.75
    with pytest.raises(ConfigurationError):
        Grid(1)


@pytest.mark.parametrize("n", [63, 127])
def test_laplacian_eigenpairs(n):
    grid = Grid(n)
    xx, yy = grid.coords()
    h = grid.h
    for k, l in ((1, 1), (3, 5), (n, n)):
        v = np.sin(k * np.pi * xx) * np.sin(l * np.pi * yy)
        lam = (2.0 - 2.0 * math.cos(k * np.pi * h)) / h**2 + (
            2.0 - 2.0 * math.cos(l * np.pi * h)) / h**2
        resid = apply_laplacian(grid, v) - lam * v
        assert np.max(np.abs(resid)) <= 1e-12 * lam * np.max(np.abs(v))
        back = poisson_solve(grid, lam * v)
        assert np.max(np.abs(back - v)) <= 1e-12 * np.max(np.abs(v))


@pytest.mark.parametrize("n", [63, 127])
def test_poisson_roundtrip(n):
    grid = Grid(n)
    rng = np.random.default_rng(n)
    w = rng.normal(size=(n, n))
    back = poisson_solve(grid, apply_laplacian(grid, w))
    assert np.max(np.abs(back - w)) <= 1e-12 * np.max(np.abs(w))


def test_solver_counts_solves():
    solver = PoissonSolver(Grid(15))
    rhs = np.ones((15, 15))
    assert solver.count == 0
    solver.solve(rhs)
    solver.solve(rhs)
    assert solver.count == 2
    with pytest.raises(ConfigurationError):
        solver.solve(np.ones((14, 15)))


def test_solver_matches_dense_factorization():
    n = 7
    grid = Grid(n)
    a = dense_laplacian(n)
    rng = np.random.default_rng(10)
    w = rng.normal(size=(n, n))
    assert np.allclose(apply_laplacian(grid, w).ravel(), a @ w.ravel(),
                       rtol=1e-12, atol=1e-9)
    rhs = rng.normal(size=(n, n))
    direct = np.linalg.solve(a, rhs.ravel()).reshape(n, n)
    assert np.allclose(poisson_solve(grid, rhs), direct, rtol=1e-10, atol=1e-12)


# ---------------------------------------------------------------------------
# Masks, projection, and problem data.
# ---------------------------------------------------------------------------


def test_half_masks_split_the_square():
    grid = Grid(15)
    m1, m2 = half_masks(grid)
    assert not np.any(m1 & m2)
    # n = 15 puts the dividing line y = 1/2 on the grid: neither player.
    assert not np.any(m1[:, 7]) and not np.any(m2[:, 7])
    assert np.all(m1[:, :7])
    assert np.all(m2[:, 8:])


def test_proj_box_clamps_on_mask_only():
    mask = np.array([[True, False], [True, True]])
    u = np.array([[0.9, 0.9], [-0.9, 0.1]])
    out = proj_box(u, mask, -0.5, 0.5)
    assert out[0, 0] == 0.5
    assert out[0, 1] == 0.0
    assert out[1, 0] == -0.5
    assert out[1, 1] == pytest.approx(0.1, abs=0)


def test_config_validation():
    grid = Grid(4)
    ones = np.ones((4, 4))
    mask = ones.astype(bool)
    with pytest.raises(ConfigurationError):
        NashConfig(grid=grid, mask1=mask, mask2=mask, z1=np.ones((3, 4)),
                   z2=ones, f=ones)
    with pytest.raises(ConfigurationError):
        NashConfig(grid=grid, mask1=mask, mask2=mask, z1=ones, z2=ones,
                   f=ones, a=0.1, b=0.5)
    with pytest.raises(ConfigurationError):
        NashConfig(grid=grid, mask1=mask, mask2=mask, z1=ones, z2=ones,
                   f=ones, alpha1=0.0)


def test_manufacture_rejects_profile_hitting_the_box():
    big = Profile(
        w1=lambda x, y: np.ones_like(x),
        w2=lambda x, y: np.zeros_like(x),
        ys=lambda x, y: np.zeros_like(x),
    )
    with pytest.raises(ConfigurationError):
        manufacture(15, profile=big)


# ---------------------------------------------------------------------------
# Manufactured equilibrium.
# ---------------------------------------------------------------------------


def test_equilibrium_is_interior_and_stationary():
    config, x_star, y_star = manufacture(15)
    assert np.array_equal(x_star, y_star)
    assert float(np.max(np.abs(x_star))) <= 0.8 * 0.5
    prob = NashProblem(config)
    scale = float(np.max(np.abs(x_star)))
    gx = prob.grad_x(x_star, y_star)
    gy = prob.grad_y(x_star, y_star)
    assert float(np.max(np.abs(gx))) <= 1e-10 * max(scale, 1.0)
    assert float(np.max(np.abs(gy))) <= 1e-10 * max(scale, 1.0)
    assert prob.psi(x_star, y_star) == 0.0


def test_equilibrium_is_a_fixed_point_of_the_iteration():
    config, x_star, y_star = manufacture(15)
    prob = NashProblem(config)
    state = PrimalDualState.initial(x_star, y_star)
    for _ in range(3):
        new = step(prob, GAME_TRIPLE, state)
        moved = np.sqrt(np.sum((new.x - state.x) ** 2) + np.sum((new.y - state.y) ** 2))
        assert moved <= 1e-12
        state = new


def test_psi_vanishes_on_the_diagonal():
    config, x_star, _ = manufacture(15)
    prob = NashProblem(config)
    rng = np.random.default_rng(11)
    x = x_star + 0.05 * rng.normal(size=prob.primal_dim)
    assert prob.psi(x, x) == 0.0


def test_payout_matches_dense_recomputation():
    n = 7
    config, x_star, _ = manufacture(n)
    prob = NashProblem(config)
    rng = np.random.default_rng(12)
    u1 = 0.1 * rng.normal(size=(n, n))
    u2 = 0.1 * rng.normal(size=(n, n))
    a = dense_laplacian(n)
    rhs = np.where(config.mask1, u1, 0.0) + np.where(config.mask2, u2, 0.0) + config.f
    s = np.linalg.solve(a, rhs.ravel()).reshape(n, n)
    assert np.allclose(prob.state(u1, u2), s, rtol=1e-9, atol=1e-11)
    h2 = config.grid.h**2
    j1 = 0.5 * h2 * (np.sum((s - config.z1) ** 2)
                     + config.alpha1 * np.sum(np.where(config.mask1, u1, 0.0) ** 2))
    assert prob.payout(1, u1, u2) == pytest.approx(j1, rel=1e-9)
    j2 = 0.5 * h2 * (np.sum((s - config.z2) ** 2)
                     + config.alpha2 * np.sum(np.where(config.mask2, u2, 0.0) ** 2))
    assert prob.payout(2, u1, u2) == pytest.approx(j2, rel=1e-9)
    with pytest.raises(ConfigurationError):
        prob.payout(3, u1, u2)


def test_coupling_gradients_pass_directional_check():
    config, x_star, y_star = manufacture(15)
    prob = NashProblem(config)
    rng = np.random.default_rng(13)
    x = x_star + 0.05 * rng.normal(size=prob.primal_dim)
    y = y_star + 0.05 * rng.normal(size=prob.dual_dim)
    assert fd_grad_check(prob, x, y, h=1e-5, n_dirs=15, seed=2) <= 1e-6


def test_exactly_nine_solves_per_iteration():
    config, _, _ = manufacture(15)
    prob = NashProblem(config)
    state = PrimalDualState.initial(np.zeros(prob.primal_dim), np.zeros(prob.dual_dim))
    before = prob.pde_solves
    for k in range(1, 5):
        state = step(prob, GAME_TRIPLE, state)
        assert prob.pde_solves - before == 9 * k


def _distance_run(n: int, iters: int = 10):
    config, x_star, y_star = manufacture(n)
    prob = NashProblem(config)
    h = config.grid.h
    state = PrimalDualState.initial(np.zeros(prob.primal_dim), np.zeros(prob.dual_dim))
    dists = []
    for _ in range(iters):
        state = step(prob, GAME_TRIPLE, state)
        dists.append(h * math.sqrt(float(
            np.sum((state.x - x_star) ** 2) + np.sum((state.y - y_star) ** 2))))
    return dists


def test_iteration_converges_in_a_handful_of_steps():
    dists = _distance_run(15)
    assert dists[0] == pytest.approx(1.816632e-3, rel=1e-5)
    hit = next(i + 1 for i, d in enumerate(dists) if d <= 1e-12)
    assert hit <= 7
    for a, b in zip(dists, dists[1:hit]):
        assert b < a


def test_mesh_independence_of_the_distance_profile():
    d15 = _distance_run(15)
    d31 = _distance_run(31)
    assert d15[0] == pytest.approx(d31[0], rel=0.05)
    hit15 = next(i + 1 for i, d in enumerate(d15) if d <= 1e-12)
    hit31 = next(i + 1 for i, d in enumerate(d31) if d <= 1e-12)
    assert abs(hit15 - hit31) <= 1


def test_solve_integration_with_reference_logging():
    config, x_star, y_star = manufacture(15)
    prob = NashProblem(config)
    final, records = solve(
        prob, GAME_TRIPLE,
        np.zeros(prob.primal_dim), np.zeros(prob.dual_dim),
        SolveOptions(max_iters=8, reference=(x_star, y_star)),
    )
    assert final.iteration == 8
    assert len(records) == 8
    assert records[-1].dist_to_ref <= 1e-12 / config.grid.h
    assert records[0].dist_to_ref > records[3].dist_to_ref


def test_default_profile_respects_interiority():
    prof = default_profile()
    grid = Grid(31)
    xx, yy = grid.coords()
    assert float(np.max(np.abs(prof.w1(xx, yy)))) <= 0.4
    assert float(np.max(np.abs(prof.w2(xx, yy)))) <= 0.4
