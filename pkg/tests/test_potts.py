"""Discrete gradient, coupling, and denoising problem tests."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from saddleprox.core import ConfigurationError, PrimalDualState, step
from saddleprox.potts import (
    PottsConfig,
    PottsProblem,
    dh,
    dht,
    dual_from_primal,
    gen_synthetic,
    huber_value,
    kappa_val,
    kappa_y,
    kappa_z,
)
from saddleprox.schedules import StepTriple
from saddleprox.verify import fd_grad_check

BOTH_P = pytest.mark.parametrize("p", [1, math.inf])


# ---------------------------------------------------------------------------
# Discrete gradient and its adjoint.
# ---------------------------------------------------------------------------


def test_dh_hand_values_and_boundary_rows():
    x = np.array([[0.0, 1.0], [3.0, 6.0]])
    g = dh(x)
    assert g.shape == (2, 2, 2)
    assert g[0, 0, 0] == 1.0   # horizontal difference
    assert g[1, 0, 0] == 3.0
    assert g[0, 0, 1] == 3.0   # vertical difference
    assert g[0, 1, 1] == 5.0
    assert np.all(g[:, -1, 0] == 0.0)
    assert np.all(g[-1, :, 1] == 0.0)


def test_dh_mesh_scaling_is_exact():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(6, 5))
    assert np.array_equal(dh(x, h=0.5), dh(x) / 0.5)
    out = dht(dh(x, h=0.5), h=0.5)
    assert np.allclose(out, dht(dh(x)) / 0.25, rtol=1e-15, atol=0)


def test_dh_dht_adjoint_fixed_case():
    rng = np.random.default_rng(1)
    x = rng.normal(size=(9, 7))
    g = rng.normal(size=(9, 7, 2))
    lhs = float(np.sum(dh(x) * g))
    rhs = float(np.sum(x * dht(g)))
    assert abs(lhs - rhs) <= 1e-12 * max(abs(lhs), 1.0)


@settings(max_examples=40, deadline=None)
@given(n1=st.integers(1, 12), n2=st.integers(1, 12), seed=st.integers(0, 100),
       h=st.sampled_from([1.0, 0.5, 0.125]))
def test_dh_dht_adjoint_generic(n1, n2, seed, h):
    rng = np.random.default_rng(seed)
    x = rng.normal(size=(n1, n2))
    g = rng.normal(size=(n1, n2, 2))
    lhs = float(np.sum(dh(x, h) * g))
    rhs = float(np.sum(x * dht(g, h)))
    scale = max(abs(lhs), abs(rhs), 1.0)
    assert abs(lhs - rhs) <= 1e-12 * scale


def test_gradient_operator_norm_bound():
    # ||dht o dh|| <= 8/h^2; power iteration gets close on a square grid.
    rng = np.random.default_rng(2)
    for h in (1.0, 0.5):
        v = rng.normal(size=(16, 16))
        for _ in range(100):
            v = dht(dh(v, h), h)
            v /= np.linalg.norm(v)
        lam = float(np.sum(v * dht(dh(v, h), h)))
        assert lam <= 8.0 / h**2 + 1e-9
        assert lam >= 0.9 * 8.0 / h**2


def test_dh_dht_validation():
    with pytest.raises(ConfigurationError):
        dh(np.zeros(5))
    with pytest.raises(ConfigurationError):
        dh(np.zeros((3, 3)), h=0.0)
    with pytest.raises(ConfigurationError):
        dht(np.zeros((3, 3)))
    with pytest.raises(ConfigurationError):
        dht(np.zeros((3, 3, 2)), h=-1.0)


# ---------------------------------------------------------------------------
# Coupling and smoothed penalty.
# ---------------------------------------------------------------------------


def test_kappa_scalar_hand_values():
    z = np.zeros((1, 1, 2))
    y = np.zeros((1, 1, 2))
    z[0, 0] = (0.5, 2.0)
    y[0, 0] = (1.0, 0.25)
    # p = 1 pairs componentwise: rho(0.5) + rho(0.5) with rho(t) = 2t - t^2.
    assert kappa_val(1, z, y) == pytest.approx(2 * (1.0 - 0.25), rel=1e-15)
    # p = inf pairs per pixel: t = 0.5 + 0.5 = 1, rho(1) = 1.
    assert kappa_val(math.inf, z, y) == pytest.approx(1.0, rel=1e-15)
    # Derivatives at these points: 2*(1 - t) times the other field.
    gz1 = kappa_z(1, z, y)
    assert gz1[0, 0, 0] == pytest.approx(2 * 0.5 * 1.0, rel=1e-15)
    assert gz1[0, 0, 1] == pytest.approx(2 * 0.5 * 0.25, rel=1e-15)
    assert np.allclose(kappa_z(math.inf, z, y), 0.0, atol=1e-15)
    gy1 = kappa_y(1, z, y)
    assert gy1[0, 0, 0] == pytest.approx(2 * 0.5 * 0.5, rel=1e-15)
    assert gy1[0, 0, 1] == pytest.approx(2 * 0.5 * 2.0, rel=1e-15)


@BOTH_P
def test_kappa_derivatives_match_finite_differences(p):
    rng = np.random.default_rng(3)
    z = 0.6 * rng.normal(size=(4, 5, 2))
    y = 0.6 * rng.normal(size=(4, 5, 2))
    eps = 1e-6
    gz = kappa_z(p, z, y)
    gy = kappa_y(p, z, y)
    for _ in range(10):
        dz = rng.normal(size=z.shape)
        fd = (kappa_val(p, z + eps * dz, y) - kappa_val(p, z - eps * dz, y)) / (2 * eps)
        assert fd == pytest.approx(float(np.sum(gz * dz)), rel=1e-7, abs=1e-7)
        dy = rng.normal(size=y.shape)
        fd = (kappa_val(p, z, y + eps * dy) - kappa_val(p, z, y - eps * dy)) / (2 * eps)
        assert fd == pytest.approx(float(np.sum(gy * dy)), rel=1e-7, abs=1e-7)


def test_kappa_p1_is_separable():
    rng = np.random.default_rng(4)
    z = rng.normal(size=(3, 4, 2))
    y = rng.normal(size=(3, 4, 2))
    total = 0.0
    for idx in np.ndindex(z.shape):
        zc = np.zeros((1, 1, 2))
        yc = np.zeros((1, 1, 2))
        zc[0, 0, 0] = z[idx]
        yc[0, 0, 0] = y[idx]
        total += kappa_val(1, zc, yc)
    assert total == pytest.approx(kappa_val(1, z, y), rel=1e-12)


def test_kappa_shape_validation():
    with pytest.raises(ConfigurationError):
        kappa_val(1, np.zeros((2, 2, 2)), np.zeros((2, 3, 2)))
    with pytest.raises(ConfigurationError):
        kappa_val(1, np.zeros((2, 2)), np.zeros((2, 2)))
    with pytest.raises(ConfigurationError):
        kappa_val(3, np.zeros((2, 2, 2)), np.zeros((2, 2, 2)))


def test_huber_value_hand_cases():
    z = np.zeros((1, 1, 2))
    z[0, 0, 0] = 1.0
    assert huber_value(1, z, 1e-3) == pytest.approx(2.0 / 2.001, rel=1e-15)
    # Same magnitude split across components: p = inf sees one unit jump.
    z[0, 0] = (0.6, 0.8)
    assert huber_value(math.inf, z, 1e-3) == pytest.approx(2.0 / 2.001, rel=1e-14)
    assert huber_value(1, np.zeros((2, 2, 2)), 1e-3) == 0.0
    with pytest.raises(ConfigurationError):
        huber_value(1, z, 0.0)


@BOTH_P
def test_huber_is_envelope_of_coupling_minus_quadratic(p):
    # huber(z) = kappa(z, yhat) - gamma/2 ||yhat||^2 at the maximizer.
    rng = np.random.default_rng(5)
    x = rng.normal(size=(7, 6))
    z = dh(x)
    gamma = 1e-2
    y_hat = dual_from_primal(p, x, gamma)
    envelope = kappa_val(p, z, y_hat) - 0.5 * gamma * float(np.sum(y_hat**2))
    assert huber_value(p, z, gamma) == pytest.approx(envelope, rel=1e-12)
    # and yhat is the critical point: gamma*y = kappa_y(z, y).
    resid = np.max(np.abs(gamma * y_hat - kappa_y(p, z, y_hat)))
    assert resid <= 1e-12


def test_dual_from_primal_magnitude_cap():
    # |yhat| peaks at 1/sqrt(2 gamma) over all jump heights.
    gamma = 1e-3
    zstar = math.sqrt(gamma / 2.0)
    x = np.array([[0.0, zstar]])
    y_hat = dual_from_primal(1, x, gamma)
    assert abs(y_hat[0, 0, 0]) == pytest.approx(1.0 / math.sqrt(2.0 * gamma), rel=1e-12)


# ---------------------------------------------------------------------------
# Saddle form of the denoising problem.
# ---------------------------------------------------------------------------


def _small_problem(p):
    f = gen_synthetic(8, 8, 3, n_shapes=2, noise_sigma=0.02)
    return PottsProblem(PottsConfig(alpha=1.0, gamma=1e-3, p=p), f), f


@BOTH_P
def test_first_iteration_from_clean_start(p):
    # From x0 = f, y0 = 0: the primal prox fixes f, so
    # y1 = 2*sigma*dh(f) / (1 + gamma*sigma).
    prob, f = _small_problem(p)
    trip = StepTriple(1e-3, 1.0, 1.0)
    state = PrimalDualState.initial(f.ravel(), np.zeros(prob.dual_dim))
    out = step(prob, trip, state)
    assert np.allclose(out.x, f.ravel(), rtol=0, atol=1e-14)
    expected = (2.0 * trip.sigma * dh(f) / (1.0 + 1e-3 * trip.sigma)).ravel()
    assert np.allclose(out.y, expected, rtol=1e-11, atol=1e-14)


def test_prox_formulas():
    prob, f = _small_problem(1)
    rng = np.random.default_rng(6)
    v = rng.normal(size=prob.primal_dim)
    tau = 0.37
    expected = (v + tau * f.ravel()) / (1.0 + tau)
    assert np.allclose(prob.prox_primal(tau, v), expected, rtol=1e-15, atol=0)
    w = rng.normal(size=prob.dual_dim)
    sigma = 2.3
    assert np.allclose(prob.prox_dual(sigma, w), w / (1.0 + 1e-3 * sigma),
                       rtol=1e-15, atol=0)


def test_prox_primal_weights_data_term_by_alpha():
    f = np.full((2, 2), 0.5)
    prob = PottsProblem(PottsConfig(alpha=0.25, gamma=1e-3, p=1), f)
    v = np.zeros(4)
    tau = 1.0
    r = tau / 0.25
    assert np.allclose(prob.prox_primal(tau, v), r * 0.5 / (1.0 + r), rtol=1e-15)


@BOTH_P
def test_objective_assembled_independently(p):
    prob, f = _small_problem(p)
    rng = np.random.default_rng(7)
    x = f.ravel() + 0.1 * rng.normal(size=f.size)
    img = x.reshape(f.shape)
    gamma = 1e-3
    z = dh(img)
    if p == 1:
        s2 = z * z
    else:
        s2 = z[..., 0] ** 2 + z[..., 1] ** 2
    expected = 0.5 * float(np.sum((img - f) ** 2)) + float(
        np.sum(2.0 * s2 / (2.0 * s2 + gamma)))
    assert prob.primal_objective(x) == pytest.approx(expected, rel=1e-12)


@BOTH_P
def test_gradients_pass_directional_check(p):
    prob, f = _small_problem(p)
    rng = np.random.default_rng(8)
    x = f.ravel() + 0.05 * rng.normal(size=prob.primal_dim)
    y = 0.3 * rng.normal(size=prob.dual_dim)
    assert fd_grad_check(prob, x, y, h=1e-5, n_dirs=20, seed=1) <= 1e-6


def test_problem_dual_from_primal_matches_free_function():
    prob, f = _small_problem(math.inf)
    rng = np.random.default_rng(9)
    x = f.ravel() + 0.05 * rng.normal(size=prob.primal_dim)
    direct = dual_from_primal(math.inf, x.reshape(f.shape), 1e-3).ravel()
    assert np.array_equal(prob.dual_from_primal(x), direct)


def test_config_validation():
    with pytest.raises(ConfigurationError):
        PottsConfig(alpha=0.0, gamma=1e-3, p=1)
    with pytest.raises(ConfigurationError):
        PottsConfig(alpha=1.0, gamma=-1e-3, p=1)
    with pytest.raises(ConfigurationError):
        PottsConfig(alpha=1.0, gamma=1e-3, p=2)
    with pytest.raises(ConfigurationError):
        PottsConfig(alpha=1.0, gamma=1e-3, p=1, h=0.0)
    with pytest.raises(ConfigurationError):
        PottsProblem(PottsConfig(alpha=1.0, gamma=1e-3, p=1), np.zeros(4))


# ---------------------------------------------------------------------------
# Synthetic images.
# ---------------------------------------------------------------------------


def test_gen_synthetic_is_deterministic():
    a = gen_synthetic(16, 12, seed=11)
    b = gen_synthetic(16, 12, seed=11)
    assert np.array_equal(a, b)
    c = gen_synthetic(16, 12, seed=12)
    assert not np.array_equal(a, c)


def test_gen_synthetic_piecewise_constant_level_count():
    for seed in range(6):
        img = gen_synthetic(24, 24, seed=seed, n_shapes=3, noise_sigma=0.0)
        assert len(np.unique(img)) <= 4


def test_gen_synthetic_shape_and_range():
    img = gen_synthetic(10, 14, seed=0, noise_sigma=0.3)
    assert img.shape == (10, 14)
    assert float(img.min()) >= 0.0 and float(img.max()) <= 1.0


def test_gen_synthetic_background_only():
    img = gen_synthetic(8, 8, seed=5, n_shapes=0, noise_sigma=0.0)
    assert len(np.unique(img)) == 1


def test_gen_synthetic_validation():
    with pytest.raises(ConfigurationError):
        gen_synthetic(0, 4, seed=0)
    with pytest.raises(ConfigurationError):
        gen_synthetic(4, 4, seed=0, n_shapes=-1)
    with pytest.raises(ConfigurationError):
        gen_synthetic(4, 4, seed=0, noise_sigma=-0.1)
