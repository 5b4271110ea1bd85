import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sarc.problems import FAMILIES, check_derivatives, make_problem

DIMS = {"quadratic": 3, "rosenbrock": 3, "nonconvex_sum_sin": 3, "logistic_finite_sum": 4}


def test_quadratic_example():
    p = make_problem("quadratic", 2)
    x = np.array([1.0, 0.0])
    np.testing.assert_array_equal(p.gradient(x), [1.0, 0.0])
    np.testing.assert_array_equal(p.hessian(x), np.eye(2))
    assert (p.L, p.L_H, p.phi_star) == (1.0, 0.0, 0.0)


def test_rosenbrock_minimiser():
    p = make_problem("rosenbrock", 2)
    x = np.ones(2)
    assert p.value(x) == 0.0
    np.testing.assert_array_equal(p.gradient(x), [0.0, 0.0])


def test_sum_sin_at_origin():
    p = make_problem("nonconvex_sum_sin", 2)
    x = np.zeros(2)
    np.testing.assert_allclose(p.gradient(x), [1.0, 1.0])
    np.testing.assert_allclose(p.hessian(x), np.eye(2))
    g_err, h_err = check_derivatives(p, x)
    assert g_err < 1e-8 and h_err < 1e-8


def test_sum_sin_phi_star_is_the_minimum():
    p = make_problem("nonconvex_sum_sin", 3)
    t = -0.7390851332151607  # root of t + cos t
    assert p.phi_star == pytest.approx(3 * (0.5 * t * t + math.sin(t)), rel=1e-14)
    grid = np.linspace(-3, 3, 20001)
    assert p.phi_star <= 3 * np.min(0.5 * grid**2 + np.sin(grid)) + 1e-12


@pytest.mark.parametrize(
    "name,x,tol",
    [("quadratic", [1.0, 0.0], 1e-8), ("rosenbrock", [-1.2, 1.0], 1e-5), ("logistic_finite_sum", [0.3, -0.2], 1e-5)],
)
def test_check_derivatives_examples(name, x, tol):
    g_err, h_err = check_derivatives(make_problem(name, 2), np.array(x))
    assert g_err <= tol and h_err <= tol


@pytest.mark.parametrize("name", FAMILIES)
def test_derivatives_at_random_box_points(name):
    p = make_problem(name, DIMS[name])
    rng = np.random.default_rng(11)
    worst = max(max(check_derivatives(p, rng.uniform(-p.box, p.box, p.n))) for _ in range(100))
    assert worst <= 1e-5


@pytest.mark.parametrize("name", FAMILIES)
def test_lipschitz_constants_hold_on_box(name):
    p = make_problem(name, DIMS[name])
    rng = np.random.default_rng(5)
    for _ in range(1000):
        x, y = rng.uniform(-p.box, p.box, (2, p.n))
        d = np.linalg.norm(x - y)
        assert np.linalg.norm(p.gradient(x) - p.gradient(y)) <= p.L * d * (1 + 1e-12)
        assert np.linalg.norm(p.hessian(x) - p.hessian(y), 2) <= p.L_H * d * (1 + 1e-12) + 1e-12


def test_finite_sum_components_average_to_full():
    p = make_problem("logistic_finite_sum", 5)
    x = np.linspace(-1, 1, 5)
    comps = [p.component_gradient(i, x) for i in range(p.m)]
    np.testing.assert_allclose(np.mean(comps, axis=0), p.gradient(x), atol=1e-14)
    hs = [p.component_hessian(i, x) for i in range(p.m)]
    np.testing.assert_allclose(np.mean(hs, axis=0), p.hessian(x), atol=1e-14)
    vals = [p.component_value(i, x) for i in range(p.m)]
    assert np.mean(vals) == pytest.approx(p.value(x), rel=1e-14)


def test_finite_sum_spreads_bound_component_deviation():
    p = make_problem("logistic_finite_sum", 4)
    rng = np.random.default_rng(2)
    for _ in range(50):
        x = rng.uniform(-p.box, p.box, p.n)
        g, h = p.gradient(x), p.hessian(x)
        for i in range(p.m):
            assert np.linalg.norm(p.component_gradient(i, x) - g) <= p.grad_spread
            assert np.linalg.norm(p.component_hessian(i, x) - h, 2) <= p.hess_spread


@pytest.mark.parametrize(
    "name,n",
    [("nope", 2), ("rosenbrock", 1), ("quadratic", 0), ("quadratic", 2.5), ("logistic_finite_sum", 11)],
)
def test_make_problem_rejects(name, n):
    with pytest.raises(ValueError):
        make_problem(name, n)


def test_check_derivatives_rejects_non_finite():
    p = make_problem("quadratic", 2)
    with pytest.raises(FloatingPointError):
        check_derivatives(p, np.array([np.inf, 0.0]))


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(-2, 2), min_size=2, max_size=4))
def test_rosenbrock_nonnegative_and_zero_only_at_ones(xs):
    p = make_problem("rosenbrock", len(xs))
    x = np.array(xs)
    v = p.value(x)
    assert v >= 0.0
    assert (v == 0.0) == bool(np.all(x == 1.0))
