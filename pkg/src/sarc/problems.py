"""Benchmark objectives with analytic derivatives and certified constants.

Each family declares a test box ``[-box, box]^n`` (centred at the origin).
Lipschitz constants ``L`` (gradient) and ``L_H`` (Hessian) are certified on
that box; for the quadratic, sum-of-sines and logistic families they are in
fact global.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from sarc._logistic_data import FEATURES, LABELS

FAMILIES = ("quadratic", "rosenbrock", "nonconvex_sum_sin", "logistic_finite_sum")

Array = np.ndarray


@dataclass(frozen=True)
class Problem:
    """Ground-truth objective phi with its constants.

    Finite-sum problems additionally carry ``m`` and ``subset_*`` callables
    returning the average of the selected components, plus ``grad_spread`` /
    ``hess_spread``: bounds on ``||grad phi_i - grad phi||`` and
    ``||hess phi_i - hess phi||_op`` over the test box.
    """

    name: str
    n: int
    value: Callable[[Array], float]
    gradient: Callable[[Array], Array]
    hessian: Callable[[Array], Array]
    L: float
    L_H: float
    phi_star: float
    box: float
    x0: Array
    m: Optional[int] = None
    subset_value: Optional[Callable[[Array, Array], float]] = None
    subset_gradient: Optional[Callable[[Array, Array], Array]] = None
    subset_hessian: Optional[Callable[[Array, Array], Array]] = None
    grad_spread: Optional[float] = None
    hess_spread: Optional[float] = None

    @property
    def is_finite_sum(self) -> bool:
        return self.m is not None

    def in_box(self, x: Array) -> bool:
        return bool(np.all(np.abs(x) <= self.box))

    def component_value(self, i: int, x: Array) -> float:
        return self.subset_value(np.array([i]), x)

    def component_gradient(self, i: int, x: Array) -> Array:
        return self.subset_gradient(np.array([i]), x)

    def component_hessian(self, i: int, x: Array) -> Array:
        return self.subset_hessian(np.array([i]), x)


def make_problem(name: str, n: int) -> Problem:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    n = int(n)
    if name == "quadratic":
        return _quadratic(n)
    if name == "rosenbrock":
        if n < 2:
            raise ValueError("rosenbrock requires n >= 2")
        return _rosenbrock(n)
    if name == "nonconvex_sum_sin":
        return _sum_sin(n)
    if name == "logistic_finite_sum":
        if n > len(FEATURES[0]):
            raise ValueError(f"logistic_finite_sum supports n <= {len(FEATURES[0])}")
        return _logistic(n)
    raise ValueError(f"unknown problem family {name!r}; expected one of {FAMILIES}")


def _quadratic(n: int) -> Problem:
    eye = np.eye(n)
    return Problem(
        name="quadratic",
        n=n,
        value=lambda x: 0.5 * float(x @ x),
        gradient=lambda x: np.array(x, dtype=float),
        hessian=lambda x: eye.copy(),
        L=1.0,
        L_H=0.0,
        phi_star=0.0,
        box=10.0,
        x0=np.ones(n),
    )


def _rosenbrock(n: int, box: float = 2.0) -> Problem:
    def value(x):
        return float(np.sum(100.0 * (x[1:] - x[:-1] ** 2) ** 2 + (1.0 - x[:-1]) ** 2))

    def gradient(x):
        g = np.zeros_like(x, dtype=float)
        r = x[1:] - x[:-1] ** 2
        g[:-1] += -400.0 * x[:-1] * r - 2.0 * (1.0 - x[:-1])
        g[1:] += 200.0 * r
        return g

    def hessian(x):
        h = np.zeros((n, n))
        d = np.zeros(n)
        d[:-1] += 1200.0 * x[:-1] ** 2 - 400.0 * x[1:] + 2.0
        d[1:] += 200.0
        off = -400.0 * x[:-1]
        h[np.arange(n), np.arange(n)] = d
        h[np.arange(n - 1), np.arange(1, n)] = off
        h[np.arange(1, n), np.arange(n - 1)] = off
        return h

    # Gershgorin on the box for L; Frobenius bound on the Hessian increment for L_H.
    L = 1200.0 * box**2 + 1200.0 * box + 202.0
    L_H = math.sqrt(2.0 * (2400.0 * box) ** 2 + 4.0 * 400.0**2)
    x0 = np.tile([-1.2, 1.0], (n + 1) // 2)[:n]
    return Problem("rosenbrock", n, value, gradient, hessian, L, L_H, 0.0, box, x0)


def _sum_sin(n: int) -> Problem:
    # per-coordinate minimum of t^2/2 + sin t sits where t + cos t = 0
    t_min = brentq(lambda t: t + math.cos(t), -1.0, 0.0, xtol=1e-15)
    phi_star = n * (0.5 * t_min**2 + math.sin(t_min))
    return Problem(
        name="nonconvex_sum_sin",
        n=n,
        value=lambda x: 0.5 * float(x @ x) + float(np.sum(np.sin(x))),
        gradient=lambda x: x + np.cos(x),
        hessian=lambda x: np.diag(1.0 - np.sin(x)),
        L=2.0,
        L_H=1.0,
        phi_star=phi_star,
        box=10.0,
        x0=np.linspace(-8.0, 8.0, n) if n > 1 else np.array([8.0]),
    )


_RIDGE = 1e-2
_MAX_THIRD_LOGISTIC = 1.0 / (6.0 * math.sqrt(3.0))


def _logistic(n: int) -> Problem:
    A = np.asarray(FEATURES, dtype=float)[:, :n]
    y = np.asarray(LABELS, dtype=float)
    m = A.shape[0]
    norms = np.linalg.norm(A, axis=1)

    def subset_value(idx, x):
        t = y[idx] * (A[idx] @ x)
        return float(np.mean(np.logaddexp(0.0, -t))) + 0.5 * _RIDGE * float(x @ x)

    def subset_gradient(idx, x):
        t = y[idx] * (A[idx] @ x)
        w = -y[idx] * _sigmoid(-t)
        return A[idx].T @ w / len(idx) + _RIDGE * x

    def subset_hessian(idx, x):
        t = A[idx] @ x
        w = _sigmoid(t) * _sigmoid(-t)
        h = (A[idx].T * w) @ A[idx] / len(idx)
        h = 0.5 * (h + h.T)
        h[np.diag_indices(n)] += _RIDGE
        return h

    every = np.arange(m)
    return Problem(
        name="logistic_finite_sum",
        n=n,
        value=lambda x: subset_value(every, x),
        gradient=lambda x: subset_gradient(every, x),
        hessian=lambda x: subset_hessian(every, x),
        L=0.25 * float(np.linalg.eigvalsh(A.T @ A / m)[-1]) + _RIDGE,
        L_H=_MAX_THIRD_LOGISTIC * float(np.mean(norms**3)),
        phi_star=0.0,
        box=5.0,
        x0=np.ones(n),
        m=m,
        subset_value=subset_value,
        subset_gradient=subset_gradient,
        subset_hessian=subset_hessian,
        grad_spread=float(norms.max() + norms.mean()),
        # difference of two PSD matrices is bounded by the larger norm
        hess_spread=0.25 * float(np.max(norms**2)),
    )


def _sigmoid(t: Array) -> Array:
    return 0.5 * (1.0 + np.tanh(0.5 * t))


def check_derivatives(p: Problem, x: Array, step: float = 1e-5) -> tuple[float, float]:
    """Central-difference check of ``p.gradient`` and ``p.hessian`` at ``x``.

    Returns ``(grad_err, hess_err)``, each the max absolute discrepancy
    divided by ``max(1, max |analytic entry|)``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    x = np.asarray(x, dtype=float)
    n = x.size
    fd_grad = np.empty(n)
    fd_hess = np.empty((n, n))
    for i in range(n):
        e = np.zeros(n)
        e[i] = step
        fp, fm = p.value(x + e), p.value(x - e)
        gp, gm = p.gradient(x + e), p.gradient(x - e)
        if not (np.isfinite(fp) and np.isfinite(fm) and np.all(np.isfinite(gp)) and np.all(np.isfinite(gm))):
            raise FloatingPointError(f"non-finite objective near x along axis {i}")
        fd_grad[i] = (fp - fm) / (2 * step)
        fd_hess[:, i] = (gp - gm) / (2 * step)
    fd_hess = 0.5 * (fd_hess + fd_hess.T)
    g = p.gradient(x)
    h = p.hessian(x)
    grad_err = float(np.max(np.abs(fd_grad - g)) / max(1.0, float(np.max(np.abs(g)))))
    hess_err = float(np.max(np.abs(fd_hess - h)) / max(1.0, float(np.max(np.abs(h)))))
    return grad_err, hess_err
