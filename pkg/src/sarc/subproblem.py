"""Global minimisation of the cubic model ``s'g + s'Hs/2 + sigma/3 ||s||^3``.

The dense path diagonalises ``H`` and solves the secular equation
``lambda = sigma ||s(lambda)||`` with ``(H + lambda I) s(lambda) = -g`` for
``lambda > max(0, -lambda_min(H))``.  The scalar function
``psi(lambda) = lambda/sigma - ||s(lambda)||`` is increasing and concave on
that interval, so a bracketed Newton iteration with bisection fallback finds
the root reliably.  A global minimiser satisfies both the stationarity and
curvature conditions on the step and has ``grad m(s) = 0``, which meets any
relative termination tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

CONVERGED = "converged"
HARD_CASE = "hard_case"
ZERO_GRADIENT = "zero_gradient"

_ZERO_GRAD = 1e-300
_HARD_TOL = 1e-12
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class CubicModel:
    g: np.ndarray
    H: np.ndarray
    sigma: float

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        H = np.asarray(self.H, dtype=float)
        if g.ndim != 1 or H.shape != (g.size, g.size):
            raise ValueError(f"shape mismatch: g {g.shape}, H {H.shape}")
        if not (np.all(np.isfinite(g)) and np.all(np.isfinite(H)) and math.isfinite(self.sigma)):
            raise ValueError("cubic model has non-finite entries")
        if not self.sigma > 0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        asym = float(np.max(np.abs(H - H.T))) if H.size else 0.0
        if asym > 1e-12 * max(1.0, float(np.max(np.abs(H)))):
            raise ValueError(f"H is not symmetric (max asymmetry {asym:.3e})")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "H", 0.5 * (H + H.T))


@dataclass(frozen=True)
class SubproblemResult:
    s: np.ndarray
    lambda_mult: float
    grad_norm: float
    scalc_residual: float
    curvature_slack: float
    status: str
    model_decrease: float

    def certified(self, g_norm: float, h_norm: float, eta: float) -> bool:
        """True when the step meets the stationarity, curvature and termination tolerances."""
        sn = float(np.linalg.norm(self.s))
        ok = self.scalc_residual <= 1e-8 * max(1.0, g_norm * sn)
        ok &= self.curvature_slack >= -1e-10 * max(1.0, sn * sn * h_norm)
        if self.status != ZERO_GRADIENT:
            ok &= self.grad_norm <= eta * min(1.0, sn) * g_norm
        return bool(ok)


def model_value(model: CubicModel, s: np.ndarray) -> float:
    """Model value without the constant term, so ``model_value(m, 0) == 0``."""
    s = _finite(s)
    sn = float(np.linalg.norm(s))
    return float(s @ model.g + 0.5 * s @ model.H @ s + model.sigma / 3.0 * sn**3)


def model_decrease(model: CubicModel, s: np.ndarray) -> float:
    return -model_value(model, s)


def model_gradient(model: CubicModel, s: np.ndarray) -> np.ndarray:
    s = _finite(s)
    return model.g + model.H @ s + model.sigma * float(np.linalg.norm(s)) * s


def _finite(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(s)):
        raise ValueError("step has non-finite entries")
    return s


def solve(model: CubicModel, eta: float = 0.5) -> SubproblemResult:
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    g, H, sigma = model.g, model.H, model.sigma
    n = g.size
    evals, Q = np.linalg.eigh(H)
    lam_min = float(evals[0])
    g_norm = float(np.linalg.norm(g))
    h_scale = max(1.0, float(np.max(np.abs(evals))))

    if g_norm <= _ZERO_GRAD:
        if lam_min >= 0:
            return _result(model, np.zeros(n), ZERO_GRADIENT)
        lam = -lam_min
        return _result(model, (lam / sigma) * Q[:, 0], ZERO_GRADIENT)

    ghat = Q.T @ g
    lo = max(0.0, -lam_min)
    tie = evals <= lam_min + _HARD_TOL * h_scale
    if lam_min <= 0 and np.linalg.norm(ghat[tie]) <= _HARD_TOL * g_norm:
        rest = ~tie
        w = np.zeros(n)
        w[rest] = ghat[rest] / (evals[rest] + lo)
        sp_norm = float(np.linalg.norm(w))
        if lo / sigma >= sp_norm:
            # secular bracket is empty: move along the bottom eigenvector
            tau = math.sqrt(max(0.0, (lo / sigma) ** 2 - sp_norm**2))
            s = -(Q @ w) + tau * Q[:, int(np.argmax(tie))]
            return _result(model, s, HARD_CASE)

    # work with the shift t = lambda - lo so that denominators near zero keep full precision
    shifted = evals + lo
    t = _secular_root(shifted, ghat, sigma, lo, g_norm)
    s = -(Q @ (ghat / (shifted + t)))
    return _result(model, s, CONVERGED)


def _secular_root(shifted, ghat, sigma, lo, g_norm, max_iter=300) -> float:
    """Root ``t >= 0`` of ``(lo + t)/sigma = ||ghat / (shifted + t)||``."""

    def psi(t):
        d = shifted + t
        w = ghat / d
        sn = float(np.linalg.norm(w))
        return (lo + t) / sigma - sn, w, d, sn

    a, b = 0.0, math.sqrt(sigma * g_norm)
    while psi(b)[0] < 0:  # guarded by ||s|| <= ||g|| / t; only rounding can trigger this
        b *= 2.0

    t = b
    best_t, best_abs = b, math.inf
    for _ in range(max_iter):
        f, w, d, sn = psi(t)
        if abs(f) < best_abs:
            best_t, best_abs = t, abs(f)
        if f >= 0:
            b = t
        else:
            a = t
        if abs(f) <= 1e-15 * ((lo + t) / sigma) or b - a <= 4 * _EPS * b:
            break
        slope = 1.0 / sigma + float(np.sum(w * w / d)) / sn
        step = t - f / slope
        t = step if a < step < b else 0.5 * (a + b)
        if t <= a or t >= b:
            break
    return best_t


def _result(model: CubicModel, s: np.ndarray, status: str) -> SubproblemResult:
    sn = float(np.linalg.norm(s))
    sHs = float(s @ model.H @ s)
    cubic = model.sigma * sn**3
    return SubproblemResult(
        s=s,
        lambda_mult=model.sigma * sn,
        grad_norm=float(np.linalg.norm(model_gradient(model, s))),
        scalc_residual=abs(float(s @ model.g) + sHs + cubic),
        curvature_slack=sHs + cubic,
        status=status,
        model_decrease=model_decrease(model, s),
    )


def brute_force_min(model: CubicModel, radius: float, grid_points_per_axis: int = 41) -> tuple[np.ndarray, float]:
    """Exhaustive grid search of the model over ``[-radius, radius]^n`` (test oracle, ``n <= 3``)."""
    n = model.g.size
    if n > 3:
        raise ValueError("brute force search is limited to n <= 3")
    axis = np.linspace(-radius, radius, grid_points_per_axis)
    pts = np.stack(np.meshgrid(*([axis] * n), indexing="ij"), axis=-1).reshape(-1, n)
    norms = np.linalg.norm(pts, axis=1)
    vals = pts @ model.g + 0.5 * np.sum((pts @ model.H) * pts, axis=1) + model.sigma / 3.0 * norms**3
    i = int(np.argmin(vals))
    return pts[i], float(vals[i])
