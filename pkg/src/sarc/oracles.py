"""Stochastic zeroth-, first- and second-order oracles.

A zeroth-order oracle returns noisy values ``f(x)`` whose absolute error has
mean at most ``eps_f`` and tail ``P(|err| >= t) <= exp(lam * (a - t))``.
First/second-order oracles take an accuracy request ``(mu, delta)`` and
return a gradient (Hessian) within ``kappa * mu`` of the truth (operator norm
for Hessians) with probability at least ``1 - delta``.

All randomness comes from the ``rng`` argument; oracles hold no mutable state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional

import numpy as np
from scipy.stats import chi2

from sarc.problems import Problem


class UnsatisfiableAccuracy(ValueError):
    """Accuracy request a noisy oracle cannot honour (``mu == 0`` or ``delta == 0``)."""


@lru_cache(maxsize=256)
def chi2_quantile(prob: float, dof: int) -> float:
    return float(chi2.ppf(prob, dof))


def _check_request(mu: float, delta: float) -> None:
    if not 0.0 <= delta < 0.5:
        raise ValueError(f"delta must lie in [0, 1/2), got {delta}")
    if mu < 0:
        raise ValueError(f"accuracy input must be non-negative, got {mu}")


class ZerothOracle:
    eps_f: float
    lam: float
    a: float

    def sample(self, x: np.ndarray, rng: np.random.Generator) -> float:
        raise NotImplementedError


class FirstOracle:
    kappa_g: float

    def sample(self, x: np.ndarray, mu1: float, delta1: float, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class SecondOracle:
    kappa_H: float

    def sample(self, x: np.ndarray, mu2: float, delta2: float, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError


class OracleSuite(NamedTuple):
    zeroth: ZerothOracle
    first: FirstOracle
    second: SecondOracle


# -- exact --------------------------------------------------------------------


@dataclass(frozen=True)
class ExactZeroth(ZerothOracle):
    problem: Problem
    eps_f: float = 0.0
    lam: float = math.inf
    a: float = 0.0

    def sample(self, x, rng):
        return self.problem.value(x)


@dataclass(frozen=True)
class ExactFirst(FirstOracle):
    problem: Problem
    kappa_g: float = 1.0

    def sample(self, x, mu1, delta1, rng):
        _check_request(mu1, delta1)
        return self.problem.gradient(x)


@dataclass(frozen=True)
class ExactSecond(SecondOracle):
    problem: Problem
    kappa_H: float = 1.0

    def sample(self, x, mu2, delta2, rng):
        _check_request(mu2, delta2)
        return self.problem.hessian(x)


def exact_suite(p: Problem, kappa_g: float = 1.0, kappa_H: float = 1.0) -> OracleSuite:
    """Noise-free oracles; every probabilistic contract holds surely."""
    return OracleSuite(ExactZeroth(p), ExactFirst(p, kappa_g), ExactSecond(p, kappa_H))


# -- additive noise -------------------------------------------------------------


@dataclass(frozen=True)
class LaplaceZeroth(ZerothOracle):
    """Value plus Laplace(0, b) noise: ``E|e| = b`` and ``P(|e| >= t) = exp(-t/b)``."""

    problem: Problem
    b: float

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError("Laplace scale b must be positive")

    @property
    def eps_f(self) -> float:
        return self.b

    @property
    def lam(self) -> float:
        return 1.0 / self.b

    @property
    def a(self) -> float:
        return 0.0

    def sample(self, x, rng):
        return self.problem.value(x) + float(rng.laplace(0.0, self.b))


def laplace_zeroth(p: Problem, b: float) -> LaplaceZeroth:
    return LaplaceZeroth(p, b)


@dataclass(frozen=True)
class GaussianFirst(FirstOracle):
    problem: Problem
    kappa_g: float

    def __post_init__(self):
        if not self.kappa_g > 0:
            raise ValueError("kappa_g must be positive")

    def noise_scale(self, mu1: float, delta1: float) -> float:
        """Per-coordinate std making ``P(||z|| > kappa_g * mu1) = delta1`` exactly."""
        _check_request(mu1, delta1)
        if mu1 == 0 or delta1 == 0:
            raise UnsatisfiableAccuracy("noisy gradient oracle needs mu1 > 0 and delta1 > 0")
        return self.kappa_g * mu1 / math.sqrt(chi2_quantile(1.0 - delta1, self.problem.n))

    def sample(self, x, mu1, delta1, rng):
        tau = self.noise_scale(mu1, delta1)
        return self.problem.gradient(x) + tau * rng.standard_normal(self.problem.n)


def gaussian_first(p: Problem, kappa_g: float) -> GaussianFirst:
    return GaussianFirst(p, kappa_g)


@dataclass(frozen=True)
class GaussianSecond(SecondOracle):
    problem: Problem
    kappa_H: float

    def __post_init__(self):
        if not self.kappa_H > 0:
            raise ValueError("kappa_H must be positive")

    def noise_scale(self, mu2: float, delta2: float) -> float:
        # ||c (W + W^T)/2||_F^2 = c^2 * chi2 with n(n+1)/2 degrees of freedom
        _check_request(mu2, delta2)
        if mu2 == 0 or delta2 == 0:
            raise UnsatisfiableAccuracy("noisy Hessian oracle needs mu2 > 0 and delta2 > 0")
        n = self.problem.n
        return self.kappa_H * mu2 / math.sqrt(chi2_quantile(1.0 - delta2, n * (n + 1) // 2))

    def sample(self, x, mu2, delta2, rng):
        c = self.noise_scale(mu2, delta2)
        n = self.problem.n
        w = rng.standard_normal((n, n))
        return self.problem.hessian(x) + c * 0.5 * (w + w.T)


def gaussian_second(p: Problem, kappa_H: float) -> GaussianSecond:
    return GaussianSecond(p, kappa_H)


def laplace_gaussian_suite(p: Problem, b: float, kappa_g: float, kappa_H: float) -> OracleSuite:
    return OracleSuite(laplace_zeroth(p, b), gaussian_first(p, kappa_g), gaussian_second(p, kappa_H))


# -- subsampling ----------------------------------------------------------------


def bernstein_batch(tol: float, delta: float, spread: float, m: int, n: int) -> int:
    """Batch size ``min(m, ceil(2 (spread/tol)^2 (ln(1/delta) + ln(2n))))``.

    ``tol`` is the absolute accuracy (``kappa * mu``); zero tolerance or zero
    failure probability fall back to the full (exact) batch.
    """
    if tol <= 0 or delta <= 0:
        return m
    b = math.ceil(2.0 * (spread / tol) ** 2 * (math.log(1.0 / delta) + math.log(2.0 * n)))
    return int(min(m, max(1, b)))


def _subset(rng: np.random.Generator, m: int, size: int) -> np.ndarray:
    if size >= m:
        return np.arange(m)
    return np.sort(rng.choice(m, size=size, replace=False))


@dataclass(frozen=True)
class SubsampledZeroth(ZerothOracle):
    problem: Problem
    batch: int
    eps_f: float
    lam: float
    a: float

    def sample(self, x, rng):
        return self.problem.subset_value(_subset(rng, self.problem.m, self.batch), x)


@dataclass(frozen=True)
class SubsampledFirst(FirstOracle):
    problem: Problem
    kappa_g: float

    def batch_size(self, mu1: float, delta1: float) -> int:
        p = self.problem
        return bernstein_batch(self.kappa_g * mu1, delta1, p.grad_spread, p.m, p.n)

    def sample(self, x, mu1, delta1, rng):
        _check_request(mu1, delta1)
        idx = _subset(rng, self.problem.m, self.batch_size(mu1, delta1))
        return self.problem.subset_gradient(idx, x)


@dataclass(frozen=True)
class SubsampledSecond(SecondOracle):
    problem: Problem
    kappa_H: float

    def batch_size(self, mu2: float, delta2: float) -> int:
        p = self.problem
        return bernstein_batch(self.kappa_H * mu2, delta2, p.hess_spread, p.m, p.n)

    def sample(self, x, mu2, delta2, rng):
        _check_request(mu2, delta2)
        idx = _subset(rng, self.problem.m, self.batch_size(mu2, delta2))
        return self.problem.subset_hessian(idx, x)


@dataclass(frozen=True)
class ZerothCalibration:
    eps_f: float
    lam: float
    a: float
    errors: np.ndarray = field(repr=False)


def calibrate_subsampled_zeroth(
    p: Problem,
    batch: int,
    rng: np.random.Generator,
    n_points: int = 16,
    n_samples: int = 2000,
    margin: float = 1.5,
) -> ZerothCalibration:
    """Empirical ``(eps_f, lam, a)`` for a fixed-batch subsampled value oracle.

    Errors are collected at random points of the test box.  The fit half of
    the sample sets ``eps_f`` (largest per-point mean, times ``margin``) and
    ``lam = 1/eps_f``; ``a`` is the smallest shift whose exponential tail
    dominates the empirical tail of the held-out half, plus ``ln(margin)/lam``.
    """
    errs = np.empty((n_points, n_samples))
    for j in range(n_points):
        x = rng.uniform(-p.box, p.box, size=p.n)
        phi = p.value(x)
        for i in range(n_samples):
            errs[j, i] = abs(p.subset_value(_subset(rng, p.m, batch), x) - phi)
    if batch >= p.m:
        return ZerothCalibration(0.0, math.inf, 0.0, errs.ravel())
    fit, held = errs[:, : n_samples // 2], errs[:, n_samples // 2 :].ravel()
    eps_f = margin * float(np.max(fit.mean(axis=1)))
    lam = 1.0 / eps_f
    # P(|e| >= t) <= exp(lam (a - t))  <=>  a >= t + ln(freq(t)) / lam
    ts = np.sort(held)
    freq = 1.0 - np.arange(ts.size) / ts.size  # P(|e| >= ts[i]) empirically
    a = max(0.0, float(np.max(ts + np.log(freq) / lam)) + math.log(margin) / lam)
    return ZerothCalibration(eps_f, lam, a, errs.ravel())


def subsampled_suite(
    p: Problem,
    kappa_g: float,
    kappa_H: float,
    calibration_seed: int = 0,
    zeroth_batch: Optional[int] = None,
) -> OracleSuite:
    """Minibatch oracles for a finite-sum problem.

    Gradient and Hessian batches follow :func:`bernstein_batch`; the value
    oracle uses a fixed batch of ``ceil(m/4)`` with calibrated constants.
    """
    if not p.is_finite_sum or p.m < 2:
        raise ValueError("subsampled oracles need a finite-sum problem with m >= 2")
    batch = zeroth_batch if zeroth_batch is not None else math.ceil(p.m / 4)
    cal = calibrate_subsampled_zeroth(p, batch, np.random.default_rng(calibration_seed))
    return OracleSuite(
        SubsampledZeroth(p, batch, cal.eps_f, cal.lam, cal.a),
        SubsampledFirst(p, kappa_g),
        SubsampledSecond(p, kappa_H),
    )


def is_exact(suite: OracleSuite) -> bool:
    return isinstance(suite.first, ExactFirst) and isinstance(suite.second, ExactSecond)
