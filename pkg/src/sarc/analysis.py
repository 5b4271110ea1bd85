"""Theory constants, complexity bounds and empirical trace statistics.

``C`` is the universal constant converting the zeroth-order tail parameters
``(lam, a)`` into the sub-exponential scale ``K = C max(1/lam, ln 2 / a)``.
No numeric value is known for it; every quantity depending on ``K`` or ``p``
is reported together with the ``C`` that produced it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Optional, Sequence

import numpy as np


def sigma_bar(kappa_g: float, kappa_H: float, L: float, L_H: float, theta: float) -> float:
    if not 0 < theta < 1:
        raise ValueError("theta must lie in (0, 1)")
    if min(kappa_g, kappa_H, L, L_H) < 0 or kappa_g + kappa_H + L + L_H == 0:
        raise ValueError("constants must be non-negative and not all zero")
    return (2 * kappa_g + kappa_H + L + L_H) / (1 - theta / 3)


def eps_floor(mu, eta, theta, sigma_min, sigma_bar, p, eps_f_prime) -> float:
    """Smallest target accuracy covered by the complexity theory (strict lower bound)."""
    if not p > 0.5:
        raise ValueError(f"reliability p = {p} must exceed 1/2")
    c = 1 - theta / 3
    term1 = (1 + c * sigma_bar / sigma_min) * mu / (1 - eta)
    term2 = ((2 - theta / 3) * sigma_bar / (1 - eta)) * (24 * eps_f_prime / ((p - 0.5) * theta * sigma_min)) ** (2 / 3)
    return max(term1, term2)


def mu_ceiling(eta, theta, sigma_min, sigma_bar, epsilon) -> float:
    """Largest ``mu`` for which true iterations far from stationarity take long steps."""
    return (1 - eta) * epsilon / (1 + (1 - theta / 3) * sigma_bar / sigma_min)


class Reliability(NamedTuple):
    K: float
    u: float
    p: float
    p_above_half: bool


def subexp_scale(lam: float, a: float, C: float = 1.0) -> float:
    """``K = C max(1/lam, ln 2 / a)``, with the ``ln 2 / a`` term dropped when ``a == 0``."""
    terms = [0.0 if math.isinf(lam) else 1.0 / lam]
    if a > 0:
        terms.append(math.log(2) / a)
    return C * max(terms)


def reliability_p(delta1, delta2, eps_f, eps_f_prime, lam, a, C: float = 1.0) -> Reliability:
    if not eps_f_prime > eps_f:
        raise ValueError(f"eps_f_prime ({eps_f_prime}) must exceed eps_f ({eps_f})")
    if not lam > 0 or a < 0:
        raise ValueError("need lam > 0 and a >= 0")
    K = subexp_scale(lam, a, C)
    u = eps_f_prime - eps_f
    expo = math.inf if K == 0 else min(u * u / (2 * K * K), u / (2 * K))
    p = 1 - delta1 - delta2 - math.exp(-expo)
    return Reliability(K, u, p, p > 0.5)


def h_of_alpha(alpha, theta, eta, sigma_min, alpha_bar, epsilon) -> float:
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    denom = 1 / alpha + (1 - theta / 3) / alpha_bar
    return (theta / 6) * (1 - eta) ** 1.5 * sigma_min * denom**-1.5 * epsilon**1.5


def c1_constant(theta, eta, sigma_min, sigma_bar) -> float:
    return (theta / 6) * (1 - eta) ** 1.5 * sigma_min / ((2 - theta / 3) * sigma_bar) ** 1.5


def r_constant(phi0, phi_star, c1, epsilon, alpha0, sigma_bar, gamma) -> float:
    walk = -(math.log(alpha0) + math.log(sigma_bar)) / (2 * math.log(gamma))
    return (phi0 - phi_star) / (c1 * epsilon**1.5) + max(walk, 0.0)


@dataclass(frozen=True)
class TheoryConstants:
    sigma_bar: float
    alpha_bar: float
    K: float
    u: float
    p: float
    eps_floor: float  # nan when p <= 1/2
    c1: float
    R: float
    C: float = 1.0
    kappa_g: float = 1.0
    kappa_H: float = 1.0
    epsilon: float = math.nan
    eps_f_prime: float = math.nan

    @property
    def within_theory(self) -> bool:
        return self.p > 0.5 and self.epsilon > self.eps_floor

    def to_dict(self) -> dict:
        d = asdict(self)
        d["within_theory"] = self.within_theory
        # JSON has no inf/nan
        return {k: (v if not isinstance(v, float) or math.isfinite(v) else str(v)) for k, v in d.items()}


def compute_constants(problem, oracles, cfg, epsilon: Optional[float] = None, C: float = 1.0, x0=None) -> TheoryConstants:
    eps = cfg.epsilon if epsilon is None else epsilon
    kg, kh = oracles.first.kappa_g, oracles.second.kappa_H
    sb = sigma_bar(kg, kh, problem.L, problem.L_H, cfg.theta)
    z = oracles.zeroth
    rel = reliability_p(cfg.delta1, cfg.delta2, z.eps_f, cfg.eps_f_prime, z.lam, z.a, C)
    floor = (
        eps_floor(cfg.mu, cfg.eta, cfg.theta, cfg.sigma_min, sb, rel.p, cfg.eps_f_prime)
        if rel.p_above_half
        else math.nan
    )
    c1 = c1_constant(cfg.theta, cfg.eta, cfg.sigma_min, sb)
    if x0 is None:
        x0 = problem.x0 if cfg.x0 is None else np.asarray(cfg.x0, dtype=float)
    R = r_constant(problem.value(np.asarray(x0, dtype=float)), problem.phi_star, c1, eps, 1 / cfg.sigma0, sb, cfg.gamma)
    return TheoryConstants(sb, 1 / sb, rel.K, rel.u, rel.p, floor, c1, R, C, kg, kh, eps, cfg.eps_f_prime)


@dataclass(frozen=True)
class Inapplicable:
    """A tail bound whose preconditions fail; ``reason`` names the violated one."""

    reason: str


def tail_bound(t: float, s_slack: float, p_hat: float, constants: TheoryConstants, epsilon: float, eps_f_prime: float):
    """Lower bound on ``P(T_eps <= t + 1)``, or :class:`Inapplicable`."""
    p, K, c1, R = constants.p, constants.K, constants.c1, constants.R
    if s_slack < 0:
        return Inapplicable("s >= 0 violated")
    q = (4 * eps_f_prime + s_slack) / (c1 * epsilon**1.5)
    if not p_hat < p:
        return Inapplicable("p_hat < p violated")
    if not p_hat > 0.5 + q:
        return Inapplicable("p_hat > 1/2 + (4 eps_f' + s)/(c1 eps^1.5) violated")
    if not t >= R / (p_hat - 0.5 - q):
        return Inapplicable("t >= R/(p_hat - 1/2 - (4 eps_f' + s)/(c1 eps^1.5)) violated")
    first = math.exp(-((p - p_hat) ** 2) / (2 * p * p) * t)
    if s_slack == 0:
        second = 1.0
    elif K == 0:
        second = 0.0
    else:
        second = math.exp(-min(s_slack**2 * t / (8 * K * K), s_slack * t / (4 * K)))
    return 1 - first - second


def tail_floor(s_slack, p_hat, constants: TheoryConstants, epsilon, eps_f_prime) -> float:
    """Smallest ``t`` at which :func:`tail_bound` applies (inf if the ``p_hat`` window is empty)."""
    q = (4 * eps_f_prime + s_slack) / (constants.c1 * epsilon**1.5)
    gap = p_hat - 0.5 - q
    if not (gap > 0 and p_hat < constants.p):
        return math.inf
    return constants.R / gap


def binomial_margin(prob: float, n: int, z: float = 3.0) -> float:
    return z * math.sqrt(max(prob * (1 - prob), 0.0) / n)


@dataclass
class TraceSummary:
    T_eps: list[Optional[int]]
    true_freq: list[float]
    true_count: int
    iteration_count: int
    max_sigma: list[float]
    mean_z_decrease: float  # over true and successful iterations with a known successor

    @property
    def pooled_true_freq(self) -> float:
        return self.true_count / self.iteration_count if self.iteration_count else math.nan

    def ecdf(self, t: float) -> float:
        """Fraction of runs with ``T_eps <= t``; runs that never stopped count as failures."""
        return sum(1 for T in self.T_eps if T is not None and T <= t) / len(self.T_eps)

    def cdf_table(self, t_max: Optional[int] = None) -> list[tuple[int, float]]:
        reached = [T for T in self.T_eps if T is not None]
        if t_max is None:
            t_max = max(reached, default=0)
        return [(t, self.ecdf(t)) for t in range(0, t_max + 1)]

    def median_T(self) -> float:
        vals = sorted(math.inf if T is None else T for T in self.T_eps)
        return float(np.median(vals)) if vals else math.nan

    def sigma_multiples(self, sigma_bar: float) -> list[float]:
        return [s / sigma_bar for s in self.max_sigma]


def trace_stats(traces: Sequence) -> TraceSummary:
    if not traces:
        raise ValueError("trace_stats needs at least one trace")
    T, freq, max_sig = [], [], []
    true_count = total = 0
    drops = []
    for tr in traces:
        recs = tr.records
        T.append(tr.T_eps)
        flags = [r.true_iter for r in recs]
        true_count += sum(flags)
        total += len(recs)
        freq.append(sum(flags) / len(recs) if recs else math.nan)
        max_sig.append(max((r.sigma for r in recs), default=math.nan))
        for r, nxt in zip(recs, recs[1:]):
            if r.true_iter and r.successful:
                drops.append(r.Z_k - nxt.Z_k)
    mean_drop = float(np.mean(drops)) if drops else math.nan
    return TraceSummary(T, freq, true_count, total, max_sig, mean_drop)
