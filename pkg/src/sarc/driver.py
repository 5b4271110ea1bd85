"""Stochastic adaptive cubic regularization: iteration, telemetry and checks."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field, fields
from typing import Optional, Sequence

import numpy as np

from sarc.oracles import OracleSuite
from sarc.problems import Problem
from sarc.rng import Stream, iteration_streams
from sarc.subproblem import CubicModel, solve

STOP_MODES = ("omniscient", "budget_only")

TRACE_HEADER = (
    "k", "sigma", "rho", "success", "true_iter", "model_flag", "step_norm", "model_dec",
    "e_k", "e_kplus", "grad_norm_xplus", "Z_k", "f_x", "f_xplus",
)


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SarcConfig:
    gamma: float = 0.5
    theta: float = 0.5
    delta1: float = 0.05
    delta2: float = 0.05
    sigma_min: float = 0.1
    eta: float = 0.5
    mu: float = 0.0
    eps_f_prime: float = 1e-8
    sigma0: float = 1.0
    epsilon: float = 1e-4
    max_iterations: int = 1000
    master_seed: int = 0
    stop_mode: str = "omniscient"
    x0: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        def need(ok, msg):
            if not ok:
                raise ConfigError(msg)

        need(0 < self.gamma < 1, "gamma must lie in (0, 1)")
        need(0 < self.theta < 1, "theta must lie in (0, 1)")
        need(0 <= self.delta1 < 0.5, "delta1 must satisfy 0 <= delta1 < 1/2")
        need(0 <= self.delta2 < 0.5, "delta2 must satisfy 0 <= delta2 < 1/2")
        need(self.sigma_min > 0, "sigma_min must be positive")
        need(0 < self.eta < 1, "eta must lie in (0, 1)")
        need(self.mu >= 0, "mu must be non-negative")
        need(self.eps_f_prime > 0, "eps_f_prime must be positive")
        need(self.sigma0 >= self.sigma_min, "sigma0 must be >= sigma_min")
        need(self.epsilon > 0, "epsilon must be positive")
        need(isinstance(self.max_iterations, int) and self.max_iterations >= 0, "max_iterations must be a non-negative integer")
        need(isinstance(self.master_seed, int) and -(2**63) <= self.master_seed < 2**64, "master_seed must be a 64-bit integer")
        need(self.stop_mode in STOP_MODES, f"stop_mode must be one of {STOP_MODES}")
        if self.x0 is not None:
            object.__setattr__(self, "x0", tuple(float(v) for v in self.x0))

    @classmethod
    def from_dict(cls, d: dict) -> "SarcConfig":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        if d["x0"] is not None:
            d["x0"] = list(d["x0"])
        return d


@dataclass(frozen=True)
class SarcState:
    x: np.ndarray
    sigma: float
    k: int = 0


@dataclass
class IterationRecord:
    k: int
    x: np.ndarray
    sigma: float
    g: np.ndarray
    H: np.ndarray
    s: np.ndarray
    f_x: float
    f_xplus: float
    rho: float  # nan when undefined
    successful: bool
    model_dec: float
    status: str
    true_iter: bool = False
    model_flag: bool = False
    e_k: float = math.nan
    e_kplus: float = math.nan
    grad_norm_xplus: float = math.nan
    Z_k: float = math.nan

    @property
    def step_norm(self) -> float:
        return float(np.linalg.norm(self.s))

    def csv_row(self) -> dict:
        return {
            "k": self.k, "sigma": self.sigma, "rho": self.rho, "success": self.successful,
            "true_iter": self.true_iter, "model_flag": self.model_flag, "step_norm": self.step_norm,
            "model_dec": self.model_dec, "e_k": self.e_k, "e_kplus": self.e_kplus,
            "grad_norm_xplus": self.grad_norm_xplus, "Z_k": self.Z_k, "f_x": self.f_x, "f_xplus": self.f_xplus,
        }


@dataclass
class Trace:
    records: list[IterationRecord]
    T_eps: Optional[int]
    final_x: np.ndarray
    epsilon: float
    x0: np.ndarray = field(default=None)

    def __len__(self):
        return len(self.records)


def stopping_time(grad_norms_xplus: Sequence[float], epsilon: float) -> Optional[int]:
    """``min{k : ||grad phi(x_k^+)|| <= eps} + 1`` with 0-based ``k``; None if never reached."""
    for k, gn in enumerate(grad_norms_xplus):
        if gn <= epsilon:
            return k + 1
    return None


def _flags(problem, x, g, H, s, sigma, e_k, e_kplus, cfg, kappa_g, kappa_H) -> tuple[bool, bool]:
    sn2 = float(s @ s)
    bound = max(cfg.mu / sigma, sn2)
    grad_err = float(np.linalg.norm(problem.gradient(x) - g))
    hess_err = float(np.linalg.norm((problem.hessian(x) - H) @ s))
    model_ok = grad_err <= kappa_g * bound and hess_err <= kappa_H * bound
    return model_ok and e_k + e_kplus <= 2.0 * cfg.eps_f_prime, model_ok


def classify_iteration(record: IterationRecord, problem: Problem, cfg: SarcConfig, constants) -> tuple[bool, bool]:
    """Ground-truth ``(I_k, J_k)``: true-iteration and accurate-model indicators.

    ``constants`` supplies ``kappa_g`` and ``kappa_H``.  Never used for
    algorithmic decisions.
    """
    return _flags(
        problem, record.x, record.g, record.H, record.s, record.sigma,
        record.e_k, record.e_kplus, cfg, constants.kappa_g, constants.kappa_H,
    )


def sarc_step(
    state: SarcState,
    problem: Problem,
    oracles: OracleSuite,
    cfg: SarcConfig,
    streams: Optional[dict] = None,
) -> tuple[SarcState, IterationRecord]:
    if state.sigma < cfg.sigma_min:
        raise ConfigError(f"sigma {state.sigma} below sigma_min {cfg.sigma_min}")
    if streams is None:
        streams = iteration_streams(cfg.master_seed, state.k)
    x, sigma = state.x, state.sigma

    g = oracles.first.sample(x, cfg.mu / sigma, cfg.delta1, streams[Stream.GRADIENT])
    H = oracles.second.sample(x, math.sqrt(cfg.mu / sigma), cfg.delta2, streams[Stream.HESSIAN])
    res = solve(CubicModel(g, H, sigma), cfg.eta)
    s = res.s
    x_plus = x + s

    f_x = oracles.zeroth.sample(x, streams[Stream.VALUE_AT_X])
    f_xplus = oracles.zeroth.sample(x_plus, streams[Stream.VALUE_AT_TRIAL])
    if res.model_decrease <= 0 or not np.any(s):
        rho = math.nan
        successful = False
    else:
        rho = (f_x - f_xplus + 2.0 * cfg.eps_f_prime) / res.model_decrease
        successful = rho >= cfg.theta

    if successful:
        nxt = SarcState(x_plus, max(cfg.gamma * sigma, cfg.sigma_min), state.k + 1)
    else:
        nxt = SarcState(x, sigma / cfg.gamma, state.k + 1)

    phi_x = problem.value(x)
    rec = IterationRecord(
        k=state.k, x=x, sigma=sigma, g=g, H=H, s=s, f_x=f_x, f_xplus=f_xplus, rho=rho,
        successful=successful, model_dec=res.model_decrease, status=res.status,
        e_k=abs(f_x - phi_x), e_kplus=abs(f_xplus - problem.value(x_plus)),
        grad_norm_xplus=float(np.linalg.norm(problem.gradient(x_plus))), Z_k=phi_x - problem.phi_star,
    )
    rec.true_iter, rec.model_flag = _flags(
        problem, x, g, H, s, sigma, rec.e_k, rec.e_kplus, cfg,
        oracles.first.kappa_g, oracles.second.kappa_H,
    )
    return nxt, rec


def run(problem: Problem, oracles: OracleSuite, cfg: SarcConfig, x0: Optional[np.ndarray] = None) -> Trace:
    if x0 is None:
        x0 = problem.x0 if cfg.x0 is None else np.asarray(cfg.x0, dtype=float)
    x0 = np.array(x0, dtype=float)
    if x0.shape != (problem.n,):
        raise ConfigError(f"x0 has shape {x0.shape}, expected ({problem.n},)")
    state = SarcState(x0, cfg.sigma0, 0)
    records: list[IterationRecord] = []
    T_eps = None
    while state.k < cfg.max_iterations:
        state, rec = sarc_step(state, problem, oracles, cfg)
        records.append(rec)
        if T_eps is None and rec.grad_norm_xplus <= cfg.epsilon:
            T_eps = rec.k + 1
            if cfg.stop_mode == "omniscient":
                break
    return Trace(records, T_eps, state.x, cfg.epsilon, x0)


# -- runtime checks of the per-iteration guarantees ---------------------------------

CHECKS = {
    "a": "model decrease >= sigma ||s||^3 / 6",
    "b": "true iteration with sigma >= sigma_bar is successful or has ||s||^2 < mu/sigma",
    "c": "true iteration: max(||s||^2, mu/sigma) >= (1-eta)||grad phi(x+)|| / (sigma + (1-theta/3) sigma_bar)",
    "d": "true successful iteration improves phi by the guaranteed amount",
    "e": "Z_{k+1} <= Z_k + 2 eps_f' + e_k + e_k^+",
}

_SLACK = 1e-9


def _violated(lhs: float, rhs: float, *scale: float) -> bool:
    """True unless ``lhs >= rhs`` up to a relative slack."""
    tol = _SLACK * max([1.0, abs(lhs), abs(rhs)] + [abs(v) for v in scale])
    return lhs < rhs - tol


def assert_lemmas(trace: Trace, problem: Problem, cfg: SarcConfig, constants) -> list[tuple[int, str]]:
    """Return ``(k, check_id)`` for every violated per-iteration guarantee (see ``CHECKS``).

    Checks that rely on ``L`` / ``L_H`` (b, c, d) are only evaluated when both
    ``x_k`` and ``x_k^+`` lie in the problem's test box; (d) additionally needs
    ``mu <= (1-eta) eps / (1 + (1-theta/3) sigma_bar / sigma_min)``.
    """
    sb = constants.sigma_bar
    eps = trace.epsilon
    theta, eta, mu = cfg.theta, cfg.eta, cfg.mu
    mu_ok = mu <= (1 - eta) * eps / (1 + (1 - theta / 3) * sb / cfg.sigma_min)
    out = []
    for r in trace.records:
        sn = r.step_norm
        cube = r.sigma * sn**3
        x_next = r.x + r.s if r.successful else r.x
        phi_k = r.Z_k + problem.phi_star
        phi_next = problem.value(x_next)
        in_box = problem.in_box(r.x) and problem.in_box(r.x + r.s)

        if _violated(r.model_dec, cube / 6.0, float(r.s @ r.g), cube):
            out.append((r.k, "a"))
        if r.true_iter and in_box:
            if r.sigma >= sb and not r.successful and not sn**2 < mu / r.sigma:
                out.append((r.k, "b"))
            if r.grad_norm_xplus > eps:
                need = (1 - eta) * r.grad_norm_xplus / (r.sigma + (1 - theta / 3) * sb)
                if _violated(max(sn**2, mu / r.sigma), need):
                    out.append((r.k, "c"))
            if r.successful and mu_ok and r.grad_norm_xplus > eps:
                gain = (theta / 6) * (1 - eta) ** 1.5 * cfg.sigma_min
                gain *= (r.sigma + (1 - theta / 3) * sb) ** -1.5 * r.grad_norm_xplus**1.5
                rhs = gain - r.e_k - r.e_kplus - 2 * cfg.eps_f_prime
                if _violated(phi_k - phi_next, rhs, phi_k, phi_next):
                    out.append((r.k, "d"))
        noise = 2 * cfg.eps_f_prime + r.e_k + r.e_kplus
        if _violated(r.Z_k + noise, phi_next - problem.phi_star, phi_k, phi_next):
            out.append((r.k, "e"))
    return out


# -- serialization -----------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_trace_csv(trace: Trace, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_HEADER)
        for r in trace.records:
            row = r.csv_row()
            w.writerow([_fmt(row[h]) for h in TRACE_HEADER])


_INT_COLS = {"k"}
_BOOL_COLS = {"success", "true_iter", "model_flag"}


def read_trace_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    out = []
    for row in rows:
        parsed = {}
        for h in TRACE_HEADER:
            v = row[h]
            if h in _INT_COLS:
                parsed[h] = int(v)
            elif h in _BOOL_COLS:
                parsed[h] = v == "1"
            else:
                parsed[h] = float(v)
        out.append(parsed)
    return out
