"""Experiment runner: single runs, Monte Carlo sweeps, slope fits and output files.

Spec files are JSON objects whose keys match :class:`ExperimentSpec` fields::

    {
      "problem": "quadratic", "n": 2,
      "oracle": "laplace_gaussian",
      "noise": {"b": 1e-9, "kappa_g": 1.0, "kappa_H": 1.0},
      "config": {"mu": 1e-3, "eps_f_prime": 5e-9, "max_iterations": 500},
      "epsilon_grid": [0.1, 0.05],
      "seed_count": 100,
      "output_dir": "out/noisy_quadratic",
      "C": 1.0
    }

Each run uses ``master_seed = seed`` and ``epsilon`` from the grid; every
other driver setting comes from ``config``.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import NamedTuple, Optional, Sequence

import numpy as np

from sarc import analysis, driver
from sarc.driver import SarcConfig
from sarc.oracles import exact_suite, laplace_gaussian_suite, subsampled_suite
from sarc.problems import make_problem

ORACLE_KINDS = ("exact", "laplace_gaussian", "subsampled")
SUMMARY_HEADER = ("epsilon", "seed", "T_eps", "max_sigma", "true_freq", "theory")
WITHIN, OUTSIDE = "within-theory", "outside-theory"


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class ExperimentSpec:
    problem: str
    n: int
    oracle: str = "exact"
    noise: dict = field(default_factory=dict)
    config: SarcConfig = field(default_factory=SarcConfig)
    epsilon_grid: tuple[float, ...] = (1e-4,)
    seed_count: int = 1
    output_dir: str = "out"
    C: float = 1.0

    def __post_init__(self):
        if self.oracle not in ORACLE_KINDS:
            raise SpecError(f"oracle must be one of {ORACLE_KINDS}, got {self.oracle!r}")
        grid = tuple(float(e) for e in self.epsilon_grid)
        if not grid or any(e <= 0 for e in grid) or any(b >= a for a, b in zip(grid, grid[1:])):
            raise SpecError("epsilon_grid must be non-empty, positive and strictly decreasing")
        object.__setattr__(self, "epsilon_grid", grid)
        if not isinstance(self.seed_count, int) or self.seed_count < 1:
            raise SpecError("seed_count must be a positive integer")
        if isinstance(self.config, dict):
            object.__setattr__(self, "config", SarcConfig.from_dict(self.config))
        allowed = {"exact": {"kappa_g", "kappa_H"}, "laplace_gaussian": {"b", "kappa_g", "kappa_H"},
                   "subsampled": {"kappa_g", "kappa_H", "calibration_seed"}}[self.oracle]
        extra = set(self.noise) - allowed
        if extra:
            raise SpecError(f"noise keys {sorted(extra)} not valid for oracle {self.oracle!r}")
        if self.oracle == "laplace_gaussian" and "b" not in self.noise:
            raise SpecError("laplace_gaussian oracle needs noise.b")
        if not self.C > 0:
            raise SpecError("C must be positive")

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentSpec":
        names = {f.name for f in fields(cls)}
        unknown = set(d) - names
        if unknown:
            raise SpecError(f"unknown experiment keys: {sorted(unknown)}")
        missing = {"problem", "n"} - set(d)
        if missing:
            raise SpecError(f"missing experiment keys: {sorted(missing)}")
        return cls(**d)

    @classmethod
    def load(cls, path) -> "ExperimentSpec":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return {
            "problem": self.problem, "n": self.n, "oracle": self.oracle, "noise": dict(self.noise),
            "config": self.config.to_dict(), "epsilon_grid": list(self.epsilon_grid),
            "seed_count": self.seed_count, "output_dir": self.output_dir, "C": self.C,
        }

    def build(self):
        """Problem and oracle suite described by this experiment."""
        try:
            problem = make_problem(self.problem, self.n)
        except ValueError as exc:
            raise SpecError(str(exc)) from exc
        kg = float(self.noise.get("kappa_g", 1.0))
        kh = float(self.noise.get("kappa_H", 1.0))
        if self.oracle == "exact":
            return problem, exact_suite(problem, kg, kh)
        if self.oracle == "laplace_gaussian":
            return problem, laplace_gaussian_suite(problem, float(self.noise["b"]), kg, kh)
        if not problem.is_finite_sum:
            raise SpecError("subsampled oracles need a finite-sum problem")
        return problem, subsampled_suite(problem, kg, kh, int(self.noise.get("calibration_seed", 0)))

    def run_config(self, epsilon: float, seed: int) -> SarcConfig:
        return replace(self.config, epsilon=epsilon, master_seed=seed)


def constants_for(spec: ExperimentSpec, problem, oracles, epsilon: float) -> analysis.TheoryConstants:
    return analysis.compute_constants(problem, oracles, spec.run_config(epsilon, 0), epsilon, spec.C)


def theory_label(constants: analysis.TheoryConstants) -> str:
    return WITHIN if constants.within_theory else OUTSIDE


@dataclass
class SingleRunOutcome:
    traces: list
    constants: list
    violations: list[dict]
    paths: list[Path]

    @property
    def exit_status(self) -> int:
        return 2 if self.violations else 0


def trace_name(eps_index: int, seed: int) -> str:
    return f"trace_e{eps_index}_seed{seed}.csv"


def run_single(spec: ExperimentSpec, seed: int, out_dir=None) -> SingleRunOutcome:
    out = Path(out_dir if out_dir is not None else spec.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    problem, oracles = spec.build()
    traces, consts, violations, paths = [], [], [], []
    for i, eps in enumerate(spec.epsilon_grid):
        cfg = spec.run_config(eps, seed)
        tr = driver.run(problem, oracles, cfg)
        c = constants_for(spec, problem, oracles, eps)
        for k, check in driver.assert_lemmas(tr, problem, cfg, c):
            violations.append({"epsilon": eps, "seed": seed, "k": k, "check": check, "what": driver.CHECKS[check]})
        path = out / trace_name(i, seed)
        driver.write_trace_csv(tr, path)
        traces.append(tr)
        consts.append(c)
        paths.append(path)
    cpath = out / f"constants_seed{seed}.json"
    _write_json(cpath, [dict(c.to_dict(), theory=theory_label(c)) for c in consts])
    vpath = out / f"violations_seed{seed}.json"
    _write_json(vpath, violations)
    return SingleRunOutcome(traces, consts, violations, paths + [cpath, vpath])


# -- Monte Carlo -----------------------------------------------------------------------


def _job(args):
    spec_dict, eps, seed = args
    spec = ExperimentSpec.from_dict(spec_dict)
    problem, oracles = spec.build()
    cfg = spec.run_config(eps, seed)
    tr = driver.run(problem, oracles, cfg)
    c = constants_for(spec, problem, oracles, eps)
    viol = driver.assert_lemmas(tr, problem, cfg, c)
    for r in tr.records:  # matrices are not needed downstream
        r.g = r.H = None
    return eps, seed, tr, viol


@dataclass
class MonteCarloResult:
    summary_rows: list[dict]
    cdf_rows: list[dict]
    comparison_rows: list[dict]
    constants: dict
    violations: list[dict]
    stats: dict
    paths: list[Path]

    @property
    def bound_violations(self) -> int:
        return sum(1 for r in self.comparison_rows if r["status"] == "violated")

    @property
    def exit_status(self) -> int:
        return 2 if self.violations else 0


def default_tail_parameters(c: analysis.TheoryConstants) -> tuple[float, float]:
    """``(s_slack, p_hat)``: ``s = K`` (a small fraction of the progress budget when ``K = 0``),
    ``p_hat`` the midpoint of its admissible window."""
    budget = c.c1 * c.epsilon**1.5
    s = c.K if c.K > 0 else 0.01 * budget * max(c.p - 0.5, 0.0)
    lower = 0.5 + (4 * c.eps_f_prime + s) / budget
    return s, 0.5 * (lower + c.p)


def tail_comparison(stats: analysis.TraceSummary, c: analysis.TheoryConstants, t_values: Sequence[int]) -> list[dict]:
    s, p_hat = default_tail_parameters(c)
    n = len(stats.T_eps)
    rows = []
    for t in t_values:
        b = analysis.tail_bound(t, s, p_hat, c, c.epsilon, c.eps_f_prime)
        emp = stats.ecdf(t + 1)
        if isinstance(b, analysis.Inapplicable):
            rows.append({"epsilon": c.epsilon, "t": t, "empirical": emp, "margin": math.nan,
                         "bound": math.nan, "status": "inapplicable", "reason": b.reason})
            continue
        margin = analysis.binomial_margin(b, n)
        status = "violated" if emp + margin < b else "ok"
        rows.append({"epsilon": c.epsilon, "t": t, "empirical": emp, "margin": margin,
                     "bound": b, "status": status, "reason": ""})
    return rows


def comparison_grid(stats: analysis.TraceSummary, c: analysis.TheoryConstants, points: int = 25) -> list[int]:
    reached = [T for T in stats.T_eps if T is not None]
    ts = set(range(0, max(reached, default=0) + 1))
    s, p_hat = default_tail_parameters(c)
    floor = analysis.tail_floor(s, p_hat, c, c.epsilon, c.eps_f_prime)
    if math.isfinite(floor):
        start = max(1, math.ceil(floor))
        ts.update(int(round(v)) for v in np.geomspace(start, 100 * start, points))
        ts.add(start)
    return sorted(ts)


def run_montecarlo(spec: ExperimentSpec, out_dir=None, workers: Optional[int] = None) -> MonteCarloResult:
    if spec.seed_count < 2:
        raise SpecError("Monte Carlo needs seed_count >= 2")
    out = Path(out_dir if out_dir is not None else spec.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    problem, oracles = spec.build()
    sd = spec.to_dict()
    jobs = [(sd, eps, seed) for eps in spec.epsilon_grid for seed in range(spec.seed_count)]
    workers = workers or os.cpu_count() or 1
    if workers == 1:
        results = [_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    results.sort(key=lambda r: (-r[0], r[1]))

    summary, cdf, comparison, violations = [], [], [], []
    consts, stats_out = {}, {}
    for eps in spec.epsilon_grid:
        group = [r for r in results if r[0] == eps]
        traces = [r[2] for r in group]
        c = constants_for(spec, problem, oracles, eps)
        label = theory_label(c)
        stats = analysis.trace_stats(traces)
        consts[repr(eps)] = dict(c.to_dict(), theory=label)
        stats_out[repr(eps)] = {
            "median_T": stats.median_T(), "pooled_true_freq": stats.pooled_true_freq,
            "max_sigma_over_sigma_bar": max(stats.sigma_multiples(c.sigma_bar)),
            "mean_Z_decrease_true_successful": stats.mean_z_decrease, "theory": label,
        }
        for (_, seed, tr, viol), T, ms, tf in zip(group, stats.T_eps, stats.max_sigma, stats.true_freq):
            summary.append({"epsilon": eps, "seed": seed, "T_eps": T, "max_sigma": ms, "true_freq": tf, "theory": label})
            violations += [{"epsilon": eps, "seed": seed, "k": k, "check": ch, "what": driver.CHECKS[ch]} for k, ch in viol]
        cdf += [{"epsilon": eps, "t": t, "ecdf": v} for t, v in stats.cdf_table()]
        comparison += [dict(row, theory=label) for row in tail_comparison(stats, c, comparison_grid(stats, c))]

    paths = [out / "summary.csv", out / "cdf.csv", out / "tail_comparison.csv",
             out / "constants.json", out / "stats.json", out / "violations.json", out / "cdf_vs_bound.svg"]
    write_summary_csv(summary, paths[0])
    _write_rows(paths[1], ("epsilon", "t", "ecdf"), cdf)
    _write_rows(paths[2], ("epsilon", "t", "empirical", "margin", "bound", "status", "reason", "theory"), comparison)
    _write_json(paths[3], consts)
    _write_json(paths[4], stats_out)
    _write_json(paths[5], violations)
    paths[6].write_text(render_svg(cdf, comparison))
    return MonteCarloResult(summary, cdf, comparison, consts, violations, stats_out, paths)


# -- slope fit --------------------------------------------------------------------------


class SlopeFit(NamedTuple):
    slope: float
    intercept: float
    residual: float  # root-mean-square residual of the log-log fit


def fit_loglog(epsilons: Sequence[float], T: Sequence[float], min_points: int = 3) -> SlopeFit:
    e = np.asarray(epsilons, dtype=float)
    t = np.asarray(T, dtype=float)
    keep = np.isfinite(t) & (t > 0) & (e > 0)
    e, t = e[keep], t[keep]
    if e.size < min_points or np.unique(e).size < 2:
        raise ValueError(f"degenerate grid: need {min_points} distinct epsilons with finite median T")
    X, Y = np.log(e), np.log(t)
    # centred normal equations: flat data gives a slope of exactly zero
    dx, dy = X - X.mean(), Y - Y.mean()
    slope = float(dx @ dy / (dx @ dx))
    intercept = float(Y.mean() - slope * X.mean())
    res = Y - (slope * X + intercept)
    return SlopeFit(float(slope), float(intercept), float(np.sqrt(np.mean(res**2))))


def median_by_epsilon(summary_rows: Sequence[dict]) -> dict[float, float]:
    groups: dict[float, list[float]] = {}
    for r in summary_rows:
        T = r["T_eps"]
        groups.setdefault(float(r["epsilon"]), []).append(math.inf if T is None else float(T))
    return {e: float(np.median(v)) for e, v in groups.items()}


def fit_slope(summary_rows: Sequence[dict]) -> SlopeFit:
    """Least-squares slope of log(median T_eps) against log(epsilon)."""
    med = median_by_epsilon(summary_rows)
    eps = sorted(med)
    return fit_loglog(eps, [med[e] for e in eps])


# -- files ------------------------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def _write_rows(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_cell(r[h]) for h in header])


def write_summary_csv(rows, path) -> None:
    _write_rows(path, SUMMARY_HEADER, rows)


def read_summary_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    missing = set(SUMMARY_HEADER) - set(rows[0] if rows else SUMMARY_HEADER)
    if missing:
        raise ValueError(f"summary file lacks columns {sorted(missing)}")
    return [
        {"epsilon": float(r["epsilon"]), "seed": int(r["seed"]),
         "T_eps": int(r["T_eps"]) if r["T_eps"] else None, "max_sigma": float(r["max_sigma"]),
         "true_freq": float(r["true_freq"]), "theory": r["theory"]}
        for r in rows
    ]


def _write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def render_svg(cdf_rows, comparison_rows, width: int = 640, height: int = 400) -> str:
    """Static SVG: empirical CDF of T_eps (steps) and the tail bound (dots), log-scaled t."""
    pad = 50
    ts = [r["t"] + 1 for r in cdf_rows if r["t"] >= 0] + [r["t"] + 1 for r in comparison_rows]
    tmax = max(ts, default=2)
    lx = math.log10(max(tmax, 10))

    def px(t):
        return pad + (width - 2 * pad) * math.log10(max(t, 1)) / lx

    def py(v):
        return height - pad - (height - 2 * pad) * min(max(v, 0.0), 1.0)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" stroke="black"/>',
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>',
        f'<text x="{width / 2}" y="{height - 10}" text-anchor="middle" font-size="12">t + 1 (log scale)</text>',
        f'<text x="12" y="{height / 2}" font-size="12" transform="rotate(-90 12 {height / 2})">P(T_eps &lt;= t + 1)</text>',
    ]
    colours = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
    for i, eps in enumerate(sorted({r["epsilon"] for r in cdf_rows}, reverse=True)):
        col = colours[i % len(colours)]
        pts = [(px(r["t"] + 1), py(r["ecdf"])) for r in cdf_rows if r["epsilon"] == eps]
        pts.append((px(tmax), pts[-1][1] if pts else py(0)))
        parts.append(f'<polyline fill="none" stroke="{col}" points="{" ".join(f"{x:.1f},{y:.1f}" for x, y in pts)}"/>')
        for r in comparison_rows:
            if r["epsilon"] == eps and r["status"] != "inapplicable":
                parts.append(f'<circle cx="{px(r["t"] + 1):.1f}" cy="{py(r["bound"]):.1f}" r="2" fill="{col}"/>')
        parts.append(f'<text x="{width - pad - 120}" y="{pad + 15 * i}" font-size="11" fill="{col}">eps = {eps:g}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
