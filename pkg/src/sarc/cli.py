"""Command line entry point ``sarc``.

Exit codes: 0 success, 1 invalid input, 2 per-iteration check violations detected.
"""

from __future__ import annotations

import argparse
import json
import sys

from sarc import harness
from sarc.harness import ExperimentSpec


def _load(path) -> ExperimentSpec:
    return ExperimentSpec.load(path)


def cmd_run(args) -> int:
    spec = _load(args.spec)
    out = harness.run_single(spec, args.seed, args.out)
    for eps, tr in zip(spec.epsilon_grid, out.traces):
        print(f"eps={eps:g} iterations={len(tr)} T_eps={tr.T_eps}")
    print(f"violations: {len(out.violations)}")
    return out.exit_status


def cmd_montecarlo(args) -> int:
    spec = _load(args.spec)
    res = harness.run_montecarlo(spec, args.out, args.workers)
    print(json.dumps(res.stats, indent=2, sort_keys=True))
    print(f"check violations: {len(res.violations)}; tail-bound violations: {res.bound_violations}")
    return res.exit_status


def cmd_constants(args) -> int:
    spec = _load(args.spec)
    problem, oracles = spec.build()
    out = []
    for eps in spec.epsilon_grid:
        c = harness.constants_for(spec, problem, oracles, eps)
        out.append(dict(c.to_dict(), theory=harness.theory_label(c)))
    print(json.dumps(out if len(out) > 1 else out[0], indent=2, sort_keys=True))
    return 0


def cmd_slope(args) -> int:
    fit = harness.fit_slope(harness.read_summary_csv(args.summary))
    print(json.dumps(fit._asdict(), indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sarc", description="Stochastic adaptive cubic regularization experiments")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="single seeded run over the epsilon grid of an experiment file")
    r.add_argument("--spec", required=True)
    r.add_argument("--seed", type=int, required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_run)

    m = sub.add_parser("montecarlo", help="seeds 0..seed_count-1 for every epsilon")
    m.add_argument("--spec", required=True)
    m.add_argument("--out", required=True)
    m.add_argument("--workers", type=int, default=None, help="worker processes (default: all cores)")
    m.set_defaults(func=cmd_montecarlo)

    c = sub.add_parser("constants", help="print theory constants as JSON")
    c.add_argument("--spec", required=True)
    c.set_defaults(func=cmd_constants)

    s = sub.add_parser("slope", help="fit log median T_eps against log epsilon")
    s.add_argument("--summary", required=True)
    s.set_defaults(func=cmd_slope)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
