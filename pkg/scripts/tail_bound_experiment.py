"""Compare the empirical CDF of T_eps with the high-probability lower bound.

Runs a noisy Monte Carlo sweep (default: configs/noisy_quadratic.json) and
prints, per epsilon, the constants in force and every applicable t at which
the bound is evaluated.  The full table and an SVG plot land in ``--out``.

    python scripts/tail_bound_experiment.py --out out/tail
"""

import argparse
from pathlib import Path

from sarc import harness
from sarc.harness import ExperimentSpec

ROOT = Path(__file__).resolve().parents[1]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", default=str(ROOT / "configs" / "noisy_quadratic.json"))
    ap.add_argument("--out", default="out/tail")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args(argv)

    spec = ExperimentSpec.load(args.spec)
    res = harness.run_montecarlo(spec, args.out, args.workers)
    for eps in spec.epsilon_grid:
        c = res.constants[repr(eps)]
        print(f"eps={eps:g} ({c['theory']}): p={c['p']:.4f} K={c['K']:.3g} c1={c['c1']:.3g} R={c['R']:.4g} C={c['C']}")
        rows = [r for r in res.comparison_rows if r["epsilon"] == eps and r["status"] != "inapplicable"]
        if not rows:
            print("  bound inapplicable at every t")
            continue
        for r in rows[:: max(1, len(rows) // 8)]:
            print(f"  t={r['t']:<10d} empirical={r['empirical']:.3f} margin={r['margin']:.3f} bound={r['bound']:.6f} {r['status']}")
        first = rows[0]["t"]
        print(f"  bound first applies at t={first} (median T_eps={res.stats[repr(eps)]['median_T']:g})")
    print(f"check violations: {len(res.violations)}; tail-bound violations: {res.bound_violations}")


if __name__ == "__main__":
    main()
