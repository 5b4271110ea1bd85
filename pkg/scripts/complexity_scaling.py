"""Fit the iteration-complexity exponent of exact-oracle SARC.

Runs the epsilon grid of an experiment file (default: configs/sumsin_scaling.json),
then prints median T_eps per epsilon and the log-log slope.

    python scripts/complexity_scaling.py --out out/scaling
"""

import argparse
import json
from pathlib import Path

from sarc import harness
from sarc.harness import ExperimentSpec

ROOT = Path(__file__).resolve().parents[1]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--spec", default=str(ROOT / "configs" / "sumsin_scaling.json"))
    ap.add_argument("--out", default="out/scaling")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    spec = ExperimentSpec.load(args.spec)
    res = harness.run_montecarlo(spec, args.out, args.workers)
    med = harness.median_by_epsilon(res.summary_rows)
    for eps in sorted(med, reverse=True):
        print(f"eps={eps:<10.4g} median T_eps={med[eps]:g}")
    fit = harness.fit_slope(res.summary_rows)
    print(json.dumps(fit._asdict(), indent=2))
    print("reference worst-case exponent: -1.5")


if __name__ == "__main__":
    main()
