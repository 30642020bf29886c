#!/usr/bin/env python3
"""Diffusivity experiment: exact MSD vs importance-sampled MSD across lambda.

Prints a table of <|w_n|^2> for a grid of activities, with the Monte Carlo
column cross-checked against exact enumeration where the walk count allows.
"""

import argparse
from fractions import Fraction

from lww.core import LoopActivity
from lww.sampling import SamplerConfig, msd_exact, msd_importance


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--samples", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument(
        "--lambdas", default="1/4,1/2,1,2,4", help="comma-separated rationals"
    )
    args = ap.parse_args()

    lambdas = [Fraction(s) for s in args.lambdas.split(",")]
    print(f"# d={args.d} n={args.n} samples={args.samples} seed={args.seed}")
    print("lambda,msd_exact,msd_importance,stderr,sigmas")
    for lam in lambdas:
        exact = msd_exact(args.n, args.d, LoopActivity.constant(lam))
        if lam > 0:
            cfg = SamplerConfig(
                d=args.d, n=args.n, lam=lam, num_samples=args.samples, seed=args.seed
            )
            est, se = msd_importance(cfg)
            sig = abs(est - float(exact)) / se if se else 0.0
            print(f"{lam},{float(exact):.6f},{est:.6f},{se:.6f},{sig:.2f}")
        else:
            print(f"{lam},{float(exact):.6f},,,")


if __name__ == "__main__":
    main()
