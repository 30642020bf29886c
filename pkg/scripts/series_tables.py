#!/usr/bin/env python3
"""Tabulate chi coefficients, z_c ratio columns, and the A/D estimates for a
grid of activities. Everything exact until the final float report."""

import argparse
from fractions import Fraction

from lww.core import GraphCtx, LoopActivity
from lww.enumeration import chi_series
from lww.analysis import (
    amplitude_A_estimate,
    diffusion_D_estimate,
    zc_ratio_estimate,
)


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--d", type=int, default=2)
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--lambdas", default="0,1/2,1,2")
    args = ap.parse_args()

    ctx = GraphCtx.lattice(args.d)
    for s in args.lambdas.split(","):
        lam = Fraction(s)
        act = LoopActivity.constant(lam)
        chi = chi_series(act, args.nmax, ctx)
        print(f"## lambda = {lam}")
        print("chi coefficients:", [str(c) for c in chi.coeffs])
        zc = zc_ratio_estimate(chi)
        print("z_c per-order ratios:", [(n, round(v, 6)) for n, v in zc.per_order])
        print(f"z_c estimate: {zc.value:.6f} ({zc.method})")
        a_est = amplitude_A_estimate(act, args.nmax, ctx)
        d_est = diffusion_D_estimate(act, args.nmax, ctx)
        print(f"A estimate: {a_est.value:.6f}  sensitivity: {a_est.per_order}")
        print(f"D estimate: {d_est.value:.6f}  sensitivity: {d_est.per_order}")
        print()


if __name__ == "__main__":
    main()
