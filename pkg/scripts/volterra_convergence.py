#!/usr/bin/env python3
"""Track the operator norm of the discretized integration operator.

For each grid size n the lower-triangular quadrature matrix is built, its
operator norm computed with the Jacobi eigensolver, and the gap to the
continuum limit 2/pi reported.  The spectral radius is 1/(2n) exactly
(triangular matrix with constant diagonal), so only the norm needs numerics.

Usage:
    python3 scripts/volterra_convergence.py [--sizes 16 32 64 128] [--json out.json]
"""

import argparse
import json
import time

import numpy as np

from normalroots.linalg import cartesian_parts, hermitian_eigen, operator_norm
from normalroots.theoremlab import volterra_matrix

LIMIT = 2.0 / np.pi


def survey(sizes):
    rows = []
    for n in sizes:
        t0 = time.perf_counter()
        V = volterra_matrix(n)
        norm = operator_norm(V)
        re_min = float(hermitian_eigen(cartesian_parts(V).re).eigenvalues[0])
        rows.append(
            {
                "n": n,
                "norm": norm,
                "gap_to_limit": LIMIT - norm,
                "spectral_radius": 1.0 / (2 * n),
                "re_lambda_min": re_min,
                "seconds": time.perf_counter() - t0,
            }
        )
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[16, 32, 64, 128, 256])
    ap.add_argument("--json", help="optional path for a JSON dump of the table")
    args = ap.parse_args()

    rows = survey(sorted(args.sizes))
    print(f"continuum limit 2/pi = {LIMIT:.10f}")
    print(f"{'n':>6} {'norm':>14} {'gap':>12} {'rho':>12} {'re_min':>11} {'sec':>7}")
    for r in rows:
        print(
            f"{r['n']:>6} {r['norm']:>14.10f} {r['gap_to_limit']:>12.3e} "
            f"{r['spectral_radius']:>12.3e} {r['re_lambda_min']:>11.1e} "
            f"{r['seconds']:>7.2f}"
        )
    gaps = [r["gap_to_limit"] for r in rows]
    monotone = all(a > b > 0 for a, b in zip(gaps, gaps[1:]))
    print(f"monotone approach from below: {monotone}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"limit": LIMIT, "rows": rows, "monotone": monotone}, fh, indent=2)
        print(f"wrote {args.json}")


if __name__ == "__main__":
    main()
