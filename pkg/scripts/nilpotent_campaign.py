#!/usr/bin/env python3
"""Counterexample search over random square-zero matrices.

Samples matrices with T^2 = 0 and checks, for every nonzero sample, that the
real and imaginary Hermitian parts are both indefinite and that neither
numerical range admits a certified zero-free disk.  A certified violation of
either fact would be a counterexample to the obstruction that blocks normal
square roots of such operators; the expected outcome is zero violations.

Usage:
    python3 scripts/nilpotent_campaign.py [--trials 2000] [--dims 2 3 4 5 6] [--seed 0]
"""

import argparse
from collections import Counter

import numpy as np

from normalroots.theoremlab import check_zero_square, sample_nilpotent


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=2000)
    ap.add_argument("--dims", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    violations = []
    least_re = least_im = np.inf
    per_dim = Counter()
    for trial in range(args.trials):
        dim = int(rng.choice(args.dims))
        per_dim[dim] += 1
        T = sample_nilpotent(dim, seed=int(rng.integers(0, 2**31)))
        report = check_zero_square(T)
        lo, hi = report.re_margins
        least_re = min(least_re, min(-lo, hi))
        lo, hi = report.im_margins
        least_im = min(least_im, min(-lo, hi))
        if report.violation is not None:
            violations.append((trial, dim, report.violation))

    print(f"trials: {args.trials}  dims: {dict(sorted(per_dim.items()))}")
    print(f"least two-sided spectral margin, real part: {least_re:.3e}")
    print(f"least two-sided spectral margin, imag part: {least_im:.3e}")
    if violations:
        print(f"VIOLATIONS: {len(violations)}")
        for trial, dim, msg in violations[:10]:
            print(f"  trial {trial} (dim {dim}): {msg}")
        raise SystemExit(2)
    print("violations: 0")


if __name__ == "__main__":
    main()
