"""Measure how tightly the sampled invariant norm tracks the operator norm.

The invariant norm of a represented function equals the operator norm of
its coefficient matrix, but the estimator only sees finitely many Sobol
candidates plus local refinement, so it sits slightly below.  This
script reports the worst ratio and the largest overshoot across random
operators for several sample budgets; it is the experiment behind the
estimator's restart count.

    python3 scripts/norm_gap.py --dim 4 --ops 50
"""

import argparse
import time

import numpy as np

from hilbertball import algebra, numerics
from hilbertball.isometries import ExtendedOperator


def sweep(dim, ops, samples, seed):
    rng = np.random.default_rng(seed)
    worst = 2.0
    over = -1.0
    t0 = time.time()
    for i in range(ops):
        G = rng.standard_normal((dim + 1, dim + 1))
        C = ExtendedOperator(G + 1j * rng.standard_normal((dim + 1, dim + 1)))
        est = algebra.norm_b(C, samples=samples, seed=i)
        op = numerics.op_norm(C.matrix)
        worst = min(worst, est / op)
        over = max(over, est - op)
    return worst, over, time.time() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--ops", type=int, default=50)
    ap.add_argument("--seed", type=int, default=60)
    ap.add_argument("--samples", type=int, nargs="+",
                    default=[256, 1024, 2048, 4096])
    args = ap.parse_args()

    print("# %d random operators, dim %d, seed %d"
          % (args.ops, args.dim, args.seed))
    print("%8s %12s %14s %8s" % ("samples", "worst ratio", "max overshoot", "secs"))
    for n in args.samples:
        worst, over, secs = sweep(args.dim, args.ops, n, args.seed)
        print("%8d %12.6f %14.2e %8.2f" % (n, worst, over, secs))


if __name__ == "__main__":
    main()
