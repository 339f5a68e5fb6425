"""Estimate how often one perturbation fails to give a trivial Hermite form."""

import argparse
import random

from smithmult.kernel import IntMat, det_exact
from smithmult.massager import smith_massager
from smithmult.multipliers import _attempt, lambda_bound


def random_nonsingular(r, n, bound):
    while True:
        a = IntMat([[r.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if det_exact(a):
            return a


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--matrices", type=int, default=5)
    ap.add_argument("--trials", type=int, default=100, help="perturbations per matrix")
    ap.add_argument("--bound", type=int, default=99)
    ap.add_argument("--lam-scale", type=float, default=1.0,
                    help="multiply the default lambda by this factor")
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args(argv)

    r = random.Random(args.seed)
    total = fails = 0
    for k in range(args.matrices):
        a = random_nonsingular(r, args.n, args.bound)
        pair2 = smith_massager(2 * a)
        lam = max(1, int(lambda_bound(pair2.S.halved(), args.n) * args.lam_scale))
        f = sum(_attempt(a, pair2, pair2.S, lam, args.seed * 1000 + k, i)[1] is None
                for i in range(args.trials))
        print(f"matrix {k}: lambda={lam} not_trivial={f}/{args.trials}")
        total += args.trials
        fails += f
    print(f"overall NotTrivial rate: {fails / total:.3f}")


if __name__ == "__main__":
    main()
