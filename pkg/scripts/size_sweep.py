"""Compare multiplier sizes against the per-column bounds over random inputs."""

import argparse
import random
import time

from smithmult.arith import length
from smithmult.kernel import IntMat, det_exact
from smithmult.multipliers import check_sizes, smith_form_multipliers


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[2, 4, 8, 12, 16])
    ap.add_argument("--per-size", type=int, default=5)
    ap.add_argument("--bound", type=int, default=99)
    ap.add_argument("--seed", type=int, default=2)
    args = ap.parse_args(argv)

    r = random.Random(args.seed)
    print("n  avg_bits_V  avg_bits_U  log2|det|  violations  seconds")
    for n in args.sizes:
        bv = bu = bd = 0.0
        viol = 0
        t0 = time.perf_counter()
        for k in range(args.per_size):
            while True:
                a = IntMat([[r.randint(-args.bound, args.bound) for _ in range(n)] for _ in range(n)])
                d = det_exact(a)
                if d:
                    break
            t = smith_form_multipliers(a, seed=k)
            rep = check_sizes(t, a, t.lam)
            bv += rep.avg_bitlength_v
            bu += rep.avg_bitlength_u
            bd += length(d)
            viol += rep.violations
        dt = time.perf_counter() - t0
        m = args.per_size
        print(f"{n:<3d}{bv / m:11.1f}{bu / m:12.1f}{bd / m:11.1f}{viol:12d}{dt:9.2f}")


if __name__ == "__main__":
    main()
