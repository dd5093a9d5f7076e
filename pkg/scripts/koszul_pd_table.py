"""Grade of I and projective dimensions of the Koszul homology modules
for generic (p+1) x n matrices, next to the n - p and n - p + 1 columns."""

import argparse
import sys
import time

from mps import PrimeField
from mps.linkage import prop57_instance_check


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--prime", type=int, default=32003)
    ap.add_argument("--cases", default="1:2,1:3,2:3,1:4", help="Comma-separated p:n pairs.")
    args = ap.parse_args(argv)

    field = PrimeField(args.prime)
    print(f"{'p':>2} {'n':>2} {'grade I':>7} {'pd values':<14} {'n-p':>4} {'n-p+1':>6} {'perfect':>8} {'secs':>6}")
    for case in args.cases.split(","):
        p, n = (int(v) for v in case.split(":"))
        t0 = time.perf_counter()
        v = prop57_instance_check(p, n, field)
        pds = v.pd_values()
        print(f"{p:>2} {n:>2} {v.grade_I:>7} {str(pds):<14} {n - p:>4} {n - p + 1:>6} "
              f"{str(v.all_perfect()):>8} {time.perf_counter() - t0:>6.2f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
