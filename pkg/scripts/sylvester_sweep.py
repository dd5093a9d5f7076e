"""Seeded sweep of the two minor identities over matrix shapes and primes.

Prints one CSV row per (m, n, p, prime): identity passes and totals.
"""

import argparse
import csv
import itertools
import sys
import time

from mps import PrimeField, make_ring
from mps.determinantal import sylvester_trials


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--row-relations", type=int, default=25)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--primes", default="101,32003")
    args = ap.parse_args(argv)

    shapes = [(3, 4), (3, 5), (4, 5), (4, 6)]
    primes = [int(q) for q in args.primes.split(",")]
    out = csv.writer(sys.stdout)
    out.writerow(["m", "n", "p", "prime", "sylvester_ok", "sylvester_total", "row_ok", "row_total", "seconds"])
    failures = 0
    for (m, n), q in itertools.product(shapes, primes):
        R = make_ring("t,s", PrimeField(q))
        for p in range(1, m - 1):
            t0 = time.perf_counter()
            ok, tot, rok, rtot = sylvester_trials(R, m, n, p, args.trials, args.seed, q, args.row_relations)
            failures += (tot - ok) + (rtot - rok)
            out.writerow([m, n, p, q, ok, tot, rok, rtot, f"{time.perf_counter() - t0:.2f}"])
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
