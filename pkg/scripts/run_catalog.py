"""Run the built-in catalog and write text and JSON reports.

    python scripts/run_catalog.py --out reports/ --jobs 4
"""

import argparse
import sys
import time
from pathlib import Path

from mps import catalog as cat
from mps.config import RunConfig
from mps.report import emit_report


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("reports"))
    ap.add_argument("--filter", default=None, help="Name glob or substring.")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--budget", type=int, default=20)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args(argv)

    cfg = RunConfig(seed=args.seed, budget=args.budget, jobs=args.jobs)
    entries = cat.select(cat.load_catalog(), args.filter)
    t0 = time.perf_counter()
    reports = cat.run_catalog(entries, cfg.seed, cfg.budget, cfg.jobs)
    elapsed = time.perf_counter() - t0

    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "catalog.txt").write_bytes(emit_report(reports, "text"))
    (args.out / "catalog.json").write_bytes(emit_report(reports, "json"))
    print(emit_report(reports, "text").decode().splitlines()[-1])
    print(f"{len(entries)} entries in {elapsed:.1f}s, reports in {args.out}/")
    return cat.exit_code(reports)


if __name__ == "__main__":
    sys.exit(main())
