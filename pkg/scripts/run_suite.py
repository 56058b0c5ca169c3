"""Run every check group on every shipped example at its default cutoff.

    python3 scripts/run_suite.py [--examples a1,a2] [--jobs 4]
"""

import argparse
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from dixmier.config import CHECK_GROUPS
from dixmier.examples import DEFAULT_CUTOFF
from dixmier.suite import run_group


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--examples", default="a1,a1-invariants,a2,a2-invariants")
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)
    names = [n for n in args.examples.split(",") if n]
    tasks = [(n, g, DEFAULT_CUTOFF[n]) for n in names for g in CHECK_GROUPS]
    start = time.perf_counter()
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(run_group, *zip(*tasks)))
    else:
        results = [run_group(*t) for t in tasks]
    ok = True
    for (name, group, cutoff), res in zip(tasks, results):
        ok &= res["passed"]
        print(f"{'PASS' if res['passed'] else 'FAIL'} {name:15s} {group:10s} cutoff {cutoff}")
    print(f"{len(tasks)} groups in {time.perf_counter() - start:.1f}s")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
