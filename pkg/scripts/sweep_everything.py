#!/usr/bin/env python3
"""Run every verification suite at its default bounds and print a summary.

Set DUALPAIRS_WORKERS to parallelize the larger sweeps across processes.

Usage: python3 scripts/sweep_everything.py [--quick]
"""

import argparse
import sys
import time

from dualpairs.suites import SUITES, run_suite

QUICK_BOUNDS = {"max_rank": 6}


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--quick", action="store_true", help="small rank bounds")
    args = parser.parse_args()

    bad = 0
    for name in sorted(SUITES):
        t0 = time.time()
        bounds = dict(QUICK_BOUNDS) if args.quick else {}
        report = run_suite(name, **bounds)
        status = "ok" if report.ok else "FAIL"
        print(
            "%-16s %6d checked  %s  (%.1fs)"
            % (name, report.checked, status, time.time() - t0)
        )
        for failure in report.failures[:5]:
            print("    ", failure)
        bad += not report.ok
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
