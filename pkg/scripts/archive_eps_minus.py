#!/usr/bin/env python3
"""Sweep the main projection identity for the minus sign and archive it.

The minus-sign check runs under the same normalization conventions as the
plus sign (nothing sign-specific is adjusted); this script records its
outcome per special pair so the behaviour is documented rather than gated.

Usage: python3 scripts/archive_eps_minus.py [--max-rank N] [--out FILE]
"""

import argparse
import json
import pathlib
import sys

from dualpairs.suites import run_suite


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-rank", type=int, default=8, help="bound on rank sums")
    parser.add_argument(
        "--out",
        type=pathlib.Path,
        default=pathlib.Path("reports/thm0310_eps_minus.jsonl"),
    )
    args = parser.parse_args()

    report = run_suite("thm0310", max_rank=args.max_rank, eps=-1)
    args.out.parent.mkdir(parents=True, exist_ok=True)
    with args.out.open("w") as fh:
        for record in report.records:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
        fh.write(report.line() + "\n")
    print(
        "checked %d pairs at rank sums <= %d: %s -> %s"
        % (report.checked, args.max_rank, "all ok" if report.ok else "FAILURES", args.out)
    )
    for failure in report.failures[:10]:
        print("  counterexample:", json.dumps(failure))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
