#!/usr/bin/env python3
"""Run every identity suite and print a one-line verdict per check.

Equivalent to `lww verify all`, kept as a script so the batteries can be
launched without installing the console entry point.
"""

import sys

from lww.verify import suite_all


def main() -> int:
    results = suite_all(fast=False)
    failed = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        line = f"[{mark}] ({r.suite}) {r.name}"
        if r.detail:
            line += f" -- {r.detail}"
        print(line)
        failed += not r.passed
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
