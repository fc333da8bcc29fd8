#!/usr/bin/env python3
"""Re-run every golden reference entry and print a compact summary table.

Usage:
    python scripts/reproduce_examples.py [--json PATH]

Exits nonzero if any entry drifts outside its tolerance.
"""

import argparse
import json
import sys

from fuzzyhh import golden


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", default=None, help="also dump the raw results to this path")
    args = parser.parse_args()

    results = golden.run_all()
    width = max(len(r.entry_id) for r in results)
    failures = 0
    for res in results:
        status = "ok" if res.ok else "MISMATCH"
        print(f"{res.entry_id:<{width}}  {status:<8}  {res.verdict}")
        for chk in res.checks:
            mark = " " if chk.ok else "!"
            print(
                f"  {mark} {chk.name:<20} {chk.computed:.10g}  "
                f"(expected {chk.expected:.10g} +/- {chk.tol:g})"
            )
        failures += 0 if res.ok else 1

    if args.json:
        payload = [
            {
                "entry": r.entry_id,
                "ok": r.ok,
                "verdict": r.verdict,
                "checks": [
                    {"name": c.name, "computed": c.computed, "expected": c.expected,
                     "tol": c.tol, "note": c.note}
                    for c in r.checks
                ],
            }
            for r in results
        ]
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
        print(f"wrote {args.json}")

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
