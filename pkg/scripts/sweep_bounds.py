#!/usr/bin/env python3
"""Sweep the power-mean parameter for a family of integrands and tabulate
integral vs bound, as a quick picture of how tight the bound runs.

Usage:
    python scripts/sweep_bounds.py [--expr "x^2"] [--rs 0.25,0.5,1,2,3] [--out sweep.csv]
"""

import argparse
import csv
import sys

from fuzzyhh.bounds import BoundInputs, NoRoot, r_preinvex_bound
from fuzzyhh.expressions import function_from_expression
from fuzzyhh.measure import RealInterval
from fuzzyhh.sugeno import sugeno_integral


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--expr", default="x^2")
    parser.add_argument("--rs", default="0.25,0.5,1,2,3")
    parser.add_argument("--lo", type=float, default=0.0)
    parser.add_argument("--hi", type=float, default=1.0)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    A = RealInterval(args.lo, args.hi)
    f = function_from_expression(args.expr, A)
    integral = sugeno_integral(f, A).value
    fa, fend = float(f(A.lo)), float(f(A.hi))

    rows = []
    for r_text in args.rs.split(","):
        r = float(r_text)
        try:
            res = r_preinvex_bound(BoundInputs(fa=fa, fend=fend, eta_len=A.length(), r=r))
            rows.append({"param": r, "integral": integral, "beta": res.beta,
                         "bound": res.bound, "case": res.case.value})
        except NoRoot:
            rows.append({"param": r, "integral": integral, "beta": "", "bound": "",
                         "case": "no-root"})

    sink = open(args.out, "w", encoding="utf-8", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(sink, fieldnames=["param", "integral", "beta", "bound", "case"])
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            sink.close()
            print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
