"""Reference table for the worked examples the CLI can reproduce.

Each entry recomputes a small end-to-end scenario and diffs the results
against frozen expected values with per-check tolerances.  Printed 4-decimal
values are compared at 5e-4; independently derived roots at 1e-6 or tighter.

One deliberate exception: for the cubic-third entry the equation
1 - (3*beta)^(1/3) = beta has its root at 0.182268..., while a previously
reported value of 0.1847 circulates for the same integral.  The equation is
treated as authoritative; its root is cross-checked by the sup-min oracle,
and the 0.1847 figure is kept in the table at a 3e-3 waiver tolerance with
this note attached, flagging it as a suspected rounding slip.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from .bounds import classical_hh_preinvex, classical_hh_r_rhs, verify_fuzzy_hh
from .convexity import InvexInterval
from .expressions import function_from_expression
from .measure import RealInterval
from .sugeno import sugeno_integral

__all__ = ["GoldenCheck", "ReproResult", "entry_ids", "run_entry", "run_all"]

UNIT = RealInterval(0.0, 1.0)

# Roots of the defining fixed-point equations, frozen from 40-digit bisection.
QUARTIC_HALVED_ROOT = 0.20237689020548415  # 1 - (2b)^(1/4) = b
CUBIC_THIRD_ROOT = 0.18226832611317649  # 1 - (3b)^(1/3) = b
CUBIC_THIRD_REPORTED = 0.1847  # circulated value; see module docstring
SQUARE_HALVED_ROOT = 2.0 - math.sqrt(3.0)  # 1 - sqrt(2b) = b
THREE_SQUARE_ROOT = (7.0 - math.sqrt(13.0)) / 6.0  # 1 - sqrt(b/3) = b
CUBIC_THIRD_BOUND = (5.0 - math.sqrt(21.0)) / 2.0  # c*b + sqrt(b) = c, c = 3^-1/2


@dataclass(frozen=True)
class GoldenCheck:
    name: str
    computed: float
    expected: float
    tol: float
    note: str = ""

    @property
    def ok(self) -> bool:
        return abs(self.computed - self.expected) <= self.tol


@dataclass(frozen=True)
class ReproResult:
    entry_id: str
    title: str
    checks: tuple[GoldenCheck, ...]
    verdict: str
    verdict_ok: bool

    @property
    def ok(self) -> bool:
        return self.verdict_ok and all(c.ok for c in self.checks)


def _quartic_halved() -> ReproResult:
    f = function_from_expression("x^4/2", UNIT)
    integral = sugeno_integral(f, UNIT).value
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        comparator = classical_hh_r_rhs(float(f(0.0)), float(f(1.0)), 0.5)
    violated = integral > comparator
    return ReproResult(
        entry_id="s3-x4",
        title="x^4/2 on [0,1]: integral vs the endpoint power mean (r = 1/2)",
        checks=(
            GoldenCheck("integral", integral, 0.2023, 5e-4, "printed 4-decimal value"),
            GoldenCheck("integral-derived", integral, QUARTIC_HALVED_ROOT, 1e-9,
                        "root of 1 - (2b)^(1/4) = b"),
            GoldenCheck("classical-rhs", comparator, 0.125, 1e-12, "((0 + (1/2)^(1/2))/2)^2"),
        ),
        verdict=(
            "classical power-mean comparison violated (integral exceeds it)"
            if violated
            else "classical power-mean comparison unexpectedly holds"
        ),
        verdict_ok=violated,
    )


def _cubic_third() -> ReproResult:
    f = function_from_expression("x^3/3", UNIT)
    iv = InvexInterval(0.0, 1.0)
    report = verify_fuzzy_hh(f, iv, r=0.5)
    integral = report.integral.value
    return ReproResult(
        entry_id="s3-x3",
        title="x^3/3 on [0,1]: power-mean route bound, r = 1/2",
        checks=(
            GoldenCheck("bound", report.bound.bound, 0.2087, 5e-4, "printed 4-decimal value"),
            GoldenCheck("bound-derived", report.bound.bound, CUBIC_THIRD_BOUND, 1e-9,
                        "(5 - sqrt(21))/2"),
            GoldenCheck("integral-derived", integral, CUBIC_THIRD_ROOT, 1e-6,
                        "root of 1 - (3b)^(1/3) = b"),
            GoldenCheck("integral-reported", integral, CUBIC_THIRD_REPORTED, 3e-3,
                        "waiver: circulated value disagrees with the equation root "
                        "by 2.4e-3; suspected rounding slip, kept for the record"),
        ),
        verdict=(
            "upper bound holds (integral <= min(beta, L))"
            if report.passed
            else "upper bound violated"
        ),
        verdict_ok=report.passed,
    )


def _square_halved() -> ReproResult:
    f = function_from_expression("x^2/2", UNIT)
    integral = sugeno_integral(f, UNIT).value
    _, mean_rhs = classical_hh_preinvex(f, InvexInterval(0.0, 1.0))
    violated = integral > mean_rhs
    return ReproResult(
        entry_id="s4-x2",
        title="x^2/2 on [0,1]: integral vs the classical endpoint mean",
        checks=(
            GoldenCheck("integral", integral, 0.2679, 5e-4, "printed 4-decimal value"),
            GoldenCheck("integral-derived", integral, SQUARE_HALVED_ROOT, 1e-9, "2 - sqrt(3)"),
            GoldenCheck("classical-mean", mean_rhs, 0.25, 1e-12, "(f(0) + f(1))/2"),
        ),
        verdict=(
            "endpoint-mean side violated (integral exceeds (f(a) + f(b))/2)"
            if violated
            else "endpoint-mean side unexpectedly holds"
        ),
        verdict_ok=violated,
    )


def _three_square() -> ReproResult:
    f = function_from_expression("3*x^2", UNIT)
    integral = sugeno_integral(f, UNIT).value
    midpoint_lhs, _ = classical_hh_preinvex(f, InvexInterval(0.0, 1.0))
    violated = integral < midpoint_lhs
    return ReproResult(
        entry_id="s4-3x2",
        title="3x^2 on [0,1]: integral vs the classical midpoint value",
        checks=(
            GoldenCheck("integral", integral, 0.5657, 5e-4, "printed 4-decimal value"),
            GoldenCheck("integral-derived", integral, THREE_SQUARE_ROOT, 1e-9,
                        "(7 - sqrt(13))/6"),
            GoldenCheck("classical-midpoint", midpoint_lhs, 0.75, 1e-12, "f(1/2)"),
        ),
        verdict=(
            "midpoint side violated (integral falls below f((2a + L)/2))"
            if violated
            else "midpoint side unexpectedly holds"
        ),
        verdict_ok=violated,
    )


def _square_halved_scaled() -> ReproResult:
    f = function_from_expression("x^2/2", RealInterval(0.0, 3.0))
    iv = InvexInterval(0.0, 1.0)
    report = verify_fuzzy_hh(f, iv, alpha=0.5, m=1.0 / 3.0)
    return ReproResult(
        entry_id="s4-x2-am",
        title="x^2/2 on [0,1]: scaled-argument route bound, (alpha, m) = (1/2, 1/3)",
        checks=(
            GoldenCheck("bound", report.bound.bound, 0.75, 1e-6,
                        "root of 1.5*sqrt(1 - b) = b (exact 3/4)"),
            GoldenCheck("integral-derived", report.integral.value, SQUARE_HALVED_ROOT, 1e-9,
                        "2 - sqrt(3)"),
        ),
        verdict=(
            "upper bound holds (integral <= min(beta, L))"
            if report.passed
            else "upper bound violated"
        ),
        verdict_ok=report.passed,
    )


_ENTRIES: dict[str, Callable[[], ReproResult]] = {
    "s3-x4": _quartic_halved,
    "s3-x3": _cubic_third,
    "s4-x2": _square_halved,
    "s4-3x2": _three_square,
    "s4-x2-am": _square_halved_scaled,
}


def entry_ids() -> tuple[str, ...]:
    return tuple(_ENTRIES)


def run_entry(entry_id: str) -> ReproResult:
    try:
        runner = _ENTRIES[entry_id]
    except KeyError:
        raise ValueError(
            f"unknown entry {entry_id!r}; known: {', '.join(_ENTRIES)}"
        ) from None
    return runner()


def run_all() -> list[ReproResult]:
    return [runner() for runner in _ENTRIES.values()]
