"""Sampling-based certification of generalized-convexity hypotheses.

Each checker draws (u, v, t) triples from K x K x [0, 1] with a seeded
generator and either certifies the defining inequality on every draw or
returns the most violated draw as a concrete witness.  Certification is
statistical, not symbolic: the function is a black box, and these checks gate
the hypotheses the bound routines rest on while producing reproducible
counterexamples.

All checkers consume the same sample stream for a given (K, samples, seed),
so hypotheses that degenerate into one another (r = 1, m = 1, alpha = 1)
produce bitwise-identical reports.  The endpoints t = 0 and t = 1 are always
included deterministically; violations concentrate there surprisingly often.

Inequality slack is 1e-9; closed-set membership slack is 1e-12 (floating
point evaluation of path maps lands marginally outside closed intervals, and
path points are clipped back in before the function is evaluated).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .measure import RealInterval, ScalarFunction, SET_SLACK

__all__ = [
    "ConvexityError",
    "DomainEscape",
    "NonPositiveFunction",
    "EtaMap",
    "AFFINE_ETA",
    "scaled_eta",
    "InvexInterval",
    "Witness",
    "HypothesisReport",
    "check_invex",
    "check_condition_c",
    "check_preinvex",
    "check_r_preinvex",
    "check_m_preinvex",
    "check_alpha_m_preinvex",
]

INEQ_SLACK = 1e-9


class ConvexityError(Exception):
    """Base class for hypothesis-checker failures."""


class DomainEscape(ConvexityError):
    """A point the check must evaluate lies outside the declared domain."""


class NonPositiveFunction(ConvexityError):
    """r <= 0 power-mean hypotheses require a strictly positive function."""


@dataclass(frozen=True)
class EtaMap:
    """Path map eta(v, u); paths run u + t * eta(v, u) for t in [0, 1].

    ``apply`` must broadcast over numpy arrays.  ``domain`` restricts where
    eta itself can be evaluated (None means everywhere); a path point outside
    K is a finding for the invexity check, not an evaluation error.
    """

    apply: Callable
    name: str = "custom"
    domain: RealInterval | None = None


AFFINE_ETA = EtaMap(apply=lambda v, u: v - u, name="affine")


def scaled_eta(factor: float) -> EtaMap:
    """eta(v, u) = factor * (v - u); fails the consistency identities for factor != 1."""
    return EtaMap(apply=lambda v, u: factor * (v - u), name=f"scaled[{factor:g}]")


@dataclass(frozen=True)
class InvexInterval:
    """The interval [a, a + eta_len] with eta_len = eta(b, a) > 0."""

    a: float
    eta_len: float

    def __post_init__(self) -> None:
        if not self.eta_len > 0:
            raise ValueError("eta_len must be positive")

    @property
    def end(self) -> float:
        return self.a + self.eta_len

    @property
    def domain(self) -> RealInterval:
        return RealInterval(self.a, self.end)


@dataclass(frozen=True)
class Witness:
    """One concrete violating draw.

    ``lhs`` and ``rhs`` are the two sides of the broken relation; for the
    membership check lhs is the escape distance and rhs is 0.  ``kind`` names
    the relation, and ``t2`` carries the second path parameter of the
    two-parameter eta-consistency identity (None elsewhere).
    """

    u: float
    v: float
    t: float
    lhs: float
    rhs: float
    kind: str = "preinvex"
    t2: float | None = None


@dataclass(frozen=True)
class HypothesisReport:
    holds: bool
    samples_checked: int
    witness: Witness | None
    max_violation: float


def _draw(K: RealInterval, samples: int, seed: int):
    """Shared sample stream: identical across checkers for a given seed."""
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng(seed)
    u = rng.uniform(K.lo, K.hi, samples)
    v = rng.uniform(K.lo, K.hi, samples)
    t = rng.uniform(0.0, 1.0, samples)
    t[0] = 0.0
    if samples >= 2:
        t[1] = 1.0
    return u, v, t


def _path_points(f: ScalarFunction, u, t, eta_uv, kind: str):
    """u + t*eta(v, u), checked against f's domain and clipped back in."""
    path = u + t * eta_uv
    lo, hi = f.domain.lo, f.domain.hi
    outside = (path < lo - SET_SLACK) | (path > hi + SET_SLACK)
    if np.any(outside):
        i = int(np.argmax(outside))
        raise DomainEscape(
            f"{kind}: path point {path[i]:g} leaves the declared domain "
            f"[{lo:g}, {hi:g}] (u={u[i]:g}, t={t[i]:g})"
        )
    return np.clip(path, lo, hi)


def _inequality_report(u, v, t, lhs, rhs, kind: str) -> HypothesisReport:
    violation = lhs - rhs
    i = int(np.argmax(violation))
    worst = float(violation[i])
    if worst <= INEQ_SLACK:
        return HypothesisReport(True, len(t), None, worst)
    witness = Witness(
        u=float(u[i]), v=float(v[i]), t=float(t[i]),
        lhs=float(lhs[i]), rhs=float(rhs[i]), kind=kind,
    )
    return HypothesisReport(False, len(t), witness, worst)


def check_invex(
    K: RealInterval, eta: EtaMap, samples: int = 100_000, seed: int = 0
) -> HypothesisReport:
    """Certify u + t*eta(v, u) in K for sampled (u, v, t).

    A path point outside K (beyond 1e-12 slack) is the violation itself; the
    witness records the escape distance as lhs against rhs = 0.
    """
    u, v, t = _draw(K, samples, seed)
    path = u + t * eta.apply(v, u)
    escape = np.maximum(K.lo - path, path - K.hi)
    i = int(np.argmax(escape))
    worst = float(escape[i])
    if worst <= SET_SLACK:
        return HypothesisReport(True, samples, None, worst)
    witness = Witness(
        u=float(u[i]), v=float(v[i]), t=float(t[i]),
        lhs=worst, rhs=0.0, kind="invex-membership",
    )
    return HypothesisReport(False, samples, witness, worst)


def check_condition_c(
    K: RealInterval, eta: EtaMap, samples: int = 100_000, seed: int = 0
) -> HypothesisReport:
    """Check the three path-consistency identities of the map eta.

    For draws (x, y, t, t1, t2), with e = eta(x, y):

        eta(y, y + t*e) = -t*e
        eta(x, y + t*e) = (1 - t)*e
        eta(y + t2*e, y + t1*e) = (t2 - t1)*e

    each to 1e-9.  These identities are what make a path map behave affinely
    along its own paths; the affine map satisfies them identically.  Raises
    ``DomainEscape`` only if an intermediate point leaves eta's own declared
    domain (the identities are otherwise still evaluable formulas).
    """
    y, x, t = _draw(K, samples, seed)
    rng = np.random.default_rng(seed + 1)
    t1 = rng.uniform(0.0, 1.0, samples)
    t2 = rng.uniform(0.0, 1.0, samples)

    e = eta.apply(x, y)
    base = y + t * e
    p1 = y + t1 * e
    p2 = y + t2 * e
    if eta.domain is not None:
        for pts in (base, p1, p2):
            outside = (pts < eta.domain.lo - SET_SLACK) | (pts > eta.domain.hi + SET_SLACK)
            if np.any(outside):
                i = int(np.argmax(outside))
                raise DomainEscape(
                    f"eta-consistency: intermediate point {pts[i]:g} leaves eta's domain"
                )

    devs = (
        np.abs(eta.apply(y, base) - (-t * e)),
        np.abs(eta.apply(x, base) - (1.0 - t) * e),
        np.abs(eta.apply(p2, p1) - (t2 - t1) * e),
    )
    worst = -np.inf
    where = (0, 0)
    for k, dev in enumerate(devs):
        i = int(np.argmax(dev))
        if float(dev[i]) > worst:
            worst = float(dev[i])
            where = (k, i)
    if worst <= INEQ_SLACK:
        return HypothesisReport(True, samples, None, worst)
    k, i = where
    lhs_vals = (
        eta.apply(y[i], y[i] + t[i] * e[i]),
        eta.apply(x[i], y[i] + t[i] * e[i]),
        eta.apply(y[i] + t2[i] * e[i], y[i] + t1[i] * e[i]),
    )
    rhs_vals = (-t[i] * e[i], (1.0 - t[i]) * e[i], (t2[i] - t1[i]) * e[i])
    witness = Witness(
        u=float(y[i]), v=float(x[i]),
        t=float(t[i] if k < 2 else t1[i]),
        lhs=float(lhs_vals[k]), rhs=float(rhs_vals[k]),
        kind=f"eta-consistency-{k + 1}",
        t2=float(t2[i]) if k == 2 else None,
    )
    return HypothesisReport(False, samples, witness, worst)


def check_preinvex(
    f: ScalarFunction,
    K: RealInterval,
    eta: EtaMap,
    samples: int = 100_000,
    seed: int = 0,
) -> HypothesisReport:
    """f(u + t*eta(v, u)) <= (1 - t)*f(u) + t*f(v) on sampled draws.

    Assumes invexity of K under eta has been certified separately; a path
    point that leaves f's domain raises ``DomainEscape``.
    """
    u, v, t = _draw(K, samples, seed)
    path = _path_points(f, u, t, eta.apply(v, u), "preinvex")
    lhs = np.asarray(f.evaluate(path), dtype=float)
    rhs = (1.0 - t) * np.asarray(f.evaluate(u), dtype=float) + t * np.asarray(
        f.evaluate(v), dtype=float
    )
    return _inequality_report(u, v, t, lhs, rhs, "preinvex")


def check_r_preinvex(
    f: ScalarFunction,
    K: RealInterval,
    eta: EtaMap,
    r: float,
    samples: int = 100_000,
    seed: int = 0,
) -> HypothesisReport:
    """Power-mean form: the arithmetic mean is replaced by the r-th power mean.

    r != 0 uses ((1-t)*f(u)**r + t*f(v)**r)**(1/r); r = 0 uses the geometric
    mean f(u)**(1-t) * f(v)**t.  For r <= 0 the function must be strictly
    positive on the sample (``NonPositiveFunction`` otherwise).
    """
    u, v, t = _draw(K, samples, seed)
    path = _path_points(f, u, t, eta.apply(v, u), "r-preinvex")
    fu = np.asarray(f.evaluate(u), dtype=float)
    fv = np.asarray(f.evaluate(v), dtype=float)
    if r <= 0 and (np.any(fu <= 0.0) or np.any(fv <= 0.0)):
        raise NonPositiveFunction(
            f"r = {r:g} <= 0 requires f > 0 on K; a sampled value was <= 0"
        )
    lhs = np.asarray(f.evaluate(path), dtype=float)
    if r != 0:
        rhs = ((1.0 - t) * fu**r + t * fv**r) ** (1.0 / r)
    else:
        rhs = fu ** (1.0 - t) * fv**t
    return _inequality_report(u, v, t, lhs, rhs, "r-preinvex")


def check_alpha_m_preinvex(
    f: ScalarFunction,
    K: RealInterval,
    eta: EtaMap,
    alpha: float,
    m: float,
    samples: int = 100_000,
    seed: int = 0,
) -> HypothesisReport:
    """f(u + t*eta(v, u)) <= (1 - t**alpha)*f(u) + m * t**alpha * f(v/m).

    alpha and m must lie in (0, 1].  f's declared domain must contain v/m for
    every v in K (``DomainEscape`` otherwise) - this is the reason functions
    carry a domain wider than the integration interval.
    """
    if not 0 < alpha <= 1:
        raise ValueError("alpha must lie in (0, 1]")
    if not 0 < m <= 1:
        raise ValueError("m must lie in (0, 1]")
    u, v, t = _draw(K, samples, seed)
    path = _path_points(f, u, t, eta.apply(v, u), "alpha-m-preinvex")
    scaled = v / m
    lo, hi = f.domain.lo, f.domain.hi
    outside = (scaled < lo - SET_SLACK) | (scaled > hi + SET_SLACK)
    if np.any(outside):
        i = int(np.argmax(outside))
        raise DomainEscape(
            f"alpha-m-preinvex: v/m = {scaled[i]:g} leaves the declared domain "
            f"[{lo:g}, {hi:g}]; declare a wider one"
        )
    scaled = np.clip(scaled, lo, hi)
    t_alpha = t**alpha
    lhs = np.asarray(f.evaluate(path), dtype=float)
    rhs = (1.0 - t_alpha) * np.asarray(f.evaluate(u), dtype=float) + m * t_alpha * np.asarray(
        f.evaluate(scaled), dtype=float
    )
    return _inequality_report(u, v, t, lhs, rhs, "alpha-m-preinvex")


def check_m_preinvex(
    f: ScalarFunction,
    K: RealInterval,
    eta: EtaMap,
    m: float,
    samples: int = 100_000,
    seed: int = 0,
) -> HypothesisReport:
    """The alpha = 1 special case of the scaled-argument hypothesis."""
    return check_alpha_m_preinvex(f, K, eta, alpha=1.0, m=m, samples=samples, seed=seed)
