"""Closed-form crest-exponent equations and their roots.

Two transcendental relations govern the local expansion of the deviation
from the Bernoulli ceiling at the crest: the leading exponent solves
1 + 2 cos(pi b) = 0 (so b = 2/3), and the subleading exponent solves

    (m + 2/3) tan(pi m / 2 + pi / 3) + m tan(pi m / 2) + 2 / sqrt(3) = 0,

whose first root is m = 2/3 and whose second root sits near 1.469.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "PoleProximityError",
    "LogCaseError",
    "ExponentRoots",
    "grant_lhs",
    "find_exponents",
    "predicted_action_coefficient",
]

_POLE_GUARD = 1e-8


class PoleProximityError(ValueError):
    """Evaluation requested too close to a tangent pole."""


class LogCaseError(ValueError):
    """The requested exponent falls in the logarithmic marginal case p = 1."""


def _distance_mod(x: float, offset: float, period: float) -> float:
    """Distance from x to the lattice offset + period * Z."""
    r = (x - offset) % period
    return min(r, period - r)


def grant_lhs(mu: float) -> float:
    """Left side of the subleading-exponent equation.

    Poles sit at mu = 1/3 (mod 2) and mu = 1 (mod 2); evaluation within
    1e-8 of either raises PoleProximityError.
    """
    mu = float(mu)
    if _distance_mod(mu, 1.0 / 3.0, 2.0) < _POLE_GUARD:
        raise PoleProximityError(f"mu={mu} is within {_POLE_GUARD} of a pole at 1/3 mod 2")
    if _distance_mod(mu, 1.0, 2.0) < _POLE_GUARD:
        raise PoleProximityError(f"mu={mu} is within {_POLE_GUARD} of a pole at 1 mod 2")
    return (
        (mu + 2.0 / 3.0) * np.tan(np.pi * mu / 2.0 + np.pi / 3.0)
        + mu * np.tan(np.pi * mu / 2.0)
        + 2.0 / np.sqrt(3.0)
    )


def _bisect(fn, lo: float, hi: float, tol: float = 1e-14) -> float:
    f_lo = fn(lo)
    f_hi = fn(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0:
        raise ValueError(f"root not bracketed on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0:
            hi, f_hi = mid, f_mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)


def _scan_roots(fn, lo: float, hi: float, samples: int = 4096) -> list[float]:
    """All sign-change roots of a finite continuous function on [lo, hi]."""
    xs = np.linspace(lo, hi, samples)
    fs = np.array([fn(x) for x in xs])
    roots = []
    for i in range(len(xs) - 1):
        if fs[i] == 0.0:
            roots.append(float(xs[i]))
        elif fs[i] * fs[i + 1] < 0:
            roots.append(_bisect(fn, float(xs[i]), float(xs[i + 1])))
    return roots


@dataclass(frozen=True)
class ExponentRoots:
    """Roots of the two crest-exponent equations."""

    beta_root: float
    grant_first_root: float
    grant_roots: list[float]
    beta_roots_below_half: list[float] = field(default_factory=list)


def find_exponents() -> ExponentRoots:
    """Locate the leading and subleading crest exponents by bisection.

    beta_root is the unique root of 1 + 2 cos(pi b) in (1/2, 1).
    grant_roots holds the roots of :func:`grant_lhs` inside (2/3, 2), found
    on the pole-free brackets (2/3, 1) and (1, 2) with 1e-6 guard bands;
    the analytically known first root 2/3 is reported separately.  The scan
    of (0, 1/2) confirms the leading equation has no root there.
    """
    beta_eq = lambda b: 1.0 + 2.0 * np.cos(np.pi * b)
    beta_root = _bisect(beta_eq, 0.5, 1.0)
    below_half = _scan_roots(beta_eq, 1e-6, 0.5 - 1e-6, samples=1024)

    guard = 1e-6
    roots: list[float] = []
    for lo, hi in ((2.0 / 3.0 + guard, 1.0 - guard), (1.0 + guard, 2.0 - guard)):
        roots.extend(_scan_roots(grant_lhs, lo, hi))
    return ExponentRoots(
        beta_root=beta_root,
        grant_first_root=2.0 / 3.0,
        grant_roots=roots,
        beta_roots_below_half=below_half,
    )


def predicted_action_coefficient(p: float) -> float:
    """Leading coefficient of |u|^{p-1} in the deep-water operator acting on |u|^p.

    Closed form -p tan(pi p / 2), valid on (0, 1) and (1, 2); the two
    regimes have distinct derivations but share this expression through
    cot((p - 1) pi / 2) = -tan(pi p / 2).  At p = 1 the action is
    logarithmic and handled by the log-case check instead.
    """
    p = float(p)
    if abs(p - 1.0) < 1e-12:
        raise LogCaseError(
            "p = 1 produces a (2/pi) log|u| action; use log_case_check"
        )
    if not (0.0 < p < 2.0):
        raise ValueError(f"exponent must lie in (0, 1) or (1, 2), got {p}")
    return -p * np.tan(np.pi * p / 2.0)
