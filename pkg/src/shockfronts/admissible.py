"""Admissible jump states and the equal-potential pairing.

In the shock-family regime (P(1) > P(0)) every front jumps from a left state
phi_r in [beta, 1] down to a right state phi_l in [0, alpha] with equal
potential, P(phi_r) = P(phi_l).  Since P is strictly increasing on both outer
bands, the pairing eta: phi_l -> phi_r is a strictly increasing bijection
between

    I = { u in [0, alpha] : P(u) in [P(beta), P(1)] and [P(0), P(alpha)] }

and its image J = eta(I) inside [beta, 1].  `admissible_set` computes the
interval endpoints, `eta_of` / `zeta_of` evaluate the pairing and its
inverse by bracketed root finding on the monotone restrictions of P, and
`step_fronts` enumerates the zero-speed piecewise constant fronts that are
all that remains when P(1) = P(0).

Equal potential is the same thing as the equal-area rule for the
diffusivity: the integral of D between the paired states vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, RegimeError
from .model import ModelSpec, Regime, classify

__all__ = [
    "AdmissibleSet",
    "StepFront",
    "admissible_set",
    "eta_of",
    "zeta_of",
    "pair_table",
    "step_fronts",
]


@dataclass(frozen=True)
class AdmissibleSet:
    """Endpoints of I = [I_lo, I_hi] and of its image J = [J_lo, J_hi].

    Invariants: I_lo = 0 exactly when P(0) >= P(beta), I_hi = alpha exactly
    when P(alpha) <= P(1), J_lo = beta exactly when P(beta) >= P(0), and
    J_hi = 1 exactly when P(alpha) >= P(1).
    """

    model: ModelSpec
    I_lo: float
    I_hi: float
    J_lo: float
    J_hi: float
    pairing_tol: float

    def eta(self, phi_l: float) -> float:
        return eta_of(self, phi_l)

    def zeta(self, phi_r: float) -> float:
        return zeta_of(self, phi_r)


@dataclass(frozen=True)
class StepFront:
    """A zero-speed piecewise constant front: decreasing levels, one jump
    point per adjacent pair (conventionally at 0, or 0 and 1)."""

    levels: tuple[float, ...]
    jump_points: tuple[float, ...]
    speed: float = 0.0


def _invert_increasing(
    f: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    df: Callable[[float], float] | None = None,
) -> float:
    """Solve f(u) = target for the strictly increasing restriction f|[lo, hi].

    Bracketed Brent iteration, then one guarded Newton polish step when the
    derivative is supplied.  The target is clamped to the bracket range to
    absorb roundoff at the endpoints.
    """
    flo = f(lo) - target
    fhi = f(hi) - target
    if flo >= 0.0:
        return lo
    if fhi <= 0.0:
        return hi
    u = float(brentq(lambda x: f(x) - target, lo, hi, xtol=1e-15, rtol=8.9e-16))
    if df is not None:
        d = df(u)
        if d != 0.0 and math.isfinite(d):
            step = (f(u) - target) / d
            if abs(step) < 1e-8:
                u = min(max(u - step, lo), hi)
    return u


def admissible_set(m: ModelSpec, *, pairing_tol: float | None = None) -> AdmissibleSet:
    """Compute the admissible interval of right states and its image.

    Raises
    ------
    RegimeError
        If the model is not in the shock-family regime.
    """
    rc = classify(m)
    if rc.kind is not Regime.SHOCK_FAMILY:
        raise RegimeError(f"admissible set requires the ShockFamily regime, got {rc.kind.value}")

    P = m.P
    P0, Pa, Pb, P1 = P(0.0), P(m.alpha), P(m.beta), P(1.0)
    if pairing_tol is None:
        pairing_tol = 1e-11 * max(abs(P1 - P0), 1e-3)
    eq = rc.eq_tol

    I_lo = 0.0 if P0 >= Pb - eq else _invert_increasing(P, Pb, 0.0, m.alpha, m.D)
    I_hi = m.alpha if Pa <= P1 + eq else _invert_increasing(P, P1, 0.0, m.alpha, m.D)
    J_lo = m.beta if Pb >= P0 - eq else _invert_increasing(P, P0, m.beta, 1.0, m.D)
    J_hi = 1.0 if Pa >= P1 - eq else _invert_increasing(P, Pa, m.beta, 1.0, m.D)

    return AdmissibleSet(model=m, I_lo=float(I_lo), I_hi=float(I_hi),
                         J_lo=float(J_lo), J_hi=float(J_hi),
                         pairing_tol=float(pairing_tol))


def _check_in(lo: float, hi: float, x: float, what: str) -> None:
    slack = 1e-12 * (1.0 + abs(hi))
    if not (lo - slack <= x <= hi + slack):
        raise DomainError(f"{what} = {x!r} outside [{lo!r}, {hi!r}]")


def eta_of(s: AdmissibleSet, phi_l: float) -> float:
    """Right-band partner of phi_l: the v in [beta, 1] with P(v) = P(phi_l).

    Strictly increasing in phi_l, with eta(I_lo) = J_lo and eta(I_hi) = J_hi.
    """
    _check_in(s.I_lo, s.I_hi, phi_l, "phi_l")
    m = s.model
    phi_l = min(max(phi_l, s.I_lo), s.I_hi)
    v = _invert_increasing(m.P, m.P(phi_l), m.beta, 1.0, m.D)
    return float(min(max(v, s.J_lo), s.J_hi))


def zeta_of(s: AdmissibleSet, phi_r: float) -> float:
    """Inverse pairing: the u in I with P(u) = P(phi_r), for phi_r in J."""
    _check_in(s.J_lo, s.J_hi, phi_r, "phi_r")
    m = s.model
    phi_r = min(max(phi_r, s.J_lo), s.J_hi)
    u = _invert_increasing(m.P, m.P(phi_r), 0.0, m.alpha, m.D)
    return float(min(max(u, s.I_lo), s.I_hi))


def pair_table(s: AdmissibleSet, n: int = 512) -> np.ndarray:
    """Monotone table of the pairing: rows (phi_l, phi_r, P value), n rows
    uniform in phi_l over I.  Used for CSV export and sweep seeding."""
    us = np.linspace(s.I_lo, s.I_hi, n)
    out = np.empty((n, 3))
    for i, u in enumerate(us):
        v = eta_of(s, float(u))
        out[i] = (u, v, s.model.P(float(u)))
    return out


def step_fronts(m: ModelSpec, eq_tol: float | None = None) -> list[StepFront]:
    """Zero-speed piecewise constant fronts in the balanced regime.

    Returns [] unless P(1) = P(0) (within eq_tol).  In the balanced regime
    the single-jump front 1 -> 0 always exists; when additionally
    P(gamma) = P(0), the two-jump front 1 -> gamma -> 0 (jumps at 0 and 1)
    exists as well.  Under the standing sign hypotheses no other level
    chains are possible, so the enumeration is complete.
    """
    rc = classify(m, eq_tol)
    if rc.kind is not Regime.PIECEWISE_CONSTANT_ONLY:
        return []
    fronts = [StepFront(levels=(1.0, 0.0), jump_points=(0.0,))]
    if rc.P_gamma_eq_P0:
        fronts.append(StepFront(levels=(1.0, m.gamma, 0.0), jump_points=(0.0, 1.0)))
    return fronts
