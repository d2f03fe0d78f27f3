"""Unique propagation speed for each admissible jump pair.

For an admissible right state phi_l with partner phi_r = eta(phi_l), the
wave speed is pinned by requiring the two z-branches to satisfy the
Rankine-Hugoniot-type flux matching across the jump.  Packaged as the jump
functional

    F(c, phi_l) = z_c(phi_r) - z_c(phi_l) + c (phi_r - phi_l),

which is continuous and strictly increasing in c with limits -inf / +inf,
so it has exactly one zero c*(phi_l).  At the zero,

    c* = -(z_c(phi_r) - z_c(phi_l)) / (phi_r - phi_l).

`solve_speed` brackets the zero by geometric expansion from c = 0 and
refines by bisection (the contractual method: only continuity and strict
monotonicity of F are guaranteed).  `speed_bounds` evaluates the explicit
two-sided a-priori bounds

    -2 sqrt(sup over [0,alpha) of avg of -gD/(alpha - .))
        < c* <
     2 sqrt(sup over (beta,1] of avg of  gD/(. - beta)),

valid whenever P(beta) >= P(0) and P(alpha) <= P(1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .admissible import AdmissibleSet, eta_of
from .errors import BracketFailure, PreconditionError
from .model import ModelSpec, classify
from .zfield import z_endpoint_lower, z_endpoint_upper

__all__ = [
    "SpeedResult",
    "SpeedBounds",
    "jump_functional",
    "solve_speed",
    "speed_bounds",
]

TOL_C = 1e-9
C_CAP = 1e6


@dataclass(frozen=True)
class SpeedResult:
    """Solved speed for one jump pair.

    bracket is the final bisection bracket (c_lo, c_hi) with
    F(c_lo) < 0 < F(c_hi); F_residual is F evaluated at c_star; z_l and z_r
    are the branch values at the jump states for c_star.
    """

    phi_l: float
    phi_r: float
    c_star: float
    bracket: tuple[float, float]
    F_residual: float
    z_l: float
    z_r: float


@dataclass(frozen=True)
class SpeedBounds:
    c_minus: float
    c_plus: float
    sup_lower_integral: float
    sup_upper_integral: float


def _F_parts(m: ModelSpec, c: float, phi_l: float, phi_r: float,
             rtol: float, atol: float) -> tuple[float, float, float]:
    """(F, z_l, z_r) at speed c.  The boundary values z(0) = z(1) = 0 are
    imposed exactly, never integrated for."""
    z_r = 0.0 if phi_r >= 1.0 - 1e-13 else z_endpoint_upper(m, c, phi_r, rtol=rtol, atol=atol)
    z_l = 0.0 if phi_l <= 1e-13 else z_endpoint_lower(m, c, phi_l, rtol=rtol, atol=atol)
    return z_r - z_l + c * (phi_r - phi_l), z_l, z_r


def jump_functional(m: ModelSpec, adm: AdmissibleSet, c: float, phi_l: float,
                    *, rtol: float = 1e-10, atol: float = 1e-12) -> float:
    """Evaluate F(c, phi_l).  Strictly increasing in c and, on the interior
    of the admissible interval, strictly increasing in phi_l."""
    phi_r = eta_of(adm, phi_l)
    F, _, _ = _F_parts(m, c, phi_l, phi_r, rtol, atol)
    return F


def solve_speed(
    m: ModelSpec,
    adm: AdmissibleSet,
    phi_l: float,
    tol_c: float = TOL_C,
    *,
    c_cap: float = C_CAP,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> SpeedResult:
    """Unique speed c*(phi_l) by bracketing and bisection.

    The bracket grows geometrically from c = 0 (+-1, +-2, +-4, ...) in the
    direction indicated by the sign of F(0); BracketFailure is raised if no
    sign change appears by |c| = c_cap.  Bisection then contracts the
    bracket to width tol_c.
    """
    phi_r = eta_of(adm, phi_l)

    def F(c: float) -> float:
        val, _, _ = _F_parts(m, c, phi_l, phi_r, rtol, atol)
        return val

    F0 = F(0.0)
    if F0 == 0.0:
        lo, hi = -tol_c, tol_c
        if not (F(lo) < 0.0 < F(hi)):
            lo, hi = -1.0, 1.0
    elif F0 < 0.0:
        lo, flo = 0.0, F0
        step = 1.0
        while True:
            hi = step
            fhi = F(hi)
            if fhi > 0.0:
                break
            lo, flo = hi, fhi
            step *= 2.0
            if step > c_cap:
                raise BracketFailure(f"no sign change of F up to c = {c_cap:g}")
    else:
        hi, fhi = 0.0, F0
        step = -1.0
        while True:
            lo = step
            flo = F(lo)
            if flo < 0.0:
                break
            hi, fhi = lo, flo
            step *= 2.0
            if step < -c_cap:
                raise BracketFailure(f"no sign change of F down to c = {-c_cap:g}")

    while hi - lo > tol_c:
        mid = 0.5 * (lo + hi)
        if F(mid) <= 0.0:
            lo = mid
        else:
            hi = mid

    c_star = 0.5 * (lo + hi)
    F_res, z_l, z_r = _F_parts(m, c_star, phi_l, phi_r, rtol, atol)
    return SpeedResult(phi_l=float(phi_l), phi_r=float(phi_r), c_star=float(c_star),
                       bracket=(float(lo), float(hi)), F_residual=float(F_res),
                       z_l=float(z_l), z_r=float(z_r))


def _sup_average(
    h_regular,
    h_subst,
    lo: float,
    hi: float,
    *,
    from_lo_end: bool,
    grid_n: int,
    refine: int,
) -> float:
    """sup over the grid of (1/(length)) * cumulative integral of h from the
    degenerate end, with the substitution sigma = end +- t^2 on the first
    segment to sidestep the 0/0 evaluation at the end itself.

    h_regular(sigma) is the plain integrand; h_subst(t) the substituted one
    (already including the Jacobian).  from_lo_end selects which endpoint is
    degenerate.
    """

    def averages(pts: np.ndarray, base: float, base_at: float) -> np.ndarray:
        vals = np.empty(len(pts))
        acc = base
        prev = base_at
        for i, x in enumerate(pts):
            if from_lo_end:
                seg, _ = quad(h_regular, prev, x, limit=100)
            else:
                seg, _ = quad(h_regular, x, prev, limit=100)
            acc += seg
            prev = x
            length = (x - lo) if from_lo_end else (hi - x)
            vals[i] = acc / length
        return vals

    end = lo if from_lo_end else hi
    first = lo + (hi - lo) / grid_n if from_lo_end else hi - (hi - lo) / grid_n
    t_first = math.sqrt(abs(first - end))
    base, _ = quad(h_subst, 0.0, t_first, limit=100)

    if from_lo_end:
        pts = np.linspace(first, hi, grid_n)
    else:
        pts = np.linspace(first, lo, grid_n)
    vals = averages(pts, base, first)
    k = int(vals.argmax())

    # refine around the argmax with a grid refine times denser
    lo_k = pts[max(k - 1, 0)]
    hi_k = pts[min(k + 1, len(pts) - 1)]
    a, b = min(lo_k, hi_k), max(lo_k, hi_k)
    if b > a:
        fine = np.linspace(a, b, 2 * refine + 1)
        if not from_lo_end:
            fine = fine[::-1]
        # rebuild the cumulative integral up to the refinement window start
        start = fine[0]
        if from_lo_end:
            lead, _ = quad(h_regular, first, start, limit=200)
        else:
            lead, _ = quad(h_regular, start, first, limit=200)
        fvals = averages(fine[1:], base + lead, start)
        length = (start - lo) if from_lo_end else (hi - start)
        fvals = np.append((base + lead) / length, fvals)
        return float(max(vals.max(), fvals.max()))
    return float(vals.max())


def speed_bounds(m: ModelSpec, *, grid_n: int = 1024, refine: int = 4) -> SpeedBounds:
    """Two-sided a-priori bounds on every admissible speed.

    Preconditions P(beta) >= P(0) and P(alpha) <= P(1) are required (the
    bounds are not valid one-sided); PreconditionError otherwise.

    The sup of the averaged weighted integral is taken over a uniform grid
    (grid_n points), each cumulative integral by adaptive quadrature, with
    the integrable endpoint handled by the substitution sigma = end +- t^2;
    the neighborhood of the argmax is re-swept `refine` times denser.
    """
    rc = classify(m)
    if not rc.P_beta_ge_P0:
        raise PreconditionError("speed bounds require P(beta) >= P(0)")
    if not rc.P_alpha_le_P1:
        raise PreconditionError("speed bounds require P(alpha) <= P(1)")

    alpha, beta = m.alpha, m.beta
    D, g = m.D, m.g

    def h_up(s: float) -> float:
        return g(s) * D(s) / (s - beta)

    def h_up_t(t: float) -> float:
        s = beta + t * t
        return 2.0 * g(s) * D(s) / t if t > 0.0 else 0.0

    def h_dn(s: float) -> float:
        return -g(s) * D(s) / (alpha - s)

    def h_dn_t(t: float) -> float:
        s = alpha - t * t
        return 2.0 * (-g(s)) * D(s) / t if t > 0.0 else 0.0

    sup_up = _sup_average(h_up, h_up_t, beta, 1.0, from_lo_end=True,
                          grid_n=grid_n, refine=refine)
    sup_dn = _sup_average(h_dn, h_dn_t, 0.0, alpha, from_lo_end=False,
                          grid_n=grid_n, refine=refine)
    c_plus = 2.0 * math.sqrt(max(sup_up, 0.0))
    c_minus = -2.0 * math.sqrt(max(sup_dn, 0.0))
    return SpeedBounds(c_minus=c_minus, c_plus=c_plus,
                       sup_lower_integral=float(sup_dn), sup_upper_integral=float(sup_up))
