"""Reconstruction of the full discontinuous wave profile.

On each outer band the profile is recovered from the solved z-branch by
quadrature of

    d xi / d phi = D(phi) / z(phi)  < 0,

anchored so that both band pieces meet the jump at xi = xi_s: the upper
piece decreases from 1 down to phi_r as xi -> xi_s^-, the lower piece
continues from phi_l down to 0 for xi > xi_s.  When the pair saturates
(phi_r = 1 or phi_l = 0) the corresponding piece is a constant state and is
emitted as a short flat ramp.

Tails are truncated where |phi - equilibrium| < tail_cut (a convention, not
a decay-rate claim) and the saturation flags record whether the remaining
tail integral converges, that is whether the equilibrium is attained at
finite xi rather than asymptotically.

`verify_weak` re-checks the built profile against the traveling wave
equation in its weak form: interior residual of P(phi)'' + c phi' + g(phi)
by finite differences on each band (never across the jump), the two jump
conditions (zero P-jump and flux matching), and monotonicity.
`characteristic_speeds` evaluates lambda = c + D g / z on the bands; the
front is entropic in the sense that lambda >= c on the lower band and
lambda <= c on the upper band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .errors import ConsistencyError
from .model import ModelSpec
from .speed import SpeedResult
from .zfield import ZSolution, eval_z, solve_lower, solve_upper

__all__ = [
    "ShockProfile",
    "WeakReport",
    "ReflectedProfile",
    "build_profile",
    "verify_weak",
    "characteristic_speeds",
    "reflect_profile",
]

TAIL_CUT = 1e-6
SAMPLES_PER_BAND = 512
CONST_PAD = 5.0


@dataclass(frozen=True)
class ShockProfile:
    """Glued two-piece profile with a single jump at xi_s.

    upper_* arrays are sorted by xi ascending and end exactly at
    (xi_s, phi_r); lower_* arrays start exactly at (xi_s, phi_l), which
    represents the right limit phi(xi_s+).  The *_z arrays carry the
    z-branch values at the samples (identically 0 on a constant piece).
    """

    xi_s: float
    phi_l: float
    phi_r: float
    c: float
    upper_xi: np.ndarray
    upper_phi: np.ndarray
    upper_z: np.ndarray
    lower_xi: np.ndarray
    lower_phi: np.ndarray
    lower_z: np.ndarray
    reaches_1_at_finite_xi: bool
    reaches_0_at_finite_xi: bool


@dataclass(frozen=True)
class WeakReport:
    """verify_weak output.

    sup_residual is the interior weak-form residual scaled by
    (1 + max over samples of |P''| + |c phi'| + |g|), taken over samples
    with min(phi, 1 - phi) >= the equilibrium margin; sup_residual_raw is
    the unscaled sup over the same samples, and sup_residual_tail the
    scaled sup over all interior samples including the tail corners.
    jump_defect_P is |P(phi_r) - P(phi_l)|, jump_defect_flux is
    |(z + c phi)(xi_s-) - (z + c phi)(xi_s+)|.
    """

    sup_residual: float
    sup_residual_raw: float
    sup_residual_tail: float
    jump_defect_P: float
    jump_defect_flux: float
    monotonicity_violations: int
    n_interior: int


@dataclass(frozen=True)
class ReflectedProfile:
    """Increasing-orientation mirror: phi(-xi) travels at speed -c for the
    same equation.  samples_* concatenate both bands, xi ascending, with the
    jump (up from phi_before to phi_after) at xi_s."""

    xi_s: float
    c: float
    phi_before: float
    phi_after: float
    samples_xi: np.ndarray
    samples_phi: np.ndarray


def _tail_converges(f, endpoint: float, first_gap: float, side: int) -> bool:
    """True when the improper integral of f toward `endpoint` converges.

    Compares quadrature increments over a geometric ladder of shrinking
    windows; summable (geometrically decaying) increments mean the
    equilibrium is attained at finite xi.
    """
    deltas = [first_gap * 0.25 ** k for k in range(4)]
    incs = []
    for d_out, d_in in zip(deltas[:-1], deltas[1:]):
        a = endpoint - side * d_out
        b = endpoint - side * d_in
        val, _ = quad(f, min(a, b), max(a, b), limit=100)
        incs.append(abs(val))
    if incs[0] == 0.0:
        return True
    ratios = [incs[i + 1] / max(incs[i], 1e-300) for i in range(len(incs) - 1)]
    return max(ratios) < 0.6


def _band_xi(f, grid: np.ndarray, anchor_index: int, xi_anchor: float) -> np.ndarray:
    """xi over an ascending phi grid by cumulative segment quadrature of f,
    anchored at grid[anchor_index]."""
    n = len(grid)
    xi = np.empty(n)
    xi[anchor_index] = xi_anchor
    for j in range(anchor_index + 1, n):
        seg, _ = quad(f, grid[j - 1], grid[j], limit=200)
        xi[j] = xi[j - 1] + seg
    for j in range(anchor_index - 1, -1, -1):
        seg, _ = quad(f, grid[j], grid[j + 1], limit=200)
        xi[j] = xi[j + 1] - seg
    return xi


def build_profile(
    m: ModelSpec,
    sr: SpeedResult,
    *,
    xi_s: float = 0.0,
    samples_per_band: int = SAMPLES_PER_BAND,
    tail_cut: float = TAIL_CUT,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    flux_tol: float | None = None,
) -> ShockProfile:
    """Reconstruct the profile for a solved jump pair and speed.

    Raises ConsistencyError if the pair is not equal-potential (the
    structural jump condition).  The flux jump condition is reported by
    verify_weak rather than enforced here, unless flux_tol is given; this
    keeps deliberately perturbed speeds constructible as negative controls.
    """
    phi_l, phi_r, c = sr.phi_l, sr.phi_r, sr.c_star
    P_gap = abs(m.P(phi_r) - m.P(phi_l))
    scale = 1.0 + abs(m.P(1.0) - m.P(0.0))
    if P_gap > 1e-8 * scale:
        raise ConsistencyError(f"pair is not equal-potential: |P jump| = {P_gap:.3e}")

    if phi_r >= 1.0 - 1e-12:
        up_xi = np.array([xi_s - CONST_PAD, xi_s])
        up_phi = np.array([1.0, 1.0])
        up_z = np.zeros(2)
        reaches_1 = True
    else:
        zu = solve_upper(m, c, rtol=rtol, atol=atol)
        grid = np.linspace(phi_r, 1.0 - tail_cut, samples_per_band)
        f_up = lambda u: m.D(u) / eval_z(zu, u)
        xi_up = _band_xi(f_up, grid, 0, xi_s)
        up_xi = xi_up[::-1].copy()
        up_phi = grid[::-1].copy()
        up_z = eval_z(zu, up_phi)
        reaches_1 = _tail_converges(f_up, 1.0, tail_cut * 100.0, +1)

    if phi_l <= 1e-12:
        lo_xi = np.array([xi_s, xi_s + CONST_PAD])
        lo_phi = np.zeros(2)
        lo_z = np.zeros(2)
        reaches_0 = True
    else:
        zl = solve_lower(m, c, rtol=rtol, atol=atol)
        grid = np.linspace(tail_cut, phi_l, samples_per_band)
        f_lo = lambda u: m.D(u) / eval_z(zl, u)
        xi_lo = _band_xi(f_lo, grid, len(grid) - 1, xi_s)
        lo_xi = xi_lo[::-1].copy()
        lo_phi = grid[::-1].copy()
        lo_z = eval_z(zl, lo_phi)
        reaches_0 = _tail_converges(f_lo, 0.0, tail_cut * 100.0, -1)

    if flux_tol is not None:
        defect = abs((up_z[-1] + c * phi_r) - (lo_z[0] + c * phi_l))
        if defect > flux_tol:
            raise ConsistencyError(f"flux jump defect {defect:.3e} exceeds {flux_tol:.3e}")

    return ShockProfile(xi_s=float(xi_s), phi_l=float(phi_l), phi_r=float(phi_r),
                        c=float(c), upper_xi=up_xi, upper_phi=up_phi, upper_z=up_z,
                        lower_xi=lo_xi, lower_phi=lo_phi, lower_z=lo_z,
                        reaches_1_at_finite_xi=bool(reaches_1),
                        reaches_0_at_finite_xi=bool(reaches_0))


def _fd3(x: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Second-order first and second derivatives of f at interior nodes of
    the nonuniform grid x."""
    h1 = x[1:-1] - x[:-2]
    h2 = x[2:] - x[1:-1]
    denom = h1 * h2 * (h1 + h2)
    d1 = (-h2 * h2 * f[:-2] + (h2 * h2 - h1 * h1) * f[1:-1] + h1 * h1 * f[2:]) / denom
    d2 = 2.0 * (h2 * f[:-2] - (h1 + h2) * f[1:-1] + h1 * f[2:]) / denom
    return d1, d2


def _fd5(x: np.ndarray, f: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Quartic-fit first and second derivatives of f at interior nodes of
    the nonuniform grid x (sliding 5-point windows).

    Third-order accurate for the second derivative on general grids, which
    keeps the residual check truncation-dominated with enough convergence
    rate for the tolerance-halving experiment to show a clear reduction.
    """
    n = x.size
    ii = np.arange(1, n - 1)
    i0 = np.clip(ii - 2, 0, n - 5)
    idx = i0[:, None] + np.arange(5)[None, :]
    d = x[idx] - x[ii][:, None]
    scale = np.abs(d).max(axis=1, keepdims=True)
    d = d / scale
    V = d[..., None] ** np.arange(5)
    VT = np.swapaxes(V, 1, 2)
    m = ii.size
    rhs = np.tile([[0.0, 0.0], [1.0, 0.0], [0.0, 2.0],
                   [0.0, 0.0], [0.0, 0.0]], (m, 1, 1))
    w = np.linalg.solve(VT, rhs)
    fw = f[idx]
    s = scale[:, 0]
    return (w[:, :, 0] * fw).sum(axis=1) / s, (w[:, :, 1] * fw).sum(axis=1) / (s * s)


def verify_weak(m: ModelSpec, p: ShockProfile,
                *, equilibrium_margin: float = 0.01) -> WeakReport:
    """A-posteriori weak-form check of a built profile.

    The interior residual uses P(phi) directly, never D(phi) phi', so it is
    meaningful on every band regardless of where D changes sign; the jump
    conditions are checked from the side limits at xi_s.

    The outermost sample on the equilibrium side of each band is dropped
    before differencing: it sits across the asymptotic-tail gap (or on a
    saturation corner), where a polynomial stencil measures the gap
    geometry rather than the equation.  The headline sup additionally
    restricts to samples with min(phi, 1 - phi) >= equilibrium_margin.
    Along the exponential tails, uniform phi sampling yields xi gaps that
    approach ln2/lambda no matter how fine the grid, so stencil truncation
    there cannot shrink under refinement; inside the fixed margin the local
    spacing scales with the phi increment and the sup converges at the
    stencil order.  The unrestricted value is still reported as
    sup_residual_tail.
    """
    sup_raw = 0.0
    sup_tail = 0.0
    scale_terms = 1.0
    n_interior = 0
    for xi, phi, trim in ((p.upper_xi[1:], p.upper_phi[1:], p.upper_xi.size > 4),
                          (p.lower_xi[:-1], p.lower_phi[:-1], p.lower_xi.size > 4)):
        if len(xi) < 5 or xi[-1] - xi[0] <= 0.0 or not trim:
            continue
        Pv = np.array([m.P(float(u)) for u in phi])
        gv = np.array([m.g(float(u)) for u in phi])
        dphi, _ = _fd5(xi, phi)
        _, d2P = _fd5(xi, Pv)
        resid = np.abs(d2P + p.c * dphi + gv[1:-1])
        sup_tail = max(sup_tail, float(resid.max()))
        inner = np.minimum(phi[1:-1], 1.0 - phi[1:-1]) >= equilibrium_margin
        # fall back to the whole band rather than silently reporting zero
        band = float(resid[inner].max()) if inner.any() else float(resid.max())
        sup_raw = max(sup_raw, band)
        local = np.abs(d2P) + np.abs(p.c * dphi) + np.abs(gv[1:-1])
        scale_terms = max(scale_terms, 1.0 + float(local.max()))
        n_interior += len(resid)

    jump_P = abs(m.P(p.phi_r) - m.P(p.phi_l))
    jump_flux = abs((p.upper_z[-1] + p.c * p.phi_r) - (p.lower_z[0] + p.c * p.phi_l))

    seq = np.concatenate([p.upper_phi, p.lower_phi])
    violations = int(np.sum(np.diff(seq) > 1e-12))

    return WeakReport(sup_residual=sup_raw / scale_terms, sup_residual_raw=sup_raw,
                      sup_residual_tail=sup_tail / scale_terms,
                      jump_defect_P=float(jump_P), jump_defect_flux=float(jump_flux),
                      monotonicity_violations=violations, n_interior=n_interior)


def characteristic_speeds(m: ModelSpec, p: ShockProfile, *, z_floor: float = 1e-9) -> list[tuple[float, float]]:
    """Characteristic speeds lambda = c + D g / z at the profile samples.

    Samples with |z| <= z_floor (equilibria, constant pieces, touchdown
    whiskers) are excluded.  The returned list is sorted by phi; on the
    lower band lambda >= c and on the upper band lambda <= c, which is the
    entropic configuration (characteristics run into the jump, tangentially
    at most).
    """
    out: list[tuple[float, float]] = []
    for phi, z in ((p.lower_phi, p.lower_z), (p.upper_phi, p.upper_z)):
        for u, zv in zip(phi, z):
            if abs(zv) <= z_floor:
                continue
            lam = p.c + m.D(float(u)) * m.g(float(u)) / float(zv)
            out.append((float(u), lam))
    out.sort(key=lambda t: t[0])
    return out


def reflect_profile(p: ShockProfile) -> ReflectedProfile:
    """Mirror to the increasing orientation: psi(xi) = phi(-xi), speed -c.

    The jump at -xi_s rises from phi_l (left limit) to phi_r; all samples
    are re-sorted by the reflected xi.
    """
    xi = np.concatenate([p.lower_xi, p.upper_xi])
    phi = np.concatenate([p.lower_phi, p.upper_phi])
    order = np.argsort(-xi, kind="stable")
    return ReflectedProfile(xi_s=-p.xi_s, c=-p.c,
                            phi_before=p.phi_l, phi_after=p.phi_r,
                            samples_xi=-xi[order], samples_phi=phi[order])
