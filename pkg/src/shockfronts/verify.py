"""Named runtime invariant checks over a loaded model.

Each check exercises one structural property of the pipeline on the model
at hand and reports a pass/fail verdict with a measured detail string.
run_all executes every applicable check and returns the results in a fixed
order, so the CLI can emit a deterministic machine-readable report and
exit on the first failure by name.

The checks deliberately favor independent routes over reuse: the lower
z-branch is re-integrated directly from its own singular endpoint rather
than through the reflection used by the solver, closed-form values are
compared against root-finding, and profile slopes are re-differenced from
the stored samples.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad, solve_ivp

from . import biomodel
from .admissible import AdmissibleSet, admissible_set, eta_of, zeta_of
from .errors import PreconditionError, WavefrontError
from .model import ModelSpec, build_model, classify
from .modelio import ModelBundle
from .profile import (ShockProfile, build_profile, characteristic_speeds,
                      verify_weak)
from .speed import SpeedResult, jump_functional, solve_speed, speed_bounds
from .zfield import ZSolution, collocation_residual, eval_z, solve_lower, solve_upper

EQUAL_AREA_SEED = 20260815
EQUAL_AREA_N = 50


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


class _Ctx:
    """Lazily shared intermediate results between checks."""

    def __init__(self, bundle: ModelBundle):
        self.bundle = bundle
        self.m = bundle.model
        self._adm: AdmissibleSet | None = None
        self._speeds: dict[float, SpeedResult] = {}
        self._profile: ShockProfile | None = None

    @property
    def adm(self) -> AdmissibleSet:
        if self._adm is None:
            self._adm = admissible_set(self.m)
        return self._adm

    def speed_at(self, phi_l: float) -> SpeedResult:
        if phi_l not in self._speeds:
            self._speeds[phi_l] = solve_speed(self.m, self.adm, phi_l)
        return self._speeds[phi_l]

    @property
    def mid_phi(self) -> float:
        return 0.5 * (self.adm.I_lo + self.adm.I_hi)

    @property
    def profile(self) -> ShockProfile:
        if self._profile is None:
            self._profile = build_profile(self.m, self.speed_at(self.mid_phi))
        return self._profile


def _shifted(m: ModelSpec, k: float) -> ModelSpec:
    P = m.P
    return dataclasses.replace(m, P=lambda u: P(u) + k)


def _check_find_zeros(ctx: _Ctx) -> str:
    m = ctx.m
    vals = (abs(m.D(m.alpha)), abs(m.D(m.beta)), abs(m.g(m.gamma)))
    assert max(vals) <= 1e-8, f"root residuals {vals}"
    return f"|D(a)|,|D(b)|,|g(g)| = {vals[0]:.2e},{vals[1]:.2e},{vals[2]:.2e}"


def _check_potential_extrema(ctx: _Ctx) -> str:
    m = ctx.m
    # D is linear through its roots, so sign flips at +-1e-9 sit far above
    # both evaluation noise and the root-location tolerance; P increments
    # at +-1e-6 are quadratic (D'/2 * h^2) and need rounding slack.
    h = 1e-9
    assert m.D(m.alpha - h) > 0.0 > m.D(m.alpha + h), \
        "D does not flip + to - across alpha"
    assert m.D(m.beta - h) < 0.0 < m.D(m.beta + h), \
        "D does not flip - to + across beta"
    hp = 1e-6
    slack_a = 64.0 * np.finfo(float).eps * (1.0 + abs(m.P(m.alpha)))
    slack_b = 64.0 * np.finfo(float).eps * (1.0 + abs(m.P(m.beta)))
    ok_max = (m.P(m.alpha - hp) <= m.P(m.alpha) + slack_a
              and m.P(m.alpha + hp) <= m.P(m.alpha) + slack_a)
    ok_min = (m.P(m.beta - hp) >= m.P(m.beta) - slack_b
              and m.P(m.beta + hp) >= m.P(m.beta) - slack_b)
    assert ok_max, "P(alpha) is not a local max against +-1e-6 neighbors"
    assert ok_min, "P(beta) is not a local min against +-1e-6 neighbors"
    return "D flips sign at alpha, beta; P(alpha) local max, P(beta) local min"


def _check_classify_shift(ctx: _Ctx) -> str:
    flags = lambda rc: (rc.P_beta_ge_P0, rc.P_alpha_le_P1, rc.P_gamma_eq_P0)
    base = classify(ctx.m)
    for k in (-5.0, 0.3, 1e6):
        rc = classify(_shifted(ctx.m, k))
        assert rc.kind == base.kind, f"kind changed under P+{k}"
        assert flags(rc) == flags(base), f"flags changed under P+{k}"
    return f"kind={base.kind.name} invariant under P+{{-5, 0.3, 1e6}}"


def _check_dp_consistency(ctx: _Ctx) -> str:
    m = ctx.m
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(5):
        a, b = np.sort(rng.uniform(0.0, 1.0, size=2))
        val, err = quad(m.D, a, b, epsabs=1e-11, epsrel=1e-11, limit=200)
        worst = max(worst, abs(m.P(b) - m.P(a) - val) - 10 * err)
    assert worst <= 1e-9, f"P increments disagree with integral of D by {worst:.2e}"
    return f"max |P(b)-P(a) - int D| <= {max(worst, 0.0):.2e} on 5 random intervals"


def _check_equal_area(ctx: _Ctx) -> str:
    m, adm = ctx.m, ctx.adm
    rng = np.random.default_rng(EQUAL_AREA_SEED)
    us = rng.uniform(adm.I_lo, adm.I_hi, size=EQUAL_AREA_N)
    grid = np.linspace(0.0, 1.0, 2001)
    d_inf = max(abs(m.D(float(u))) for u in grid)
    worst = 0.0
    for u in us:
        v = eta_of(adm, float(u))
        val, _ = quad(m.D, float(u), v, epsabs=1e-12, epsrel=1e-12, limit=200)
        worst = max(worst, abs(val))
    assert worst <= 1e-8 * d_inf, f"equal-area defect {worst:.2e} > 1e-8*||D||"
    return f"max |int_u^eta(u) D| = {worst:.2e} over {EQUAL_AREA_N} pairs (bound {1e-8 * d_inf:.2e})"


def _check_eta_monotone_inverse(ctx: _Ctx) -> str:
    adm = ctx.adm
    us = np.linspace(adm.I_lo, adm.I_hi, 64)
    vs = np.array([eta_of(adm, float(u)) for u in us])
    assert (np.diff(vs) > 0).all(), "eta not strictly increasing on 64-point grid"
    back = max(abs(zeta_of(adm, float(v)) - float(u)) for u, v in zip(us, vs))
    assert back <= 1e-10, f"zeta(eta(u)) deviates from u by {back:.2e}"
    return f"eta strictly increasing; max |zeta(eta(u)) - u| = {back:.2e}"


def _check_admissible_shift(ctx: _Ctx) -> str:
    adm = ctx.adm
    shifted = admissible_set(_shifted(ctx.m, 0.3))
    dev = max(abs(shifted.I_lo - adm.I_lo), abs(shifted.I_hi - adm.I_hi),
              abs(shifted.J_lo - adm.J_lo), abs(shifted.J_hi - adm.J_hi))
    assert dev <= 1e-9, f"admissible set moved by {dev:.2e} under P+0.3"
    return f"endpoints moved <= {dev:.2e} under P+0.3"


def _check_exclusion(ctx: _Ctx) -> str:
    m, adm = ctx.m, ctx.adm
    if adm.I_hi >= m.alpha - 1e-12:
        return "not applicable: I reaches alpha"
    P1 = m.P(1.0)
    margin = min(m.P(float(u)) - P1
                 for u in np.linspace(adm.I_hi + 1e-6, m.alpha, 16))
    assert margin > 0, f"some u > I_hi still has P(u) <= P(1) by {margin:.2e}"
    return f"P(u) - P(1) >= {margin:.2e} on (I_hi, alpha]"


def _check_z_monotone_c(ctx: _Ctx) -> str:
    m = ctx.m
    for solve, lo, hi, sign, label in ((solve_upper, m.beta, 1.0, +1, "upper"),
                                       (solve_lower, 0.0, m.alpha, -1, "lower")):
        sols = [solve(m, c) for c in (-1.0, 0.0, 1.0)]
        span = hi - lo
        for p in np.linspace(lo + 0.05 * span, hi - 0.05 * span, 3):
            vals = [eval_z(s, float(p)) for s in sols]
            d = sign * np.diff(vals)
            assert (d > 0).all(), f"{label} branch not monotone in c at phi={p:.4f}: {vals}"
    return "z(c=-1,0,1) strictly ordered at 3x3 probe points, both branches"


def _check_z_residual(ctx: _Ctx) -> str:
    m = ctx.m
    worst_ratio = 0.0
    for c in (-1.0, 0.5, 2.0):
        for solve in (solve_upper, solve_lower):
            zs = solve(m, c)
            r = collocation_residual(m, zs)
            bound = 1e-7 * (1.0 + abs(c))
            worst_ratio = max(worst_ratio, r / bound)
            assert r <= bound, f"residual {r:.3e} > {bound:.1e} at c={c}, {zs.branch}"
    return f"max residual / bound = {worst_ratio:.3f} over 6 solves"


def _direct_lower_z(m: ModelSpec, c: float, pts: np.ndarray) -> np.ndarray:
    """Integrate the lower-branch problem from its own singular end.

    Independent of the solver's reflection route: starts at phi = eps with
    the linear asymptote z ~ s*phi, s the nonpositive root of
    s^2 + c s + L0 = 0, L0 the slope of D*g at 0.
    """
    Dg = lambda u: m.D(u) * m.g(u)
    h = 1e-7
    # Richardson slope of Dg at 0; L0 <= 0 under the sign hypotheses
    L0 = 2.0 * Dg(h) / h - Dg(2 * h) / (2 * h)
    s = 0.5 * (-c - math.sqrt(c * c - 4.0 * L0))
    eps = 1e-8

    def rhs(phi, y):
        return [-c - Dg(phi) / y[0]]

    sol = solve_ivp(rhs, (eps, float(pts.max())), [s * eps], method="DOP853",
                    rtol=1e-11, atol=1e-13, dense_output=True)
    if not sol.success:
        raise WavefrontError(f"direct lower integration failed: {sol.message}")
    return sol.sol(pts)[0]


def _check_reflection(ctx: _Ctx) -> str:
    m = ctx.m
    worst = 0.0
    for c in (-0.7, 0.3, 1.2):
        zs = solve_lower(m, c)
        hi = m.alpha if zs.touchdown_phi is None else zs.touchdown_phi
        pts = np.linspace(0.05 * m.alpha, hi - 0.05 * m.alpha, 10)
        direct = _direct_lower_z(m, c, pts)
        via = np.array([eval_z(zs, float(p)) for p in pts])
        worst = max(worst, float(np.max(np.abs(direct - via))))
    assert worst <= 1e-8, f"reflected and direct lower z differ by {worst:.2e}"
    return f"max |z_direct - z_reflected| = {worst:.2e} at 10 points x 3 speeds"


def _check_slope_at_one(ctx: _Ctx) -> str:
    lo_ratio, hi_ratio = math.inf, -math.inf
    for c in (-1.0, 1.0):
        zs = solve_upper(ctx.m, c)
        near = (zs.phi < 1.0) & (zs.phi > 1.0 - 1e-3)
        ratios = zs.z[near] / (zs.phi[near] - 1.0)
        assert np.isfinite(ratios).all()
        lo_ratio = min(lo_ratio, float(ratios.min()))
        hi_ratio = max(hi_ratio, float(ratios.max()))
    assert lo_ratio >= -1e-6, f"z/(phi-1) dips to {lo_ratio:.2e} near 1"
    assert hi_ratio <= 1e3, f"z/(phi-1) blows up to {hi_ratio:.2e} near 1"
    return f"z/(phi-1) in [{lo_ratio:.3e}, {hi_ratio:.3e}] near phi=1"


def _check_F_increasing_c(ctx: _Ctx) -> str:
    m, adm = ctx.m, ctx.adm
    phi = ctx.mid_phi
    cs = np.linspace(-3.0, 3.0, 20)
    vals = np.array([jump_functional(m, adm, float(c), phi) for c in cs])
    d = np.diff(vals)
    assert (d > -1e-10).all(), f"F not increasing in c: min step {d.min():.2e}"
    assert vals[-1] > vals[0]
    return f"F(c) steps in [{d.min():.2e}, {d.max():.2e}] over 20 c-values"


def _check_F_increasing_phi(ctx: _Ctx) -> str:
    m, adm = ctx.m, ctx.adm
    span = adm.I_hi - adm.I_lo
    phis = np.linspace(adm.I_lo + 0.05 * span, adm.I_hi - 0.05 * span, 8)
    vals = np.array([jump_functional(m, adm, 0.0, float(p)) for p in phis])
    d = np.diff(vals)
    assert (d > -1e-10).all(), f"F not increasing in phi_l: min step {d.min():.2e}"
    return f"F(0, phi_l) steps in [{d.min():.2e}, {d.max():.2e}] over 8 points"


def _check_speed_consistency(ctx: _Ctx) -> str:
    adm = ctx.adm
    span = adm.I_hi - adm.I_lo
    worst = 0.0
    for t in (0.25, 0.5, 0.75):
        sr = ctx.speed_at(adm.I_lo + t * span)
        dev = abs(sr.c_star + (sr.z_r - sr.z_l) / (sr.phi_r - sr.phi_l))
        worst = max(worst, dev)
        assert sr.bracket[0] <= sr.c_star <= sr.bracket[1]
    assert worst <= 1e-6, f"speed-jump consistency defect {worst:.2e}"
    return f"max |c* + [z]/[phi]| = {worst:.2e} at 3 left states"


def _check_speed_bounds(ctx: _Ctx) -> str:
    try:
        sb = speed_bounds(ctx.m)
    except PreconditionError as exc:
        return f"not applicable: {exc}"
    adm = ctx.adm
    span = adm.I_hi - adm.I_lo
    for t in (0.25, 0.5, 0.75):
        sr = ctx.speed_at(adm.I_lo + t * span)
        assert sb.c_minus < sr.c_star < sb.c_plus, \
            f"c*={sr.c_star:.6f} outside ({sb.c_minus:.6f}, {sb.c_plus:.6f})"
    return f"3 speeds inside ({sb.c_minus:.4f}, {sb.c_plus:.4f})"


def _check_bio_speed_interval(ctx: _Ctx) -> str:
    lo, hi = biomodel.speed_interval(ctx.bundle.bio)
    adm = ctx.adm
    span = adm.I_hi - adm.I_lo
    for t in (0.25, 0.5, 0.75):
        sr = ctx.speed_at(adm.I_lo + t * span)
        assert lo < sr.c_star < hi, f"c*={sr.c_star:.6f} outside ({lo:.4f}, {hi:.4f})"
    return f"3 speeds inside closed-form interval ({lo:.4f}, {hi:.4f})"


def _check_profile_monotone(ctx: _Ctx) -> str:
    p = ctx.profile
    for xi, phi, label in ((p.upper_xi, p.upper_phi, "upper"),
                           (p.lower_xi, p.lower_phi, "lower")):
        order = np.argsort(xi)
        dphi = np.diff(phi[order])
        assert (dphi <= 0).all(), f"{label} band not decreasing in xi"
    return "phi nonincreasing in xi on both bands"


def _check_profile_rediff(ctx: _Ctx) -> str:
    m, p = ctx.m, ctx.profile
    worst = 0.0
    npts = 0
    for xi, phi, z in ((p.upper_xi, p.upper_phi, p.upper_z),
                       (p.lower_xi, p.lower_phi, p.lower_z)):
        n = len(phi)
        if n < 9:
            continue
        # the band grid is uniform in phi, so xi'(phi) from the 5-point
        # central stencil is fourth order; stay a fixed margin away from
        # the equilibria where xi' derivatives blow up
        keep = (np.minimum(phi, 1.0 - phi) >= 0.02) & (np.abs(z) > 1e-3)
        idx = np.flatnonzero(keep)
        idx = idx[(idx >= 2) & (idx <= n - 3)]
        if idx.size < 20:
            continue
        sel = idx[np.linspace(0, idx.size - 1, 20).astype(int)]
        h = phi[1] - phi[0]
        xip = (-xi[sel + 2] + 8 * xi[sel + 1] - 8 * xi[sel - 1] + xi[sel - 2]) / (12 * h)
        z_rec = np.array([m.D(float(u)) for u in phi[sel]]) / xip
        worst = max(worst, float(np.max(np.abs(z_rec - z[sel]) / np.abs(z[sel]))))
        npts += sel.size
    assert worst <= 1e-4, f"re-differenced z deviates by {worst:.2e} relative"
    return f"max relative |D/xi' - z| = {worst:.2e} at {npts} interior points"


def _check_profile_gluing(ctx: _Ctx) -> str:
    p = ctx.profile
    up_end = p.upper_phi[np.argmax(p.upper_xi)]
    lo_start = p.lower_phi[np.argmin(p.lower_xi)]
    dev = max(abs(up_end - p.phi_r), abs(lo_start - p.phi_l))
    assert dev <= 1e-12, f"gluing endpoints off by {dev:.2e}"
    return f"phi(xi_s-) = phi_r, phi(xi_s+) = phi_l to {dev:.2e}"


def _check_profile_translation(ctx: _Ctx) -> str:
    p = ctx.profile
    q = build_profile(ctx.m, ctx.speed_at(ctx.mid_phi), xi_s=7.3)
    dev = max(float(np.max(np.abs((q.upper_xi - p.upper_xi) - 7.3))),
              float(np.max(np.abs((q.lower_xi - p.lower_xi) - 7.3))))
    assert dev <= 1e-12, f"translation by 7.3 distorts xi by {dev:.2e}"
    return f"xi_s = 7.3 rebuild shifts samples by 7.3 exactly (dev {dev:.1e})"


def _check_weak_residual(ctx: _Ctx) -> str:
    rep = verify_weak(ctx.m, ctx.profile)
    assert rep.sup_residual <= 1e-4, f"scaled sup residual {rep.sup_residual:.2e}"
    assert rep.jump_defect_P <= 1e-8, f"P jump defect {rep.jump_defect_P:.2e}"
    assert rep.jump_defect_flux <= 1e-6, f"flux jump defect {rep.jump_defect_flux:.2e}"
    assert rep.monotonicity_violations == 0
    return (f"sup residual {rep.sup_residual:.2e}, jump defects "
            f"{rep.jump_defect_P:.1e}/{rep.jump_defect_flux:.1e}, 0 violations")


def _check_negative_control(ctx: _Ctx) -> str:
    sr = ctx.speed_at(ctx.mid_phi)
    bad = dataclasses.replace(sr, c_star=sr.c_star + 0.01)
    rep = verify_weak(ctx.m, build_profile(ctx.m, bad))
    assert rep.jump_defect_flux > 1e-3, \
        f"perturbed speed only produced flux defect {rep.jump_defect_flux:.2e}"
    return f"c*+0.01 raises flux defect to {rep.jump_defect_flux:.2e} (> 1e-3)"


def _check_characteristics(ctx: _Ctx) -> str:
    m, p = ctx.m, ctx.profile
    pairs = characteristic_speeds(m, p)
    assert pairs, "no characteristic samples"
    up = [lam for phi, lam in pairs if phi > m.beta]
    dn = [lam for phi, lam in pairs if phi < m.alpha]
    c = p.c
    assert all(lam <= c + 1e-12 for lam in up), "upper band characteristics exceed c"
    assert all(lam >= c - 1e-12 for lam in dn), "lower band characteristics below c"
    return (f"lambda - c in [{min(up) - c:.3e}, {max(up) - c:.3e}] (upper), "
            f"[{min(dn) - c:.3e}, {max(dn) - c:.3e}] (lower)")


def _check_bio_factored(ctx: _Ctx) -> str:
    bp = ctx.bundle.bio
    bd = biomodel.derive(bp)
    m = ctx.m
    K_D = 3.0 * (bp.Di - bp.Dg)
    K_g = bp.ki - bp.lambdai + bp.lambdag
    us = np.linspace(0.0, 1.0, 1000)
    dev_D = max(abs(m.D(float(u)) - K_D * (u - bd.alpha) * (u - bd.beta)) for u in us)
    dev_g = max(abs(m.g(float(u)) - K_g * u * (1 - u) * (u - bd.gamma)) for u in us)
    scale = max(K_D, K_g)
    assert dev_D <= 1e-12 * scale and dev_g <= 1e-12 * scale, (dev_D, dev_g)
    return f"factored D, g match pointwise to {max(dev_D, dev_g):.2e} on 1000 points"


def _check_bio_deltaP(ctx: _Ctx) -> str:
    bp = ctx.bundle.bio
    bd = biomodel.derive(bp)
    m = ctx.m
    expect = (bp.Di - bp.Dg) * (1.0 - bd.omega ** 2) / 3.0
    got = m.P(1.0) - m.P(0.0)
    assert expect > 0 and abs(got - expect) <= 1e-12 * (1 + abs(expect)), (got, expect)
    return f"P(1)-P(0) = {got:.12g} matches (Di-Dg)(1-w^2)/3"


def _check_bio_p1_alpha(ctx: _Ctx) -> str:
    bd = biomodel.derive(ctx.bundle.bio)
    m = ctx.m
    lhs = m.P(1.0) >= m.P(m.alpha)
    rhs = bd.omega <= 0.5
    assert lhs == rhs, f"P(1)>=P(alpha) is {lhs} but omega<=1/2 is {rhs}"
    return f"P(1)>=P(alpha) <=> omega<=1/2 (omega={bd.omega:.6f})"


def _check_bio_dcont(ctx: _Ctx) -> str:
    bd = biomodel.derive(ctx.bundle.bio)
    if bd.dcont_phi_l is None:
        return "not applicable: no D-continuity state (omega > 1/sqrt(3))"
    m = ctx.m
    u = bd.dcont_phi_l
    v = biomodel.eta_closed(bd, u)
    dev = abs(m.D(u) - m.D(v))
    assert dev <= 1e-10, f"|D(u) - D(eta(u))| = {dev:.2e} at the D-continuity state"
    return f"|D(u) - D(eta(u))| = {dev:.2e} at u = {u:.6f}"


def _check_bio_oracle(ctx: _Ctx) -> str:
    bd = biomodel.derive(ctx.bundle.bio)
    m, adm = ctx.m, ctx.adm
    dev = max(abs(m.alpha - bd.alpha), abs(m.beta - bd.beta),
              abs(adm.I_lo - bd.I_lo), abs(adm.I_hi - bd.I_hi))
    for t in (0.2, 0.45, 0.7, 0.95):
        u = bd.I_lo + t * (bd.I_hi - bd.I_lo)
        dev = max(dev, abs(eta_of(adm, u) - biomodel.eta_closed(bd, u)))
    assert dev <= 1e-9, f"pipeline deviates from closed forms by {dev:.2e}"
    return f"alpha, beta, I, eta agree with closed forms to {dev:.2e}"


_GENERIC: list[tuple[str, Callable[[_Ctx], str]]] = [
    ("model.find-zeros", _check_find_zeros),
    ("model.potential-extrema", _check_potential_extrema),
    ("model.classify-shift-invariance", _check_classify_shift),
    ("model.potential-derivative-consistency", _check_dp_consistency),
    ("admissible.equal-area", _check_equal_area),
    ("admissible.eta-monotone-inverse", _check_eta_monotone_inverse),
    ("admissible.shift-invariance", _check_admissible_shift),
    ("admissible.exclusion-above-I", _check_exclusion),
    ("zfield.monotone-in-c", _check_z_monotone_c),
    ("zfield.collocation-residual", _check_z_residual),
    ("zfield.reflection-involution", _check_reflection),
    ("zfield.slope-at-one", _check_slope_at_one),
    ("speed.F-increasing-in-c", _check_F_increasing_c),
    ("speed.F-increasing-in-phi", _check_F_increasing_phi),
    ("speed.jump-consistency", _check_speed_consistency),
    ("speed.bounds-certificate", _check_speed_bounds),
    ("profile.monotone", _check_profile_monotone),
    ("profile.rediff-z", _check_profile_rediff),
    ("profile.gluing", _check_profile_gluing),
    ("profile.translation", _check_profile_translation),
    ("profile.weak-residual", _check_weak_residual),
    ("profile.negative-control", _check_negative_control),
    ("profile.characteristics", _check_characteristics),
]

_BIO: list[tuple[str, Callable[[_Ctx], str]]] = [
    ("bio.factored-forms", _check_bio_factored),
    ("bio.delta-P", _check_bio_deltaP),
    ("bio.P1-alpha-sign", _check_bio_p1_alpha),
    ("bio.D-continuity", _check_bio_dcont),
    ("bio.oracle-agreement", _check_bio_oracle),
    ("bio.speed-interval", _check_bio_speed_interval),
]


def run_all(bundle: ModelBundle) -> list[CheckResult]:
    """Run every applicable named check; never raises."""
    ctx = _Ctx(bundle)
    checks = list(_GENERIC)
    if bundle.bio is not None:
        checks += _BIO
    results = []
    for name, fn in checks:
        try:
            detail = fn(ctx)
            results.append(CheckResult(name, True, detail))
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc) or "assertion failed"))
        except WavefrontError as exc:
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
    return results
