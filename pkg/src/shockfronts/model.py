"""Model construction and regime classification.

A model is a pair (P, g) on [0, 1]: a nonlinear diffusion potential P whose
derivative D = P' is positive on (0, alpha) and (beta, 1) and negative on
(alpha, beta), and a bistable reaction g vanishing at 0 and 1, negative on
(0, gamma) and positive on (gamma, 1), with 0 < alpha < gamma < beta < 1.
The equation behind all of this is

    u_t = P(u)_xx + g(u),

and the distinction that drives everything downstream is the sign of
P(1) - P(0): a one-parameter family of sharp fronts exists when it is
positive, only piecewise constant fronts when it vanishes, and none when it
is negative.

`build_model` locates alpha, beta, gamma by sign-change bracketing on a
uniform scan refined by bisection, validates the sign structure on a denser
grid, and packages everything in an immutable `ModelSpec`.  `classify`
evaluates the endpoint potential gap and the three auxiliary comparisons the
admissible-set and speed machinery branch on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np
from scipy.integrate import quad
from scipy.optimize import bisect

from .errors import StructureViolation

__all__ = [
    "Regime",
    "ModelSpec",
    "RegimeClass",
    "build_model",
    "classify",
]

# Defaults pinned by the numeric design of the package; all are overridable
# keyword arguments of build_model.
SCAN_N = 2048
CHECK_N = 4096
ROOT_TOL = 1e-12
TOL_STRUCT = 1e-10
FD_STEP = 1e-6


class Regime(enum.Enum):
    """Trichotomy of front regimes by the sign of P(1) - P(0)."""

    SHOCK_FAMILY = "ShockFamily"
    PIECEWISE_CONSTANT_ONLY = "PiecewiseConstantOnly"
    NO_SHOCK = "NoShock"


@dataclass(frozen=True)
class ModelSpec:
    """Validated model data.

    Attributes
    ----------
    P, D, g : callables on [0, 1]
        Potential, diffusivity (P'), reaction.  Scalar in, scalar out;
        polynomial-backed models also accept numpy arrays.
    alpha, beta : float
        The two interior zeros of D (local max / local min of P).
    gamma : float
        The interior zero of g.
    tol_struct : float
        Tolerance used by the structural sign checks at build time.
    """

    P: Callable[[float], float]
    D: Callable[[float], float]
    g: Callable[[float], float]
    alpha: float
    beta: float
    gamma: float
    tol_struct: float = TOL_STRUCT


@dataclass(frozen=True)
class RegimeClass:
    """Regime kind plus the comparisons downstream operations branch on.

    delta_P is P(1) - P(0).  The three flags are evaluated with the same
    equality tolerance used for the regime decision, so boundary models
    (exact potential ties) classify stably.
    """

    kind: Regime
    delta_P: float
    eq_tol: float
    P_beta_ge_P0: bool
    P_alpha_le_P1: bool
    P_gamma_eq_P0: bool


def _refine_root(f: Callable[[float], float], lo: float, hi: float, tol: float) -> float:
    """Bisection refinement of a bracketed sign change, then a short secant
    polish (the bisection tolerance alone would dominate downstream endpoint
    errors)."""
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise StructureViolation(f"no sign change in bracket [{lo}, {hi}]")
    x1 = float(bisect(f, lo, hi, xtol=tol))
    x0 = x1 - 1e-9
    f0, f1 = f(x0), f(x1)
    for _ in range(3):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (lo <= x2 <= hi) or not math.isfinite(x2):
            break
        x0, f0, x1 = x1, f1, x2
        f1 = f(x1)
        if f1 == 0.0 or abs(x1 - x0) < 1e-16:
            break
    return x1


def _sign_changes(xs: np.ndarray, vals: np.ndarray) -> list[tuple[float, float, int]]:
    """Brackets (lo, hi, direction) where vals changes sign strictly.

    direction is +1 for a - to + crossing, -1 for + to -.  Exact zeros at
    grid nodes are treated as crossing points with the direction inferred
    from their neighbors.
    """
    out: list[tuple[float, float, int]] = []
    n = len(xs)
    i = 0
    while i < n - 1:
        a, b = vals[i], vals[i + 1]
        if a == 0.0:
            # zero exactly on a node: look left and right for the direction
            j = i - 1
            while j >= 0 and vals[j] == 0.0:
                j -= 1
            k = i + 1
            while k < n and vals[k] == 0.0:
                k += 1
            if j >= 0 and k < n and vals[j] * vals[k] < 0.0:
                out.append((xs[j], xs[k], 1 if vals[k] > 0 else -1))
                i = k
                continue
            i += 1
            continue
        if a * b < 0.0:
            out.append((xs[i], xs[i + 1], 1 if b > 0 else -1))
        i += 1
    return out


def _fd_derivative(P: Callable[[float], float], step: float) -> Callable[[float], float]:
    """Central finite-difference derivative of P, one-sided at the endpoints."""

    def D(u: float) -> float:
        lo = u - step
        hi = u + step
        if lo < 0.0:
            lo, hi = u, u + step
        elif hi > 1.0:
            lo, hi = u - step, u
        return (P(hi) - P(lo)) / (hi - lo)

    return D


def _check_sign(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    want_positive: bool,
    tol: float,
    n: int,
    what: str,
) -> None:
    """Require sign of f on the open interval (lo, hi), sampled on n points."""
    if hi - lo <= 4.0 * ROOT_TOL:
        return
    xs = np.linspace(lo, hi, n + 2)[1:-1]
    vals = np.array([f(float(x)) for x in xs])
    if want_positive:
        if vals.min() < -tol:
            bad = xs[int(vals.argmin())]
            raise StructureViolation(f"{what} must be > 0 on ({lo:.6g}, {hi:.6g}); "
                                     f"value {vals.min():.3e} at u = {bad:.6g}")
        if vals.max() <= tol:
            raise StructureViolation(f"{what} is not genuinely positive on ({lo:.6g}, {hi:.6g})")
    else:
        if vals.max() > tol:
            bad = xs[int(vals.argmax())]
            raise StructureViolation(f"{what} must be < 0 on ({lo:.6g}, {hi:.6g}); "
                                     f"value {vals.max():.3e} at u = {bad:.6g}")
        if vals.min() >= -tol:
            raise StructureViolation(f"{what} is not genuinely negative on ({lo:.6g}, {hi:.6g})")


def build_model(
    P: Callable[[float], float],
    g: Callable[[float], float],
    D: Callable[[float], float] | None = None,
    *,
    hints: Mapping[str, Sequence[float]] | None = None,
    tol_struct: float = TOL_STRUCT,
    scan_n: int = SCAN_N,
    check_n: int = CHECK_N,
    root_tol: float = ROOT_TOL,
    fd_step: float = FD_STEP,
) -> ModelSpec:
    """Locate alpha, beta, gamma and validate the model structure.

    Parameters
    ----------
    P, g : callables
        Potential and reaction on [0, 1].
    D : callable, optional
        Analytic diffusivity P'.  When omitted, a central finite difference
        of P with step `fd_step` is used.
    hints : mapping, optional
        Optional root brackets, keys among {"alpha", "beta", "gamma"}, each
        a (lo, hi) pair with a sign change of D (resp. g) inside.  Brackets
        skip the scan for that root.
    tol_struct : float
        Sign checks on the validation grid tolerate excursions up to this.
    scan_n, check_n : int
        Points in the root-location scan and the validation grid.
    root_tol : float
        Absolute bisection tolerance for the located roots.

    Returns
    -------
    ModelSpec

    Raises
    ------
    StructureViolation
        Wrong number of diffusivity sign changes, wrong reaction sign
        pattern, misordered roots, or P' inconsistent with D.
    """
    hints = dict(hints or {})
    if D is None:
        D = _fd_derivative(P, fd_step)

    xs = np.linspace(0.0, 1.0, scan_n)

    # --- alpha, beta: the + -> - and - -> + crossings of D ---
    if "alpha" in hints and "beta" in hints:
        alpha_bracket = tuple(map(float, hints["alpha"]))
        beta_bracket = tuple(map(float, hints["beta"]))
    else:
        d_vals = np.array([D(float(x)) for x in xs])
        crossings = _sign_changes(xs, d_vals)
        # endpoint degeneracy (D vanishing at 0 or 1) is allowed; interior
        # crossings must be exactly the pair + -> - then - -> +
        interior = [c for c in crossings if c[1] > 4 * root_tol and c[0] < 1 - 4 * root_tol]
        if len(interior) != 2 or interior[0][2] != -1 or interior[1][2] != 1:
            raise StructureViolation(
                f"diffusivity must change sign exactly twice (+ to - to +); "
                f"found {len(interior)} interior sign changes")
        alpha_bracket = hints.get("alpha", interior[0][:2])
        beta_bracket = hints.get("beta", interior[1][:2])
    alpha = _refine_root(D, float(alpha_bracket[0]), float(alpha_bracket[1]), root_tol)
    beta = _refine_root(D, float(beta_bracket[0]), float(beta_bracket[1]), root_tol)

    # --- gamma: the single interior zero of g ---
    if "gamma" in hints:
        g_lo, g_hi = hints["gamma"]
        gamma = _refine_root(g, float(g_lo), float(g_hi), root_tol)
    else:
        g_vals = np.array([g(float(x)) for x in xs[1:-1]])
        crossings = _sign_changes(xs[1:-1], g_vals)
        if len(crossings) != 1 or crossings[0][2] != 1:
            what = (f"found {len(crossings)} sign changes"
                    if len(crossings) != 1 else
                    "found one change in the wrong direction (+ to -)")
            raise StructureViolation(
                f"reaction must change sign exactly once (- to +) in (0, 1); "
                f"{what}")
        gamma = _refine_root(g, crossings[0][0], crossings[0][1], root_tol)

    if not (0.0 < alpha < gamma < beta < 1.0):
        raise StructureViolation(
            f"roots must satisfy 0 < alpha < gamma < beta < 1; got "
            f"alpha={alpha:.6g}, gamma={gamma:.6g}, beta={beta:.6g}")

    # --- structural sign checks on the denser grid ---
    if abs(g(0.0)) > tol_struct or abs(g(1.0)) > tol_struct:
        raise StructureViolation("reaction must vanish at u = 0 and u = 1")
    _check_sign(D, 0.0, alpha, True, tol_struct, check_n // 4, "D")
    _check_sign(D, alpha, beta, False, tol_struct, check_n // 4, "D")
    _check_sign(D, beta, 1.0, True, tol_struct, check_n // 4, "D")
    _check_sign(g, 0.0, gamma, False, tol_struct, check_n // 4, "g")
    _check_sign(g, gamma, 1.0, True, tol_struct, check_n // 4, "g")

    # --- D really is the derivative of P: quadrature check on a few
    #     deterministic subintervals ---
    rng = np.random.default_rng(0)
    pts = np.sort(rng.uniform(0.0, 1.0, size=8))
    for a, b in zip(pts[:-1], pts[1:]):
        integral, _ = quad(D, a, b, epsabs=1e-12, epsrel=1e-12, limit=200)
        gap = P(float(b)) - P(float(a))
        if abs(gap - integral) > 1e-8 * (1.0 + abs(gap)):
            raise StructureViolation(
                f"D is not the derivative of P on [{a:.4g}, {b:.4g}]: "
                f"P gap {gap:.6e} vs integral {integral:.6e}")

    return ModelSpec(P=P, D=D, g=g, alpha=float(alpha), beta=float(beta),
                     gamma=float(gamma), tol_struct=tol_struct)


def default_eq_tol(m: ModelSpec) -> float:
    """Equality tolerance for potential comparisons, scaled to the model."""
    return 1e-10 * (1.0 + abs(m.P(1.0)) + abs(m.P(0.0)))


def classify(m: ModelSpec, eq_tol: float | None = None) -> RegimeClass:
    """Classify the front regime by the sign of P(1) - P(0).

    Ties within `eq_tol` (default ``1e-10 * (1 + |P(1)| + |P(0)|)``) count
    as equality, so constructed boundary models classify as intended.  The
    returned flags record whether P(beta) >= P(0), P(alpha) <= P(1), and
    P(gamma) = P(0), all at the same tolerance; they decide the shape of the
    admissible set, the applicability of the speed bounds, and the step
    front count respectively.
    """
    P0 = float(m.P(0.0))
    P1 = float(m.P(1.0))
    if eq_tol is None:
        eq_tol = 1e-10 * (1.0 + abs(P1) + abs(P0))
    delta = P1 - P0
    if delta > eq_tol:
        kind = Regime.SHOCK_FAMILY
    elif delta < -eq_tol:
        kind = Regime.NO_SHOCK
    else:
        kind = Regime.PIECEWISE_CONSTANT_ONLY
    Pa = float(m.P(m.alpha))
    Pb = float(m.P(m.beta))
    Pg = float(m.P(m.gamma))
    return RegimeClass(
        kind=kind,
        delta_P=delta,
        eq_tol=eq_tol,
        P_beta_ge_P0=Pb >= P0 - eq_tol,
        P_alpha_le_P1=Pa <= P1 + eq_tol,
        P_gamma_eq_P0=abs(Pg - P0) <= eq_tol,
    )
