"""Built-in population-invasion model with closed-form cross-checks.

Two phenotypes diffuse with constants D_i (invasive) and D_g (settled); the
fraction u of invasive individuals obeys the scalar equation with

    D(u) = D_i (1 - 4u + 3u^2) + D_g (4u - 3u^2),
    g(u) = lambda_g u(1-u) + [lambda_i - lambda_g - (k_i - k_g)] u(1-u)^2 - k_g u,

and P(u) the primitive of D with P(0) = 0.  For D_i > 4 D_g > 0 the
diffusivity changes sign on (alpha, beta) with

    omega = sqrt((D_i - 4 D_g) / (D_i - D_g)),
    alpha = (2 - omega) / 3,     beta = (2 + omega) / 3,

and g is bistable with interior zero gamma = (k_i - lambda_i) /
(k_i - lambda_i + lambda_g) precisely when k_g = 0, lambda_g > 0 and

    (1 - omega) / (2 + omega)  <  lambda_g / (k_i - lambda_i)  <  (1 + omega) / (2 - omega).

Everything downstream then has closed forms: P(1) - P(0) =
(D_i - D_g)(1 - omega^2)/3 > 0 (always the shock-family regime), the
pairing

    eta(u) = (2 - u + sqrt(Delta_u)) / 2,
    Delta_u = -3u^2 + 4u - 4/3 + 4 omega^2 / 3,

the admissible interval

    I = [alpha - omega/3, alpha]                                (omega <= 1/2)
    I = [alpha - omega/3, 1/2 - sqrt(4 omega^2 - 1)/(2 sqrt(3))] (omega > 1/2),

the diffusivity-continuity pair u = 2/3 - omega/sqrt(3) (exists for
omega <= 1/sqrt(3)), the jump-size maximizer, and the speed interval

    -2 sqrt(D_i (k_i - lambda_i))  <  c*  <  2 sqrt(lambda_g D_g).

This module is the analytic oracle: it never calls the generic pipeline,
which in turn never calls these closed forms, so agreement between the two
is a real test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, ParamError
from .model import ModelSpec, build_model

__all__ = [
    "BioParams",
    "BioDerived",
    "derive",
    "diffusivity",
    "potential",
    "reaction",
    "bio_model",
    "eta_closed",
    "jump_function",
    "speed_interval",
    "summary",
]

MARGIN = 1e-12


@dataclass(frozen=True)
class BioParams:
    """Raw model parameters: diffusivities and kinetic rates.

    k_g must be 0 and the remaining rates nonnegative for the bistable
    structure; `derive` validates everything.
    """

    Di: float
    Dg: float
    ki: float
    lambdai: float
    lambdag: float
    kg: float = 0.0


@dataclass(frozen=True)
class BioDerived:
    """Closed-form derived quantities (see module docstring)."""

    omega: float
    alpha: float
    beta: float
    gamma: float
    I_lo: float
    I_hi: float
    dcont_phi_l: float | None
    jump_max_phi_l: float


def _validate(bp: BioParams) -> float:
    """Checks; returns omega."""
    if not (bp.Dg > 0.0 and bp.Di - 4.0 * bp.Dg > MARGIN * max(1.0, bp.Di)):
        raise ParamError("diffusivities must satisfy Di > 4 Dg > 0 (strict)")
    for name in ("ki", "kg", "lambdai", "lambdag"):
        if getattr(bp, name) < 0.0:
            raise ParamError(f"rate {name} must be nonnegative")
    if bp.kg != 0.0:
        raise ParamError("bistable structure requires kg = 0")
    if bp.lambdag <= 0.0:
        raise ParamError("bistable structure requires lambdag > 0")
    net = bp.ki - bp.lambdai
    if net <= 0.0:
        raise ParamError("bistable structure requires ki > lambdai")
    omega = math.sqrt((bp.Di - 4.0 * bp.Dg) / (bp.Di - bp.Dg))
    r = bp.lambdag / net
    lo = (1.0 - omega) / (2.0 + omega)
    hi = (1.0 + omega) / (2.0 - omega)
    if not (lo + MARGIN < r < hi - MARGIN):
        raise ParamError(
            f"rate ratio lambdag/(ki - lambdai) = {r:.6g} outside ({lo:.6g}, {hi:.6g})")
    return omega


def diffusivity(bp: BioParams):
    """D(u); quadratic, sign-changing on (alpha, beta)."""
    Di, Dg = bp.Di, bp.Dg

    def D(u):
        return Di * (1.0 - 4.0 * u + 3.0 * u * u) + Dg * (4.0 * u - 3.0 * u * u)

    return D


def potential(bp: BioParams):
    """P(u) = integral of D with P(0) = 0; cubic."""
    a3 = bp.Di - bp.Dg
    a2 = -2.0 * (bp.Di - bp.Dg)
    a1 = bp.Di

    def P(u):
        return ((a3 * u + a2) * u + a1) * u

    return P


def reaction(bp: BioParams):
    """g(u); cubic, bistable under the validated parameter window."""
    lg = bp.lambdag
    mix = bp.lambdai - bp.lambdag - (bp.ki - bp.kg)
    kg = bp.kg

    def g(u):
        return lg * u * (1.0 - u) + mix * u * (1.0 - u) ** 2 - kg * u

    return g


def derive(bp: BioParams) -> BioDerived:
    """Validate parameters and evaluate all closed forms.

    Raises ParamError when the diffusivity ordering or the kinetic window
    fails (strict inequalities, 1e-12 relative margin).
    """
    omega = _validate(bp)
    alpha = (2.0 - omega) / 3.0
    beta = (2.0 + omega) / 3.0
    gamma = (bp.ki - bp.lambdai) / (bp.ki - bp.lambdai + bp.lambdag)
    I_lo = alpha - omega / 3.0
    if omega <= 0.5:
        I_hi = alpha
    else:
        I_hi = 0.5 - math.sqrt(4.0 * omega * omega - 1.0) / (2.0 * math.sqrt(3.0))
    dcont = 2.0 / 3.0 - omega / math.sqrt(3.0) if omega <= 1.0 / math.sqrt(3.0) + 1e-15 else None
    jump_max = dcont if dcont is not None else I_hi
    return BioDerived(omega=omega, alpha=alpha, beta=beta, gamma=gamma,
                      I_lo=I_lo, I_hi=I_hi, dcont_phi_l=dcont, jump_max_phi_l=jump_max)


def eta_closed(bd: BioDerived, u: float) -> float:
    """Closed-form pairing eta(u) = (2 - u + sqrt(Delta_u)) / 2."""
    disc = -3.0 * u * u + 4.0 * u - 4.0 / 3.0 + 4.0 * bd.omega ** 2 / 3.0
    if disc < -1e-13:
        raise DomainError(f"u = {u!r} has no equal-potential partner (Delta = {disc:.3e})")
    return (2.0 - u + math.sqrt(max(disc, 0.0))) / 2.0


def jump_function(bd: BioDerived, u: float) -> float:
    """Jump size eta(u) - u, maximized at jump_max_phi_l."""
    return eta_closed(bd, u) - u


def speed_interval(bp: BioParams) -> tuple[float, float]:
    """Open interval that contains every admissible front speed."""
    _validate(bp)
    return (-2.0 * math.sqrt(bp.Di * (bp.ki - bp.lambdai)),
            2.0 * math.sqrt(bp.lambdag * bp.Dg))


def bio_model(bp: BioParams, **build_kw) -> ModelSpec:
    """ModelSpec through the generic pipeline (validation, root location,
    structure checks); the closed forms above stay independent of it."""
    _validate(bp)
    return build_model(potential(bp), reaction(bp), D=diffusivity(bp), **build_kw)


def summary(bp: BioParams) -> dict:
    """JSON-ready summary of the closed-form quantities."""
    bd = derive(bp)
    lo, hi = speed_interval(bp)
    return {
        "omega": bd.omega,
        "alpha": bd.alpha,
        "beta": bd.beta,
        "gamma": bd.gamma,
        "admissible_interval": [bd.I_lo, bd.I_hi],
        "eta_endpoints": [eta_closed(bd, bd.I_lo), eta_closed(bd, bd.I_hi)],
        "dcont_phi_l": bd.dcont_phi_l,
        "jump_max_phi_l": bd.jump_max_phi_l,
        "speed_interval": [lo, hi],
        "P1_minus_P0": (bp.Di - bp.Dg) * (1.0 - bd.omega ** 2) / 3.0,
    }
