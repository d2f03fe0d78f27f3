"""Singular z-field integration on both branches.

The Richardson oracle re-solves at halved tolerances and treats the finer
solution as truth; three-way speed comparisons pin the monotone dependence
on c without reference values.
"""
from __future__ import annotations

import numpy as np
import pytest
from scipy.integrate import solve_ivp

from shockfronts import (collocation_residual, eval_z, solve_lower,
                         solve_upper, z_endpoint_lower, z_endpoint_upper)

SPEEDS = (-1.0, 0.0, 1.0)


def test_upper_starts_at_one_with_zero(bio):
    zs = solve_upper(bio, 0.0)
    assert zs.phi[np.argmax(zs.phi)] >= 1.0 - 2e-6
    assert abs(zs.z[np.argmax(zs.phi)]) <= 1e-6
    assert np.all(zs.z <= 0.0)


def test_lower_starts_at_zero_with_zero(bio):
    zs = solve_lower(bio, 0.0)
    assert zs.phi[np.argmin(zs.phi)] <= 2e-6
    assert abs(zs.z[np.argmin(zs.phi)]) <= 1e-6
    assert np.all(zs.z <= 0.0)


def test_endpoint_values_monotone_in_c(bio):
    up = [z_endpoint_upper(bio, c, bio.beta) for c in SPEEDS]
    lo = [z_endpoint_lower(bio, c, bio.alpha) for c in SPEEDS]
    assert up[0] < up[1] < up[2]
    assert lo[0] > lo[1] > lo[2]


def test_interior_values_monotone_in_c(bio):
    sols = [solve_upper(bio, c) for c in SPEEDS]
    for u in np.linspace(bio.beta + 0.02, 0.97, 10):
        vals = [eval_z(s, float(u)) for s in sols]
        assert vals[0] < vals[1] < vals[2]
    sols = [solve_lower(bio, c) for c in SPEEDS]
    for u in np.linspace(0.03, bio.alpha - 0.02, 10):
        vals = [eval_z(s, float(u)) for s in sols]
        assert vals[0] > vals[1] > vals[2]


def test_richardson_self_consistency(bio):
    """Halving rtol/atol moves eval_z by less than 1e-8 anywhere probed."""
    for c in SPEEDS:
        a = solve_upper(bio, c)
        b = solve_upper(bio, c, rtol=0.5e-10, atol=0.5e-12)
        for u in np.linspace(bio.beta + 0.01, 0.98, 12):
            assert abs(eval_z(a, float(u)) - eval_z(b, float(u))) <= 1e-8


def test_collocation_residual_bound(bio):
    for c in SPEEDS:
        for zs in (solve_upper(bio, c), solve_lower(bio, c)):
            assert zs.certified.any()
            res = collocation_residual(bio, zs)
            assert res <= 1e-7 * (1.0 + abs(c))


def test_reflection_matches_direct_integration(bio):
    """solve_lower against an independent integration of the lower problem."""
    c = -0.4
    zs = solve_lower(bio, c)

    def rhs(u, z):
        return -c - bio.D(u) * bio.g(u) / z[0]

    h = 1e-7
    Dg = lambda u: bio.D(u) * bio.g(u)
    # one-sided slope limit L = lim Dg(u)/u at 0, Richardson refined
    L0 = 2.0 * Dg(h) / h - Dg(2 * h) / (2 * h)
    disc = c * c - 4.0 * L0
    assert disc > 0.0
    s = (-c - np.sqrt(disc)) / 2.0
    u0 = 1e-8
    sol = solve_ivp(rhs, (u0, bio.alpha), [s * u0], method="DOP853",
                    rtol=1e-11, atol=1e-13, dense_output=True)
    assert sol.success
    for u in np.linspace(0.05, bio.alpha - 0.02, 10):
        assert abs(eval_z(zs, float(u)) - sol.sol(u)[0]) <= 1e-8


def test_touchdown_in_the_fast_regime(bio):
    # large c forces z to zero before the inner endpoint on the upper branch
    zs = solve_upper(bio, 5.0)
    assert zs.reached_zero_before_inner
    assert zs.z_at_inner == 0.0
    assert zs.touchdown_phi is not None and zs.touchdown_phi > bio.beta


def test_no_touchdown_at_moderate_speeds(bio):
    zs = solve_upper(bio, 0.0)
    assert not zs.reached_zero_before_inner
    assert zs.z_at_inner < 0.0


def test_slope_at_one_is_bounded_root(bio):
    """Near phi = 1, z/(phi-1) approaches a root of mu^2 + c mu + L."""
    c = 0.0
    zs = solve_upper(bio, c)
    h = 1e-7
    Dg = lambda u: bio.D(u) * bio.g(u)
    L1 = 2.0 * Dg(1 - h) / (-h) - Dg(1 - 2 * h) / (-2 * h)
    mu_target = (-c + np.sqrt(c * c - 4 * L1)) / 2.0 if c * c >= 4 * L1 else None
    assert mu_target is not None
    near = 1.0 - 10 ** np.linspace(-5.5, -4, 5)
    mus = [eval_z(zs, float(u)) / (float(u) - 1.0) for u in near]
    assert all(m >= 0.0 for m in mus)
    assert abs(mus[0] - mu_target) <= 1e-3 * (1.0 + abs(mu_target))


def test_eval_z_outside_domain_raises(bio):
    zs = solve_upper(bio, 0.0)
    with pytest.raises(Exception):
        eval_z(zs, 0.1)
