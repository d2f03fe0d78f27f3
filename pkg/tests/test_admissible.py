"""Admissible jump pairs: equal-area pairing, interval endpoints, step fronts."""
from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from shockfronts import (DomainError, admissible_set, eta_of, pair_table,
                         step_fronts, zeta_of)


def test_interval_endpoints_bio(bio_adm):
    assert abs(bio_adm.I_lo - 4.0 / 9.0) <= 1e-12
    assert abs(bio_adm.I_hi - 5.0 / 9.0) <= 1e-12
    assert abs(bio_adm.J_lo - 7.0 / 9.0) <= 1e-12
    assert abs(bio_adm.J_hi - 8.0 / 9.0) <= 1e-12


def test_pairing_preserves_potential(bio, bio_adm):
    for u in np.linspace(bio_adm.I_lo, bio_adm.I_hi, 17):
        v = eta_of(bio_adm, float(u))
        assert abs(bio.P(v) - bio.P(float(u))) <= 1e-10


@settings(max_examples=60, deadline=None)
@given(st.floats(0.0, 1.0))
def test_equal_area_property(bio, bio_adm, t):
    """|int_u^eta(u) D| stays at quadrature-noise level across I."""
    u = bio_adm.I_lo + t * (bio_adm.I_hi - bio_adm.I_lo)
    v = eta_of(bio_adm, u)
    area, _ = quad(bio.D, u, v, limit=200)
    d_sup = max(abs(bio.D(float(x))) for x in np.linspace(0, 1, 512))
    assert abs(area) <= 1e-8 * d_sup


@settings(max_examples=40, deadline=None)
@given(st.floats(0.0, 0.999))
def test_eta_zeta_are_inverse(bio_adm, t):
    # eta has quadratic contact at I_hi (eta' -> 0), so zeta amplifies the
    # pairing tolerance without bound at that endpoint; stay 1e-3 away
    u = bio_adm.I_lo + t * (bio_adm.I_hi - bio_adm.I_lo)
    assert abs(zeta_of(bio_adm, eta_of(bio_adm, u)) - u) <= 1e-9


def test_eta_strictly_increasing(bio_adm):
    us = np.linspace(bio_adm.I_lo, bio_adm.I_hi, 41)
    vs = [eta_of(bio_adm, float(u)) for u in us]
    assert all(b > a for a, b in zip(vs, vs[1:]))


def test_left_state_above_interval_rejected(bio_adm):
    with pytest.raises(DomainError):
        eta_of(bio_adm, bio_adm.I_hi + 1e-3)
    with pytest.raises(DomainError):
        eta_of(bio_adm, bio_adm.I_lo - 1e-3)


def test_pair_table_shape_and_monotonicity(bio_adm):
    table = pair_table(bio_adm, n=64)
    assert table.shape == (64, 3)
    assert np.all(np.diff(table[:, 0]) > 0)
    assert np.all(np.diff(table[:, 1]) > 0)


def test_step_fronts_balanced(balanced_model):
    fronts = step_fronts(balanced_model)
    levels = sorted(tuple(f.levels) for f in fronts)
    assert len(fronts) == 2
    assert all(f.speed == 0.0 for f in fronts)
    # single jump 1 -> 0 and the two-jump 1 -> gamma -> 0
    assert (0.0, 1.0) in [tuple(sorted(l)) for l in levels]
    assert any(len(l) == 3 for l in levels)


def test_step_fronts_absent_off_balance(bio, noshock_model):
    assert step_fronts(bio) == []
    assert step_fronts(noshock_model) == []
