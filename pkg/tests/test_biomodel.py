"""Closed forms of the invasion model against the generic pipeline."""
from __future__ import annotations

import numpy as np
import pytest

from shockfronts import (BioParams, ParamError, admissible_set, bio_model,
                         derive, eta_closed, eta_of, jump_function,
                         speed_interval, summary)
from conftest import BIO_DEFAULT


def test_derived_quantities_default_params():
    bd = derive(BIO_DEFAULT)
    assert abs(bd.omega - 1.0 / 3.0) <= 1e-12
    assert abs(bd.alpha - 5.0 / 9.0) <= 1e-12
    assert abs(bd.beta - 7.0 / 9.0) <= 1e-12
    assert abs(bd.I_lo - 4.0 / 9.0) <= 1e-12
    assert abs(bd.I_hi - 5.0 / 9.0) <= 1e-12


def test_derived_quantities_second_params():
    bd = derive(BioParams(Di=32.0, Dg=5.0, ki=2.5, lambdai=0.5, lambdag=1.0))
    assert abs(bd.omega - 2.0 / 3.0) <= 1e-12
    assert abs(bd.I_hi - (0.5 - np.sqrt(7.0) / (6.0 * np.sqrt(3.0)))) <= 1e-12


def test_eta_closed_matches_pipeline():
    m = bio_model(BIO_DEFAULT)
    adm = admissible_set(m)
    bd = derive(BIO_DEFAULT)
    for u in np.linspace(bd.I_lo + 1e-9, bd.I_hi - 1e-9, 11):
        assert abs(eta_closed(bd, float(u)) - eta_of(adm, float(u))) <= 1e-9


def test_eta_closed_midpoint_value():
    bd = derive(BIO_DEFAULT)
    assert abs(eta_closed(bd, 0.5) - 0.877293769304329) <= 1e-12


def test_diffusivity_ratio_constraint_enforced():
    with pytest.raises(ParamError):
        derive(BioParams(Di=20.0, Dg=5.0, ki=2.5, lambdai=0.5, lambdag=1.0))
    with pytest.raises(ParamError):
        derive(BioParams(Di=-1.0, Dg=5.0, ki=2.5, lambdai=0.5, lambdag=1.0))
    with pytest.raises(ParamError):
        derive(BioParams(Di=35.0, Dg=8.0, ki=0.4, lambdai=0.5, lambdag=1.0))


def test_d_continuity_point_at_special_omega():
    """omega = 1/sqrt(3): the D-continuous left state and the jump-size
    maximizer coincide at 1/3."""
    bp = BioParams(Di=5.5, Dg=1.0, ki=2.5, lambdai=0.5, lambdag=1.0)
    bd = derive(bp)
    assert abs(bd.omega - 1.0 / np.sqrt(3.0)) <= 1e-12
    assert abs(bd.dcont_phi_l - 1.0 / 3.0) <= 1e-10
    assert abs(bd.jump_max_phi_l - 1.0 / 3.0) <= 1e-10
    m = bio_model(bp)
    assert abs(m.D(bd.dcont_phi_l) - m.D(eta_closed(bd, bd.dcont_phi_l))) <= 1e-10


def test_jump_function_maximized_at_reported_point():
    bp = BioParams(Di=5.5, Dg=1.0, ki=2.5, lambdai=0.5, lambdag=1.0)
    bd = derive(bp)
    best = bd.jump_max_phi_l
    j_best = jump_function(bd, best)
    for u in np.linspace(bd.I_lo + 1e-6, bd.I_hi - 1e-6, 101):
        assert jump_function(bd, float(u)) <= j_best + 1e-12


def test_speed_interval_closed_form():
    lo, hi = speed_interval(BIO_DEFAULT)
    assert abs(lo + 2.0 * np.sqrt(70.0)) <= 1e-12
    assert abs(hi - 4.0 * np.sqrt(2.0)) <= 1e-12


def test_summary_is_json_ready():
    import json
    s = summary(BIO_DEFAULT)
    json.dumps(s)
    assert s["P1_minus_P0"] == 8.0
    assert s["omega"] == pytest.approx(1.0 / 3.0, abs=1e-12)
