"""Model construction, zero finding, and regime classification."""
from __future__ import annotations

import dataclasses

import numpy as np
import pytest

from shockfronts import (Regime, StructureViolation, build_model, classify)
from conftest import make_cubic_model


def test_bio_equilibria_match_closed_forms(bio):
    assert abs(bio.alpha - 5.0 / 9.0) <= 1e-12
    assert abs(bio.beta - 7.0 / 9.0) <= 1e-12
    assert abs(bio.gamma - 2.0 / 3.0) <= 1e-12


def test_zeros_are_actual_zeros(bio):
    assert abs(bio.D(bio.alpha)) <= 1e-10
    assert abs(bio.D(bio.beta)) <= 1e-10
    assert abs(bio.g(bio.gamma)) <= 1e-10


def test_diffusivity_sign_pattern(bio):
    # + on (0, alpha), - on (alpha, beta), + on (beta, 1)
    for u in np.linspace(0.01, bio.alpha - 0.01, 25):
        assert bio.D(float(u)) > 0.0
    for u in np.linspace(bio.alpha + 0.01, bio.beta - 0.01, 25):
        assert bio.D(float(u)) < 0.0
    for u in np.linspace(bio.beta + 0.01, 0.99, 25):
        assert bio.D(float(u)) > 0.0


def test_ordering_invariant(bio):
    assert 0.0 < bio.alpha < bio.gamma < bio.beta < 1.0


def test_regime_trichotomy(bio, balanced_model, noshock_model):
    assert classify(bio).kind is Regime.SHOCK_FAMILY
    assert classify(balanced_model).kind is Regime.PIECEWISE_CONSTANT_ONLY
    assert classify(noshock_model).kind is Regime.NO_SHOCK


def test_classification_ignores_potential_offset(bio):
    base = classify(bio)
    shifted = dataclasses.replace(bio, P=lambda u: bio.P(u) + 11.0)
    rc = classify(shifted)
    assert rc.kind is base.kind
    assert abs(rc.delta_P - base.delta_P) <= 1e-9


def test_delta_P_value(bio):
    # (Di - Dg)(1 - omega^2)/3 with omega = 1/3
    assert abs(classify(bio).delta_P - 8.0) <= 1e-10


def test_monotone_potential_rejected():
    with pytest.raises(StructureViolation):
        build_model(P=lambda u: u, g=lambda u: u * (1 - u) * (u - 0.5))


def test_wrong_reaction_orientation_rejected():
    with pytest.raises(StructureViolation):
        # g changes sign + to -
        make_cubic_model(0.25, 0.75, g_scale=-1.0)


def test_reaction_zero_outside_well_rejected():
    # gamma = 0.1 < alpha violates alpha < gamma < beta
    with pytest.raises(StructureViolation):
        make_cubic_model(0.25, 0.75, gamma=0.1)


def test_model_spec_is_frozen(bio):
    with pytest.raises(dataclasses.FrozenInstanceError):
        bio.alpha = 0.3


def test_supplied_D_must_match_potential_derivative():
    a, b = 0.25, 0.75

    def P(u):
        return u ** 3 / 3.0 - (a + b) * u ** 2 / 2.0 + a * b * u

    def g(u):
        return u * (1.0 - u) * (u - 0.5)

    m = build_model(P=P, g=g, D=lambda u: (u - a) * (u - b))
    assert abs(m.D(0.5) - (0.5 - a) * (0.5 - b)) <= 1e-15
    with pytest.raises(StructureViolation):
        build_model(P=P, g=g, D=lambda u: (u - a) * (u - b) + 0.05)
