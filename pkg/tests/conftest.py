"""Shared fixtures: the default invasion model and a few custom potentials.

Expensive artifacts (speed solves, assembled profiles) are session scoped;
every ModelSpec is immutable so sharing is safe.
"""
from __future__ import annotations

import numpy as np
import pytest

from shockfronts import (admissible_set, bio_model, BioParams, build_model,
                         build_profile, solve_speed)

BIO_DEFAULT = BioParams(Di=35.0, Dg=8.0, ki=2.5, lambdai=0.5, lambdag=1.0)


def make_cubic_model(a: float, b: float, g_scale: float = 1.0,
                     gamma: float = 0.5, p_scale: float = 1.0):
    """P' = p_scale (u - a)(u - b), g = g_scale u (1 - u)(u - gamma)."""
    def P(u: float) -> float:
        return p_scale * (u ** 3 / 3.0 - (a + b) * u ** 2 / 2.0 + a * b * u)

    def g(u: float) -> float:
        return g_scale * u * (1.0 - u) * (u - gamma)

    return build_model(P=P, g=g)


@pytest.fixture(scope="session")
def bio():
    return bio_model(BIO_DEFAULT)


@pytest.fixture(scope="session")
def bio_adm(bio):
    return admissible_set(bio)


@pytest.fixture(scope="session")
def bio_speed(bio, bio_adm):
    # phi_l = 0.5 sits inside I = [4/9, 5/9]
    return solve_speed(bio, bio_adm, 0.5)


@pytest.fixture(scope="session")
def bio_profile(bio, bio_speed):
    return build_profile(bio, bio_speed)


@pytest.fixture(scope="session")
def bnd_model():
    """P(1) > P(0); narrow symmetric diffusivity well."""
    return make_cubic_model(0.25, 0.75)


@pytest.fixture(scope="session")
def balanced_model():
    """P(1) = P(0) = P(gamma): both step fronts exist."""
    r = 0.5 / np.sqrt(3.0)
    return make_cubic_model(0.5 - r, 0.5 + r)


@pytest.fixture(scope="session")
def noshock_model():
    """P(1) < P(0): wide negative-diffusivity stretch."""
    return make_cubic_model(0.2, 0.9)
