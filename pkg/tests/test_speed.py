"""Wave-speed selection through the jump functional."""
from __future__ import annotations

import numpy as np
import pytest

from shockfronts import (DomainError, eta_of, jump_functional, solve_speed,
                         speed_bounds)

# frozen from an independent coarse bisection of the jump functional with
# direct DOP853 integration of both branches (rtol 1e-11)
C_STAR_HALF = -1.6098091281


def test_functional_increasing_in_c(bio, bio_adm):
    cs = np.linspace(-2.5, 0.5, 9)
    vals = [jump_functional(bio, bio_adm, float(c), 0.5) for c in cs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_speed_matches_frozen_oracle(bio_speed):
    assert abs(bio_speed.c_star - C_STAR_HALF) <= 1e-8


def test_functional_residual_small_at_solution(bio_speed):
    assert abs(bio_speed.F_residual) <= 1e-8


def test_bracket_brackets_the_speed(bio_speed):
    lo, hi = bio_speed.bracket
    assert lo <= bio_speed.c_star <= hi
    assert hi - lo <= 2e-9


def test_right_state_is_the_paired_level(bio_adm, bio_speed):
    assert abs(bio_speed.phi_r - eta_of(bio_adm, 0.5)) <= 1e-12


def test_jump_condition_from_solution_fields(bio_speed):
    sr = bio_speed
    rh = sr.c_star + (sr.z_r - sr.z_l) / (sr.phi_r - sr.phi_l)
    assert abs(rh) <= 1e-6


def test_speed_decreases_in_left_state(bio, bio_adm):
    phis = np.linspace(bio_adm.I_lo, bio_adm.I_hi, 5)
    cs = [solve_speed(bio, bio_adm, float(p)).c_star for p in phis]
    assert all(b < a - 1e-10 for a, b in zip(cs, cs[1:]))


def test_bounds_contain_solution(bio, bio_adm, bio_speed):
    sb = speed_bounds(bio)
    assert sb.c_minus < bio_speed.c_star < sb.c_plus


def test_left_state_outside_interval_rejected(bio, bio_adm):
    with pytest.raises(DomainError):
        solve_speed(bio, bio_adm, bio_adm.I_hi + 0.05)


def test_tighter_tol_c_narrows_bracket(bio, bio_adm):
    wide = solve_speed(bio, bio_adm, 0.5, tol_c=1e-6)
    tight = solve_speed(bio, bio_adm, 0.5, tol_c=1e-10)
    assert (tight.bracket[1] - tight.bracket[0]) < (wide.bracket[1] - wide.bracket[0])
    assert abs(wide.c_star - tight.c_star) <= 1e-5
