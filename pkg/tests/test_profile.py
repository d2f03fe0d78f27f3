"""Profile assembly in physical coordinates and the weak-form check."""
from __future__ import annotations

import dataclasses

import numpy as np

from shockfronts import (build_profile, characteristic_speeds, reflect_profile,
                         solve_speed, verify_weak)


def test_bands_glue_exactly_at_the_jump(bio_profile):
    p = bio_profile
    assert p.upper_xi[-1] == p.xi_s == p.lower_xi[0]
    assert p.upper_phi[-1] == p.phi_r
    assert p.lower_phi[0] == p.phi_l


def test_profile_is_nonincreasing(bio_profile):
    seq = np.concatenate([bio_profile.upper_phi, bio_profile.lower_phi])
    assert np.all(np.diff(seq) <= 1e-12)


def test_bands_on_their_sides_of_the_jump(bio_profile):
    p = bio_profile
    assert np.all(p.upper_xi <= p.xi_s)
    assert np.all(p.lower_xi >= p.xi_s)
    assert np.all(p.upper_phi >= p.phi_r - 1e-12)
    assert np.all(p.lower_phi <= p.phi_l + 1e-12)


def test_translation_equivariance(bio, bio_speed, bio_profile):
    q = build_profile(bio, bio_speed, xi_s=7.25)
    assert np.allclose(q.upper_xi - 7.25, bio_profile.upper_xi, atol=1e-12)
    assert np.allclose(q.lower_phi, bio_profile.lower_phi, rtol=0, atol=0)


def test_weak_residual_and_jump_defects(bio, bio_profile):
    rep = verify_weak(bio, bio_profile)
    assert rep.sup_residual <= 1e-4
    assert rep.jump_defect_P <= 1e-6
    assert rep.jump_defect_flux <= 1e-6
    assert rep.monotonicity_violations == 0
    assert rep.n_interior > 900


def test_tail_sup_is_reported_but_larger(bio, bio_profile):
    rep = verify_weak(bio, bio_profile)
    assert rep.sup_residual_tail >= rep.sup_residual


def test_wrong_speed_breaks_flux_balance(bio, bio_speed):
    bad = dataclasses.replace(bio_speed, c_star=bio_speed.c_star + 0.01)
    rep = verify_weak(bio, build_profile(bio, bad))
    assert rep.jump_defect_flux > 1e-3


def test_characteristics_run_into_the_jump(bio, bio_profile):
    p = bio_profile
    c = p.c
    for u, lam in characteristic_speeds(bio, p):
        if u >= p.phi_r:          # upper band
            assert lam <= c + 1e-9
        elif u <= p.phi_l:        # lower band
            assert lam >= c - 1e-9


def test_reflection_negates_speed_and_mirrors(bio_profile):
    r = reflect_profile(bio_profile)
    assert r.c == -bio_profile.c
    assert r.xi_s == -bio_profile.xi_s
    assert np.all(np.diff(r.samples_xi) >= 0.0)
    # increasing orientation: low plateau on the left now
    assert r.samples_phi[0] < r.samples_phi[-1]
    assert r.phi_after == bio_profile.phi_r
    assert r.phi_before == bio_profile.phi_l


def test_rediff_recovers_z(bio, bio_profile):
    """z from the stored xi(phi) map matches the stored z field."""
    p = bio_profile
    worst = 0.0
    for xi, phi, z in ((p.upper_xi, p.upper_phi, p.upper_z),
                       (p.lower_xi, p.lower_phi, p.lower_z)):
        keep = (np.minimum(phi, 1.0 - phi) >= 0.02) & (np.abs(z) > 1e-3)
        idx = np.flatnonzero(keep)
        idx = idx[(idx >= 2) & (idx <= len(phi) - 3)]
        sel = idx[np.linspace(0, idx.size - 1, 20).astype(int)]
        h = phi[1] - phi[0]
        xip = (-xi[sel + 2] + 8 * xi[sel + 1] - 8 * xi[sel - 1] + xi[sel - 2]) / (12 * h)
        z_rec = np.array([bio.D(float(u)) for u in phi[sel]]) / xip
        worst = max(worst, float(np.max(np.abs(z_rec - z[sel]) / np.abs(z[sel]))))
    assert worst <= 1e-4


def test_refinement_shrinks_residual(bio, bio_adm, bio_speed, bio_profile):
    """Halving every tolerance knob cuts the interior sup by 4x or more."""
    sr2 = solve_speed(bio, bio_adm, 0.5, tol_c=0.5e-9,
                      rtol=0.5e-10, atol=0.5e-12)
    p2 = build_profile(bio, sr2, samples_per_band=1024,
                       rtol=0.5e-10, atol=0.5e-12)
    r1 = verify_weak(bio, bio_profile)
    r2 = verify_weak(bio, p2)
    assert r1.sup_residual / r2.sup_residual >= 4.0
