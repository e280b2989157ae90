import math

import numpy as np
import pytest

from kawahara_lab.branch import kawahara_branch, mkawahara_branch, profile_eval
from kawahara_lab.grid import Grid, GridProfile
from kawahara_lab.models import ALBERT_SPEED, WaveModel
from kawahara_lab.petviashvili import continuation_sweep, petviashvili_solve
from kawahara_lab.spectral_stability import (GridTooCoarseError, NearSingularError, analyze,
                                             assemble_operator, derivative_discrepancy,
                                             lowest_spectrum, moment_check, moment_check_points,
                                             solve_chi_and_index)

SQ5 = math.sqrt(5.0)


def albert_phi(n=512, L=25.0):
    g = Grid(n, L)
    return GridProfile(g, 1 / np.cosh(g.x) ** 4)


@pytest.fixture(scope="module")
def albert_report():
    return analyze(WaveModel.albert(), ALBERT_SPEED, albert_phi(), m=6, b=1.0)


def test_free_operator_is_diagonal_in_fourier():
    g = Grid(64, 10.0)
    model = WaveModel.kawahara(0.3)
    op = assemble_operator(model, 1.0, GridProfile(g, np.zeros(64)))
    eig = np.linalg.eigvalsh(op.matrix)
    assert np.allclose(eig, np.sort(0.3 * g.k ** 4 + g.k ** 2 + 1.0), rtol=1e-12, atol=1e-10)
    rep = lowest_spectrum(op, 4)
    assert rep.negative_count == 0
    assert rep.lowest_eigenvalues[0] == pytest.approx(1.0, abs=1e-12)


def test_albert_hypotheses(albert_report):
    rep = albert_report
    assert rep.negative_count == 1
    assert abs(rep.lowest_eigenvalues[1]) < 1e-6
    assert rep.zero_count == 1
    assert rep.zero_mode_residual < 1e-6
    assert rep.cos_sim_zero_mode > 1 - 1e-8
    assert rep.index_I < 0
    assert rep.index_I == pytest.approx(-2.07652, rel=1e-5)
    assert rep.chi_residual < 1e-10
    assert rep.stable_flag
    d = rep.to_dict()
    assert set(d) == {"omega", "gamma", "N", "L", "eigs", "neg_count", "zero_residual",
                      "cos_sim_zero_mode", "index_I", "stable"}
    assert len(d["eigs"]) == 6 and d["neg_count"] == 1


def test_albert_index_matches_continuation(albert_report):
    # chi = -d phi/dc, so <chi, phi> = -(1/2) d/dc ||phi||^2
    h = 1e-3
    pts = continuation_sweep(WaveModel.albert(), [ALBERT_SPEED - h, ALBERT_SPEED + h],
                             Grid(512, 25.0), albert_phi())
    slope = (pts[1].norm_sq - pts[0].norm_sq) / (2 * h)
    assert -0.5 * slope == pytest.approx(albert_report.index_I, rel=1e-4)
    op = assemble_operator(WaveModel.albert(), ALBERT_SPEED, albert_phi(), b=1.0)
    dphi = (pts[1].profile.values - pts[0].profile.values) / (2 * h)
    assert derivative_discrepancy(op, dphi) < 1e-5


def test_grid_too_coarse():
    g = Grid(64, 25.0)
    phi = GridProfile(g, 1 / np.cosh(g.x) ** 4)
    with pytest.raises(GridTooCoarseError, match="grid too coarse"):
        assemble_operator(WaveModel.albert(), ALBERT_SPEED, phi, b=1.0)
    with pytest.raises(GridTooCoarseError):
        assemble_operator(WaveModel.albert(), ALBERT_SPEED, GridProfile(g, 1 / np.cosh(4 * g.x) ** 4))


def test_near_singular():
    op = assemble_operator(WaveModel.albert(), ALBERT_SPEED, albert_phi(256), b=1.0)
    with pytest.raises(NearSingularError, match="near-singular even subspace"):
        solve_chi_and_index(op, cond_max=10.0)


def test_operator_symmetric():
    op = assemble_operator(WaveModel.albert(), ALBERT_SPEED, albert_phi(256), b=1.0)
    assert op.asymmetry < 1e-12
    assert np.array_equal(op.matrix, op.matrix.T)


def test_mkawahara_derived_wave():
    p = mkawahara_branch(1.0, "derived")
    rep = analyze(p.model(), p.c, profile_eval(p, Grid(1024, 40.0)), b=p.alpha)
    assert rep.negative_count == 1 and rep.zero_simple
    assert rep.index_I == pytest.approx(-1.28831, rel=1e-4)
    assert rep.stable_flag


def test_mkawahara_paper_wave_reported_not_asserted():
    p = mkawahara_branch(1.0, "paper")
    rep = analyze(p.model(), p.c, profile_eval(p, Grid(1024, 40.0)), b=p.alpha)
    # the printed amplitude is not a solution; the report must expose it
    assert rep.negative_count == 4 and rep.zero_count == 0
    assert rep.to_dict()["stable"] is False
    assert rep.zero_mode_residual > 1.0


def test_moment_kawahara():
    rep = moment_check_points([kawahara_branch(w, "paper") for w in (0.9, 1.0, 1.1)])
    (c, slope), = rep.slopes
    assert c == 1.0 and rep.passed
    assert slope == pytest.approx(42.8, rel=5e-3)


def test_moment_mkawahara():
    rep = moment_check_points([mkawahara_branch(c, "paper") for c in (0.9, 1.0, 1.1)])
    assert rep.slopes[0][1] == pytest.approx(6 * SQ5, rel=5e-3)
    assert rep.passed


def test_moment_negative_control():
    rep = moment_check([0.9, 1.0, 1.1], [5.0, 5.0, 5.0])
    assert rep.slopes == [(1.0, 0.0)] and not rep.passed
    with pytest.raises(ValueError):
        moment_check([1.0, 2.0], [1.0, 2.0])


def test_solved_profile_gives_same_spectrum(albert_report):
    g = Grid(512, 25.0)
    prof, _ = petviashvili_solve(WaveModel.albert(), ALBERT_SPEED, g)
    rep = analyze(WaveModel.albert(), ALBERT_SPEED, prof, b=1.0)
    assert np.allclose(rep.lowest_eigenvalues, albert_report.lowest_eigenvalues, atol=1e-8)


def test_index_sign_flips_with_phi():
    op = assemble_operator(WaveModel.albert(), ALBERT_SPEED, albert_phi(256), b=1.0)
    chi, I = solve_chi_and_index(op)
    from kawahara_lab.grid import inner

    assert inner(op.grid, chi.values, -op.phi.values) == pytest.approx(-I, rel=1e-14)


def test_speed_derivative_identity_only_at_fixed_gamma():
    # L(-d phi/dc) = phi holds when gamma is held fixed; along the closed-form
    # branch gamma varies with c and the identity picks up an extra term
    g = Grid(1024, 40.0)
    h = 1e-4
    p = mkawahara_branch(1.0, "derived")
    op = assemble_operator(p.model(), 1.0, profile_eval(p, g), b=p.alpha)
    along = (mkawahara_branch(1 + h, "derived").profile(g.x)
             - mkawahara_branch(1 - h, "derived").profile(g.x)) / (2 * h)
    pts = continuation_sweep(p.model(), [1 - h, 1 + h], g, profile_eval(p, g))
    fixed = (pts[1].profile.values - pts[0].profile.values) / (2 * h)
    assert derivative_discrepancy(op, fixed) < 1e-5
    assert derivative_discrepancy(op, along) > 0.1
