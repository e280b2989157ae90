import math

import numpy as np
import pytest

from kawahara_lab.branch import derived_kawahara_branch, mkawahara_branch
from kawahara_lab.grid import Grid, GridProfile, auto_grid
from kawahara_lab.models import ALBERT_SPEED, WaveModel
from kawahara_lab.petviashvili import (OperatorNotPositiveError, PetviashviliError, SweepError,
                                       continuation_sweep, petviashvili_solve, sweep_slopes)
from kawahara_lab.spectral_stability import analyze


@pytest.fixture(scope="module")
def albert():
    grid = Grid(1024, 25.0)
    init = GridProfile(grid, 2.0 / np.cosh(grid.x) ** 2)
    prof, rep = petviashvili_solve(WaveModel.albert(), ALBERT_SPEED, grid, init, tol=1e-12)
    return grid, prof, rep


def test_albert_converges_to_sech4(albert):
    grid, prof, rep = albert
    assert rep.converged and rep.iterations < 200
    assert abs(rep.multiplier_final - 1) < 1e-12
    assert np.max(np.abs(prof.values - 1 / np.cosh(grid.x) ** 4)) < 1e-8
    assert np.array_equal(prof.values[grid.reflect_index()], prof.values)
    assert set(rep.to_dict()) == {"iterations", "multiplier_final", "residual_sup", "converged"}


def test_multiplier_tail_monotone(albert):
    _, _, rep = albert
    dev = [abs(m - 1) for m in rep.multiplier_history[-10:]]
    # monotone until the round-off floor is reached
    above = [d for d in dev if d > 1e-14]
    assert all(a >= b for a, b in zip(above, above[1:]))


def test_without_dealiasing_still_converges():
    grid = Grid(512, 25.0)
    prof, rep = petviashvili_solve(WaveModel.albert(), ALBERT_SPEED, grid, dealias=False)
    assert rep.converged
    assert np.max(np.abs(prof.values - 1 / np.cosh(grid.x) ** 4)) < 1e-8


def test_derived_kawahara_branch():
    p = derived_kawahara_branch(1.0)
    grid = auto_grid(p.b)
    prof, rep = petviashvili_solve(p.model(), p.omega, grid)
    assert np.max(np.abs(prof.values - p.profile(grid.x))) < 1e-8


def test_mkawahara_conventions_adjudicated():
    grid = Grid(1024, 40.0)
    model = WaveModel.mkawahara(4 / 25)
    prof, _ = petviashvili_solve(model, 1.0, grid)
    err = {conv: np.max(np.abs(prof.values - mkawahara_branch(1.0, conv).profile(grid.x)))
           for conv in ("paper", "derived")}
    assert err["derived"] < 1e-8
    assert err["paper"] > 1.0


def test_operator_not_positive():
    with pytest.raises(OperatorNotPositiveError, match="operator not positive"):
        petviashvili_solve(WaveModel.albert(), -1.0, Grid(256, 25.0))


def test_divergence_reports():
    grid = Grid(256, 25.0)
    with pytest.raises(PetviashviliError) as exc:
        petviashvili_solve(WaveModel.albert(), ALBERT_SPEED, grid, max_iter=3)
    assert exc.value.report.iterations == 3
    assert len(exc.value.report.multiplier_history) == 3
    with pytest.raises(ValueError):
        petviashvili_solve(WaveModel.albert(), ALBERT_SPEED, grid, GridProfile(grid, np.zeros(256)))


def test_albert_continuation():
    grid = Grid(512, 25.0)
    speeds = [ALBERT_SPEED * s for s in (0.8, 1.0, 1.2)]
    pts = continuation_sweep(WaveModel.albert(), speeds, grid)
    assert len(pts) == 3 and all(p.report.converged for p in pts)
    assert all(s > 0 for _, s in sweep_slopes(pts))


def test_single_speed_sweep():
    pts = continuation_sweep(WaveModel.albert(), [ALBERT_SPEED], Grid(512, 25.0))
    assert len(pts) == 1 and sweep_slopes(pts) == []


def test_sweep_error_keeps_partial():
    with pytest.raises(SweepError) as exc:
        continuation_sweep(WaveModel.albert(), [-1.0, 0.3], Grid(256, 25.0))
    assert exc.value.partial == []
    with pytest.raises(ValueError):
        continuation_sweep(WaveModel.albert(), [0.5, 0.3], Grid(256, 25.0))


def test_mkawahara_fixed_gamma_slopes():
    grid = Grid(1024, 40.0)
    model = WaveModel.mkawahara(4 / 25)
    pts = continuation_sweep(model, [0.8, 1.0, 1.2], grid)
    slopes = sweep_slopes(pts)
    assert all(s > 0 for _, s in slopes)
    # at fixed gamma the slope is not 6 sqrt5 / sqrt c (that law needs gamma ~ 1/c)
    assert all(abs(s / (6 * math.sqrt(5) / math.sqrt(c)) - 1) > 0.5 for c, s in slopes)
    # centred slope at c = 1 agrees with -2 <chi, phi> from the linear solve
    near = continuation_sweep(model, [0.99, 1.0, 1.01], grid)
    slope = (near[2].norm_sq - near[0].norm_sq) / 0.02
    sr = analyze(model, 1.0, near[1].profile, b=math.sqrt(5) / 4)
    assert slope == pytest.approx(-2 * sr.index_I, rel=1e-3)
