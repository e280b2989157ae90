import math

import numpy as np
import pytest

from kawahara_lab.branch import mkawahara_branch, profile_eval
from kawahara_lab.evolution import (DIAGNOSTICS_HEADER, ETDRK4, BlowUpError, EvolutionState,
                                    dealias_mask, diagnostics_csv, energy_gradient, integrate,
                                    invariants, orbital_distance, random_smooth_perturbation,
                                    shift_profile, stability_experiment)
from kawahara_lab.grid import Grid, GridProfile, sobolev_norm_sq
from kawahara_lab.models import ALBERT_SPEED, WaveModel


def albert_phi(n=512, L=25.0):
    g = Grid(n, L)
    return GridProfile(g, 1 / np.cosh(g.x) ** 4)


def test_linear_mode_phase():
    g = Grid(64, np.pi)
    model = WaveModel(gamma=1.0, c2=1.0)
    s0 = EvolutionState.from_values(g, np.cos(g.x))
    s1 = integrate(s0, model, 0.01, 100, nonlinear=False)
    assert s1.time == pytest.approx(1.0)
    # e^{ikx} picks up phase (k^3 + k^5) t = 2
    assert np.max(np.abs(s1.u - np.cos(g.x + 2.0))) < 1e-13
    assert abs(np.abs(s1.u_hat[1]) - np.abs(s0.u_hat[1])) < 1e-14 * np.abs(s0.u_hat[1])


def test_albert_travels_and_conserves():
    g = Grid(1024, 25.0)
    model = WaveModel.albert()
    s0 = EvolutionState.from_values(g, 1 / np.cosh(g.x) ** 4)
    s1 = ETDRK4(model, g, 1e-3).advance(s0, 2000)
    exact = shift_profile(GridProfile(g, s0.u), -ALBERT_SPEED * s1.time)
    assert np.max(np.abs(s1.u - exact.values)) < 1e-8
    i0, i1 = invariants(s0, model), invariants(s1, model)
    assert abs(i1[0] - i0[0]) / abs(i0[0]) < 1e-12
    assert abs(i1[1] - i0[1]) / abs(i0[1]) < 1e-10
    assert abs(i1[2] - i0[2]) / abs(i0[2]) < 1e-10


def test_kdv_smoke():
    g = Grid(256, 30.0)
    model = WaveModel.kdv()
    s0 = EvolutionState.from_values(g, 0.1 * np.exp(-g.x ** 2))
    # drift is pure time-stepping error and falls off at fourth order in dt
    s1 = integrate(s0, model, 5e-3, 2000)
    p0, p1 = invariants(s0, model)[1], invariants(s1, model)[1]
    assert abs(p1 - p0) / p0 < 1e-10


def test_mkdv_preset_runs():
    g = Grid(256, 30.0)
    model = WaveModel.mkdv()
    s0 = EvolutionState.from_values(g, 0.5 / np.cosh(g.x))
    s1 = integrate(s0, model, 1e-2, 200)
    p0, p1 = invariants(s0, model)[1], invariants(s1, model)[1]
    assert abs(p1 - p0) / p0 < 1e-8


def test_zero_invariants():
    g = Grid(64, 5.0)
    assert invariants(EvolutionState.from_values(g, np.zeros(64)), WaveModel.albert()) == (0, 0, 0)


def test_energy_gradient_variational():
    g = Grid(256, 20.0)
    model = WaveModel.mkawahara(0.2)
    u = 1 / np.cosh(g.x) ** 2
    v = np.exp(-(g.x - 1) ** 2)
    H = lambda w: invariants(EvolutionState.from_values(g, w), model)[2]
    eps = 1e-5
    fd = (H(u + eps * v) - H(u - eps * v)) / (2 * eps)
    exact = g.spacing * np.dot(energy_gradient(g, u, model), v)
    assert fd == pytest.approx(exact, rel=1e-7)


def test_blow_up_detected():
    g = Grid(64, 10.0)
    model = WaveModel.kawahara(1e-3)
    s0 = EvolutionState.from_values(g, 1e4 * np.exp(-g.x ** 2))
    with pytest.raises(BlowUpError, match="blow-up or instability detected") as exc:
        ETDRK4(model, g, 0.1).advance(s0, 1000, check_every=10)
    assert exc.value.last_good_time >= 0.0


def test_dealias_mask():
    m = dealias_mask(Grid(256, 1.0))
    assert m.sum() == 2 * 85 + 1
    assert m[0] and m[85] and not m[86] and not m[128]


# ---------------------------------------------------------------------------
# orbital distance
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("a", [0.0, 1.7, -3.0, 20 * 50 / 512])
def test_distance_to_translate(a):
    phi = albert_phi()
    u = shift_profile(phi, -a)  # u(x) = phi(x - a)
    r, d = orbital_distance(u, phi)
    assert d < 1e-10
    assert r == pytest.approx(-a, abs=1e-9)


def test_distance_constant_perturbation():
    phi = albert_phi()
    eps = 1e-3
    u = GridProfile(phi.grid, phi.values + eps)
    r, d = orbital_distance(u, phi)
    assert d == pytest.approx(eps * math.sqrt(2 * phi.grid.L), rel=1e-2)


def test_distance_scaling():
    phi = albert_phi()
    u = GridProfile(phi.grid, 1.01 * phi.values)
    r, d = orbital_distance(u, phi)
    assert d == pytest.approx(0.01 * math.sqrt(sobolev_norm_sq(phi.grid, phi.values)), rel=1e-2)
    assert abs(r) < 1e-9


def test_distance_requires_nonzero_phi():
    g = Grid(64, 5.0)
    with pytest.raises(ValueError):
        orbital_distance(GridProfile(g, np.ones(64)), GridProfile(g, np.zeros(64)))


def test_distance_is_minimum_over_shifts():
    phi = albert_phi()
    rng = np.random.Generator(np.random.Philox(3))
    u = GridProfile(phi.grid, shift_profile(phi, 0.37).values + 0.01 * np.exp(-(phi.grid.x - 1) ** 2))
    r, d = orbital_distance(u, phi)
    for s in r + rng.uniform(-0.5, 0.5, 20):
        diff = u.values - shift_profile(phi, s).values
        assert d <= math.sqrt(sobolev_norm_sq(phi.grid, diff)) + 1e-12


# ---------------------------------------------------------------------------
# experiments
# ---------------------------------------------------------------------------


def test_unperturbed_orbit_stays_close():
    exp = stability_experiment(WaveModel.albert(), ALBERT_SPEED, albert_phi(), 0.0, T=50.0,
                               dt=2e-3, sample_every=500)
    assert max(r.orbital_dist for r in exp.rows) < 1e-6
    assert exp.rows[-1].t == pytest.approx(50.0)


def test_mkawahara_random_perturbation_bounded():
    p = mkawahara_branch(1.0, "derived")
    phi = profile_eval(p, Grid(512, 40.0))
    exp = stability_experiment(p.model(), p.c, phi, 0.01, T=20.0, dt=2e-3,
                               perturbation="random", seed=42, sample_every=500)
    # the shift minimisation can only lower the distance below ||v||
    size = 0.01 * math.sqrt(sobolev_norm_sq(phi.grid, phi.values))
    assert 0.99 * size < exp.d0 <= size
    assert exp.max_dist <= 5 * exp.d0
    text = diagnostics_csv(exp.rows)
    assert text.splitlines()[0] == ",".join(DIAGNOSTICS_HEADER)
    assert len(text.splitlines()) == len(exp.rows) + 1


def test_random_perturbation_seeded():
    phi = albert_phi()
    a = random_smooth_perturbation(phi.grid, phi, 0.01, 42)
    b = random_smooth_perturbation(phi.grid, phi, 0.01, 42)
    c = random_smooth_perturbation(phi.grid, phi, 0.01, 43)
    assert np.array_equal(a, b) and not np.array_equal(a, c)
    assert math.sqrt(sobolev_norm_sq(phi.grid, a)) == pytest.approx(
        0.01 * math.sqrt(sobolev_norm_sq(phi.grid, phi.values)), rel=1e-12)
    with pytest.raises(ValueError):
        stability_experiment(WaveModel.albert(), ALBERT_SPEED, phi, 0.01, 1.0, 0.01, "bogus")
