"""Petviashvili iteration for ``(M + c) phi = a phi^q`` on a periodic grid."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .grid import Grid, GridProfile, l2_norm_sq, padded_power
from .models import WaveModel

log = logging.getLogger(__name__)


class OperatorNotPositiveError(ValueError):
    pass


class PetviashviliError(RuntimeError):
    def __init__(self, msg: str, report: SolveReport):
        super().__init__(msg)
        self.report = report


class SweepError(RuntimeError):
    def __init__(self, msg: str, partial: list):
        super().__init__(msg)
        self.partial = partial


@dataclass
class SolveReport:
    iterations: int = 0
    multiplier_history: list = field(default_factory=list)
    final_residual: float = float("nan")
    converged: bool = False

    @property
    def multiplier_final(self) -> float:
        return self.multiplier_history[-1] if self.multiplier_history else float("nan")

    def to_dict(self) -> dict:
        return {"iterations": self.iterations, "multiplier_final": self.multiplier_final,
                "residual_sup": self.final_residual, "converged": self.converged}


def default_init(model: WaveModel, speed: float, grid: Grid) -> GridProfile:
    """KdV-like ``sech^2`` bump sized from the speed and the k^2 coefficient."""
    w = 0.5 * np.sqrt(speed / model.c2)
    return GridProfile(grid, 3.0 * speed / np.cosh(w * grid.x) ** 2)


def petviashvili_solve(model: WaveModel, speed: float, grid: Grid,
                       init: GridProfile | None = None, tol: float = 1e-12,
                       max_iter: int = 2000, dealias: bool = True):
    """Stabilised fixed-point iteration with exponent ``theta = q/(q-1)``.

    Stops once ``|m - 1| < tol`` and the spectral sup-residual is below
    ``100*tol``. Returns the (symmetrised, even) profile and a SolveReport.
    """
    symbol = model.symbol(grid.k) + speed
    if not np.all(symbol > 0):
        raise OperatorNotPositiveError("operator not positive, reduce speed or gamma")
    if init is None:
        init = default_init(model, speed, grid)
    u = init.even_part().values
    if not np.any(u):
        raise ValueError("initial guess must be nonzero")
    theta = model.q / (model.q - 1.0)
    refl = grid.reflect_index()
    power = (lambda v: padded_power(v, model.q)) if dealias else (lambda v: v ** model.q)
    report = SolveReport()

    for it in range(1, max_iter + 1):
        uh = np.fft.fft(u)
        nh = np.fft.fft(model.a * power(u))
        num = np.sum(symbol * np.abs(uh) ** 2)
        den = np.sum((np.conj(uh) * nh).real)
        if den == 0 or not np.isfinite(den):
            report.iterations = it
            raise PetviashviliError("iteration collapsed to zero", report)
        m = num / den
        report.multiplier_history.append(float(m))
        u = (m ** theta) * np.fft.ifft(nh / symbol).real
        u = 0.5 * (u + u[refl])
        if not np.all(np.isfinite(u)):
            report.iterations = it
            raise PetviashviliError("iteration diverged", report)
        if abs(m - 1.0) < tol:
            res = float(np.max(np.abs(model.stationary_residual(grid, u, speed))))
            if res < 100 * tol:
                report.iterations = it
                report.final_residual = res
                report.converged = True
                break
    else:
        report.iterations = max_iter
        report.final_residual = float(np.max(np.abs(model.stationary_residual(grid, u, speed))))
        raise PetviashviliError(
            f"no convergence after {max_iter} iterations (|m-1| = {abs(m - 1):.3e})", report)

    meta = {"speed": speed, **model.to_dict()}
    return GridProfile(grid, u, meta), report


@dataclass
class SweepPoint:
    speed: float
    norm_sq: float
    profile: GridProfile = field(repr=False)
    report: SolveReport = field(repr=False)


def continuation_sweep(model: WaveModel, speeds, grid: Grid, init: GridProfile | None = None,
                       tol: float = 1e-12, warm_start: bool = True) -> list:
    """Solve along ``speeds`` at fixed model parameters, warm-starting each solve."""
    speeds = list(speeds)
    if any(b <= a for a, b in zip(speeds, speeds[1:])):
        raise ValueError("speeds must be sorted ascending")
    out = []
    guess = init
    for c in speeds:
        try:
            prof, rep = petviashvili_solve(model, c, grid, guess, tol=tol)
        except (PetviashviliError, OperatorNotPositiveError) as exc:
            raise SweepError(f"solve failed at speed {c}: {exc}", out) from exc
        out.append(SweepPoint(c, l2_norm_sq(grid, prof.values), prof, rep))
        log.debug("speed %.6g: %d iterations", c, rep.iterations)
        if warm_start:
            guess = prof
    return out


def sweep_slopes(points) -> list:
    """Finite-difference slope of ``norm_sq`` per interval, as (midpoint, slope)."""
    return [(0.5 * (a.speed + b.speed), (b.norm_sq - a.norm_sq) / (b.speed - a.speed))
            for a, b in zip(points, points[1:])]
