"""Dense spectral analysis of the linearised operator

    L z = gamma z'''' - c2 z'' + c z - a q phi^(q-1) z

around a solitary wave: negative-eigenvalue count, the translational zero
mode, and the index ``I = <chi, phi>`` with ``L chi = phi``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .grid import Grid, GridProfile, derivative, inner
from .models import WaveModel


class GridTooCoarseError(ValueError):
    pass


class NearSingularError(np.linalg.LinAlgError):
    pass


def multiplier_matrix(grid: Grid, symbol: np.ndarray) -> np.ndarray:
    """Dense matrix of the Fourier multiplier ``symbol`` (circulant)."""
    col = np.fft.ifft(symbol).real
    idx = (np.arange(grid.n)[:, None] - np.arange(grid.n)[None, :]) % grid.n
    return col[idx]


@dataclass
class LinearizedOperator:
    model: WaveModel
    speed: float
    grid: Grid
    phi: GridProfile
    potential: GridProfile
    matrix: np.ndarray = field(repr=False)
    asymmetry: float = 0.0

    @property
    def diag_scale(self) -> float:
        return float(np.max(np.abs(np.diag(self.matrix))))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ v


def assemble_operator(model: WaveModel, speed: float, phi: GridProfile,
                      b: float | None = None) -> LinearizedOperator:
    """Assemble ``IFT diag(delta + c) FT - diag(potential)`` and symmetrise it.

    ``b`` is the inverse length of the wave when known; the grid must have
    ``b * spacing <= 0.2``. Without ``b`` the profile's spectrum must have
    decayed below 1e-10 of its peak in the top third of the modes.
    """
    grid = phi.grid
    if b is not None:
        if b * grid.spacing > 0.2:
            raise GridTooCoarseError("grid too coarse")
    else:
        ph = np.abs(np.fft.fft(phi.values))
        top = np.abs(grid.k) > (2.0 / 3.0) * np.max(np.abs(grid.k))
        if np.max(ph[top]) > 1e-10 * np.max(ph):
            raise GridTooCoarseError("grid too coarse")
    pot = model.potential(phi.values)
    mat = multiplier_matrix(grid, model.symbol(grid.k) + speed)
    mat[np.diag_indices(grid.n)] -= pot
    asym = float(np.max(np.abs(mat - mat.T)))
    mat = 0.5 * (mat + mat.T)
    return LinearizedOperator(model, speed, grid, phi, GridProfile(grid, pot), mat, asym)


@dataclass
class SpectrumReport:
    lowest_eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)
    threshold: float = 0.0
    negative_count: int = 0
    zero_count: int = 0
    zero_mode_residual: float = float("nan")
    cos_sim_zero_mode: float = float("nan")
    chi: GridProfile | None = field(default=None, repr=False)
    index_I: float = float("nan")
    chi_residual: float = float("nan")
    meta: dict = field(default_factory=dict)

    @property
    def zero_simple(self) -> bool:
        return self.zero_count == 1

    @property
    def stable_flag(self) -> bool:
        return self.negative_count == 1 and self.zero_simple and self.index_I < 0

    def to_dict(self) -> dict:
        return {
            "omega": self.meta.get("speed"),
            "gamma": self.meta.get("gamma"),
            "N": self.meta.get("N"),
            "L": self.meta.get("L"),
            "eigs": [float(v) for v in self.lowest_eigenvalues],
            "neg_count": int(self.negative_count),
            "zero_residual": float(self.zero_mode_residual),
            "cos_sim_zero_mode": float(self.cos_sim_zero_mode),
            "index_I": float(self.index_I),
            "stable": bool(self.stable_flag),
        }


def zero_threshold(op: LinearizedOperator) -> float:
    return 1e-8 * max(1.0, op.diag_scale)


def lowest_spectrum(op: LinearizedOperator, m: int = 6) -> SpectrumReport:
    if m < 4:
        raise ValueError("need at least 4 eigenvalues")
    vals, vecs = scipy.linalg.eigh(op.matrix, subset_by_index=[0, m - 1])
    tau = zero_threshold(op)
    neg = int(np.sum(vals < -tau))
    zero = int(np.sum(np.abs(vals) <= tau))
    dphi = derivative(op.grid, op.phi.values, 1)
    nd = np.linalg.norm(dphi)
    zres = float(np.linalg.norm(op.apply(dphi)) / nd) if nd > 0 else float("nan")
    v2 = vecs[:, 1]
    cos = float(abs(np.dot(v2, dphi)) / (np.linalg.norm(v2) * nd)) if nd > 0 else float("nan")
    meta = {"speed": op.speed, "gamma": op.model.gamma, "N": op.grid.n, "L": op.grid.L,
            "model": op.model.name}
    return SpectrumReport(vals, vecs, tau, neg, zero, zres, cos, meta=meta)


def even_basis(grid: Grid) -> np.ndarray:
    """Orthonormal basis (columns) of grid vectors with ``v(-x) = v(x)``."""
    n = grid.n
    half = n // 2
    P = np.zeros((n, half + 1))
    r = 1.0 / np.sqrt(2.0)
    for j in range(half + 1):
        if j in (0, half):
            P[j, j] = 1.0
        else:
            P[j, j] = r
            P[n - j, j] = r
    return P


def solve_chi_and_index(op: LinearizedOperator, phi: GridProfile | None = None,
                        cond_max: float = 1e12) -> tuple:
    """Solve ``L chi = phi`` in the even subspace and return ``(chi, <chi, phi>)``."""
    phi = op.phi if phi is None else phi
    P = even_basis(op.grid)
    A = P.T @ op.matrix @ P
    cond = np.linalg.cond(A)
    if not cond < cond_max:
        raise NearSingularError("near-singular even subspace")
    y = np.linalg.solve(A, P.T @ phi.values)
    chi = P @ y
    return GridProfile(op.grid, chi), inner(op.grid, chi, phi.values)


def chi_residual(op: LinearizedOperator, chi: GridProfile, phi: GridProfile | None = None) -> float:
    phi = op.phi if phi is None else phi
    return float(np.linalg.norm(op.apply(chi.values) - phi.values) / np.linalg.norm(phi.values))


def analyze(model: WaveModel, speed: float, phi: GridProfile, m: int = 6,
            b: float | None = None) -> SpectrumReport:
    """Full report: spectrum, zero mode, chi and the index."""
    op = assemble_operator(model, speed, phi, b)
    rep = lowest_spectrum(op, m)
    chi, I = solve_chi_and_index(op)
    rep.chi = chi
    rep.index_I = float(I)
    rep.chi_residual = chi_residual(op, chi)
    rep.meta["asymmetry"] = op.asymmetry
    return rep


def derivative_discrepancy(op: LinearizedOperator, dphi_dspeed: np.ndarray) -> float:
    """``||L(-dphi/dc) - phi|| / ||phi||``; small iff chi = -dphi/dc holds."""
    r = op.apply(-dphi_dspeed) - op.phi.values
    return float(np.linalg.norm(r) / np.linalg.norm(op.phi.values))


@dataclass
class MomentReport:
    slopes: list  # (speed, slope)
    passed: bool


def moment_check(speeds, norms) -> MomentReport:
    """Centred finite-difference slopes of ``norm_sq`` against speed; all must be > 0."""
    s = np.asarray(speeds, dtype=float)
    v = np.asarray(norms, dtype=float)
    if s.size < 3:
        raise ValueError("moment check needs at least 3 speeds")
    slopes = [(float(s[i]), float((v[i + 1] - v[i - 1]) / (s[i + 1] - s[i - 1])))
              for i in range(1, s.size - 1)]
    return MomentReport(slopes, all(sl > 0 for _, sl in slopes))


def moment_check_points(points) -> MomentReport:
    """Moment check on branch points (analytic norms) or sweep points."""
    from .branch import l2_norm_and_index

    speeds, norms = [], []
    for p in points:
        if hasattr(p, "norm_sq"):
            speeds.append(p.speed)
            norms.append(p.norm_sq)
        else:
            speeds.append(p.speed)
            norms.append(l2_norm_and_index(p)[0])
    return moment_check(speeds, norms)
