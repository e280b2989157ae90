"""Uniform periodic grids and pseudospectral helpers shared by the solvers."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Grid:
    """Periodic grid on ``[-L, L)`` with ``n`` points (a power of two, ``n >= 64``)."""

    n: int
    L: float

    def __post_init__(self):
        if self.n < 64 or self.n & (self.n - 1):
            raise ValueError(f"n_points must be a power of two >= 64, got {self.n}")
        if not self.L > 0:
            raise ValueError("half_length must be positive")

    @property
    def spacing(self) -> float:
        return 2.0 * self.L / self.n

    @property
    def period(self) -> float:
        return 2.0 * self.L

    @property
    def x(self) -> np.ndarray:
        return -self.L + self.spacing * np.arange(self.n)

    @property
    def k(self) -> np.ndarray:
        """Wavenumbers ``pi*j/L`` in FFT ordering (Nyquist carried as negative)."""
        return np.fft.fftfreq(self.n, d=self.spacing) * 2.0 * np.pi

    @property
    def k_odd(self) -> np.ndarray:
        """Wavenumbers with the Nyquist mode zeroed, for odd-order derivatives."""
        k = self.k.copy()
        k[self.n // 2] = 0.0
        return k

    def reflect_index(self) -> np.ndarray:
        """Index map j -> index of the mirror point ``-x_j``."""
        return (-np.arange(self.n)) % self.n

    def to_dict(self) -> dict:
        return {"N": self.n, "L": self.L}


def auto_grid(b_expected: float, n: int = 1024, bl_min: float = 20.0) -> Grid:
    """Grid with ``b_expected * L >= bl_min``."""
    L = float(np.ceil(bl_min / b_expected))
    return Grid(n, L)


@dataclass
class GridProfile:
    """Samples of a real profile on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.shape != (self.grid.n,):
            raise ValueError("profile length does not match grid")

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def even_part(self) -> GridProfile:
        v = 0.5 * (self.values + self.values[self.grid.reflect_index()])
        return GridProfile(self.grid, v, dict(self.meta))

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["xi", "phi"])
        for xi, phi in zip(self.x, self.values):
            w.writerow([f"{xi:.17g}", f"{phi:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> GridProfile:
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        xi, phi = data[:, 0], data[:, 1]
        h = xi[1] - xi[0]
        grid = Grid(len(xi), -float(xi[0]))
        if not np.allclose(np.diff(xi), h, rtol=1e-9, atol=0):
            raise ValueError("profile samples are not uniform")
        return cls(grid, phi)


def inner(grid: Grid, f: np.ndarray, g: np.ndarray) -> float:
    """Trapezoid (spectrally accurate on periodic grids) L² inner product."""
    return float(grid.spacing * np.dot(f, g))


def l2_norm_sq(grid: Grid, f: np.ndarray) -> float:
    return inner(grid, f, f)


def derivative(grid: Grid, f: np.ndarray, order: int) -> np.ndarray:
    k = grid.k_odd if order % 2 else grid.k
    return np.fft.ifft((1j * k) ** order * np.fft.fft(f)).real


def apply_symbol(grid: Grid, f: np.ndarray, symbol: np.ndarray) -> np.ndarray:
    return np.fft.ifft(symbol * np.fft.fft(f)).real


def sobolev_norm_sq(grid: Grid, f: np.ndarray, s: int = 2) -> float:
    """Discrete ``(1/2π)∫(1+ξ²)^s |f̂|² dξ``; ``s = 0`` gives the spatial L² norm."""
    fh = np.fft.fft(f)
    w = (1.0 + grid.k ** 2) ** s
    return float(grid.spacing / grid.n * np.sum(w * np.abs(fh) ** 2))


def padded_power(f: np.ndarray, q: int, pad: int = 2) -> np.ndarray:
    """``f**q`` computed on a ``pad``-times finer grid, truncated back to the original modes."""
    n = f.size
    m = pad * n
    fh = np.fft.fft(f)
    big = np.zeros(m, dtype=complex)
    half = n // 2
    big[:half] = fh[:half]
    big[m - half + 1:] = fh[half + 1:]
    # split the Nyquist coefficient to keep the interpolant real
    big[half] = 0.5 * fh[half]
    big[m - half] = 0.5 * fh[half]
    fb = np.fft.ifft(big).real * pad
    pb = np.fft.fft(fb ** q) / pad
    out = np.empty(n, dtype=complex)
    out[:half] = pb[:half]
    out[half + 1:] = pb[m - half + 1:]
    out[half] = pb[half] + pb[m - half]
    return np.fft.ifft(out).real
