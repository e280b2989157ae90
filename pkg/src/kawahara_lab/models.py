"""Equation presets: ``u_t + (a u^q)_x + c2 u_xxx - gamma u_xxxxx = 0``.

Travelling waves ``u = phi(x - c t)`` satisfy the stationary equation

    (M + c) phi = a phi^q,    M = gamma d^4/dx^4 - c2 d^2/dx^2,

whose Fourier symbol is ``delta(k) = gamma k^4 + c2 k^2``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .grid import Grid, apply_symbol

ALBERT_GAMMA = 1.0 / 1680.0
ALBERT_C2 = 13.0 / 420.0
ALBERT_SPEED = 12.0 / 35.0


@dataclass(frozen=True)
class WaveModel:
    gamma: float
    c2: float = 1.0
    a: float = 0.5
    q: int = 2
    name: str = "kawahara"

    @classmethod
    def kawahara(cls, gamma: float) -> WaveModel:
        return cls(gamma, 1.0, 0.5, 2, "kawahara")

    @classmethod
    def mkawahara(cls, gamma: float) -> WaveModel:
        return cls(gamma, 1.0, 1.0, 3, "mkawahara")

    @classmethod
    def kdv(cls) -> WaveModel:
        return cls(0.0, 1.0, 0.5, 2, "kdv")

    @classmethod
    def mkdv(cls) -> WaveModel:
        return cls(0.0, 1.0, 1.0, 3, "mkdv")

    @classmethod
    def albert(cls) -> WaveModel:
        """Albert's equation u_t + u u_x + 13/420 u_xxx - 1/1680 u_xxxxx = 0."""
        return cls(ALBERT_GAMMA, ALBERT_C2, 0.5, 2, "albert")

    @classmethod
    def preset(cls, name: str, gamma: float | None = None) -> WaveModel:
        if name == "kawahara":
            return cls.kawahara(gamma)
        if name == "mkawahara":
            return cls.mkawahara(gamma)
        if name == "kdv":
            return cls.kdv()
        if name == "mkdv":
            return cls.mkdv()
        if name == "albert":
            return cls.albert()
        raise ValueError(f"unknown equation {name!r}")

    def with_gamma(self, gamma: float) -> WaveModel:
        return replace(self, gamma=gamma)

    def symbol(self, k: np.ndarray) -> np.ndarray:
        return self.gamma * k ** 4 + self.c2 * k ** 2

    def nonlinearity(self, phi: np.ndarray) -> np.ndarray:
        return self.a * phi ** self.q

    def potential(self, phi: np.ndarray) -> np.ndarray:
        """Derivative of the nonlinearity, the multiplication term of the linearisation."""
        return self.a * self.q * phi ** (self.q - 1)

    def stationary_residual(self, grid: Grid, phi: np.ndarray, speed: float) -> np.ndarray:
        """Pointwise ``(M + c)phi - a phi^q`` evaluated spectrally."""
        lin = apply_symbol(grid, phi, self.symbol(grid.k) + speed)
        return lin - self.nonlinearity(phi)

    def to_dict(self) -> dict:
        return {"name": self.name, "gamma": self.gamma, "c2": self.c2, "a": self.a, "q": self.q}
