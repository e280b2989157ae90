"""Numerical checks that a sampled even kernel is positive and PF(2).

PF(2) here is the usual TP2 condition for translation kernels:
``g(x1-y1) g(x2-y2) - g(x1-y2) g(x2-y1) >= 0`` whenever ``x1 < x2`` and
``y1 < y2``. For even positive kernels log-concavity is sufficient, so two
certifiers are offered: a second-difference test on ``log g`` and a
Monte-Carlo sweep over random 2x2 determinants.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicSpline

from .branch import KawaharaBranchPoint, MKawaharaBranchPoint, sech2_transform, sech4_transform


class NonEvenKernelError(ValueError):
    pass


@dataclass
class KernelSamples:
    k_values: np.ndarray
    g_values: np.ndarray
    provenance: str = "closed_form"
    # exact log g for closed forms whose tails underflow in double precision
    log_g: np.ndarray | None = None

    def __post_init__(self):
        self.k_values = np.asarray(self.k_values, dtype=float)
        self.g_values = np.asarray(self.g_values, dtype=float)
        if self.log_g is not None:
            self.log_g = np.asarray(self.log_g, dtype=float)
        if self.k_values.shape != self.g_values.shape:
            raise ValueError("k and g must have the same length")
        if np.any(np.diff(self.k_values) <= 0):
            raise ValueError("k values must be sorted ascending")

    def check_even(self, rtol: float = 1e-12) -> None:
        k, g = self.k_values, self.g_values
        if not np.allclose(k, -k[::-1], rtol=0, atol=1e-12 * max(1.0, np.max(np.abs(k)))):
            raise NonEvenKernelError("k grid is not symmetric about 0")
        scale = np.max(np.abs(g))
        if np.max(np.abs(g - g[::-1])) > rtol * scale:
            raise NonEvenKernelError("kernel is not even")

    def scaled(self, c: float) -> KernelSamples:
        lg = None if self.log_g is None else self.log_g + np.log(c)
        return KernelSamples(self.k_values, c * self.g_values, self.provenance, lg)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "g"])
        for k, g in zip(self.k_values, self.g_values):
            w.writerow([f"{k:.17g}", f"{g:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> KernelSamples:
        rows = list(csv.reader(io.StringIO(text)))
        if [h.strip() for h in rows[0]] != ["k", "g"]:
            raise ValueError("kernel file must have header 'k,g'")
        data = np.array([[float(a), float(b)] for a, b in rows[1:]])
        return cls(data[:, 0], data[:, 1], "file")


def symmetric_k(k_max: float = 40.0, n: int = 801) -> np.ndarray:
    """Uniform grid on [-k_max, k_max] with an odd sample count (contains 0)."""
    if n % 2 == 0:
        n += 1
    return np.linspace(-k_max, k_max, n)


def sech2_kernel(k_max: float = 40.0, n: int = 801) -> KernelSamples:
    k = symmetric_k(k_max, n)
    return KernelSamples(k, sech2_transform(k))


def gaussian_kernel(k_max: float = 40.0, n: int = 801) -> KernelSamples:
    k = symmetric_k(k_max, n)
    return KernelSamples(k, np.exp(-k * k), log_g=-k * k)


def bimodal_kernel(k_max: float = 40.0, n: int = 801) -> KernelSamples:
    k = symmetric_k(k_max, n)
    lg = -(np.abs(k) - 3.0) ** 2
    return KernelSamples(k, np.exp(lg), log_g=lg)


def nonlinearity_kernel(point, k_max: float = 40.0, n: int = 801) -> KernelSamples:
    """Transform of ``phi^p``: phi itself for Kawahara, phi^2 for modified Kawahara."""
    k = symmetric_k(k_max, n)
    if isinstance(point, KawaharaBranchPoint):
        kb = k / point.b
        g = (point.beta1 * sech2_transform(kb) + point.lambda1 * sech4_transform(kb)) / point.b
    elif isinstance(point, MKawaharaBranchPoint):
        g = point.beta2 ** 2 * sech4_transform(k / point.alpha) / point.alpha
    else:
        raise TypeError(f"unsupported branch point {type(point).__name__}")
    return KernelSamples(k, g)


def quadrature_kernel(x: np.ndarray, f: np.ndarray, k: np.ndarray) -> KernelSamples:
    """``∫ f(x) e^{-ikx} dx`` by the trapezoid rule (real part; f even)."""
    h = x[1] - x[0]
    g = h * np.cos(np.outer(k, x)) @ f
    return KernelSamples(k, g, "quadrature")


@dataclass
class PF2Report:
    positive: bool
    log_concave: bool | None = None
    max_second_difference: float | None = None
    tp2_min_det: float | None = None
    tp2_argmin: list | None = None
    tp2_pass: bool | None = None
    num_samples: int | None = None

    def to_dict(self) -> dict:
        return {"positive": self.positive, "log_concave": self.log_concave,
                "tp2_min_det": self.tp2_min_det, "tp2_argmin": self.tp2_argmin}


def positivity_and_logconcavity(kernel: KernelSamples, tol: float = 1e-10) -> PF2Report:
    k, g = kernel.k_values, kernel.g_values
    if k.size < 64 or k[0] > -40.0 or k[-1] < 40.0:
        raise ValueError("need >= 64 samples spanning |k| <= 40")
    kernel.check_even()
    if kernel.log_g is not None:
        lg = kernel.log_g
        positive = bool(np.all(np.isfinite(lg)) and np.all(g >= 0))
    else:
        positive = bool(np.all(g > 0))
        lg = np.log(g) if positive else None
    if not positive:
        return PF2Report(False, False, None)
    h = np.diff(k)
    # second divided differences rescaled by the local spacing squared
    dd = 2.0 * ((lg[2:] - lg[1:-1]) / h[1:] - (lg[1:-1] - lg[:-2]) / h[:-1]) / (h[1:] + h[:-1])
    d2 = dd * (0.5 * (h[1:] + h[:-1])) ** 2
    worst = float(np.max(d2))
    return PF2Report(True, bool(worst <= tol), worst)


def tp2_sample_check(kernel: KernelSamples, num_samples: int = 100_000, seed: int = 42,
                     rtol: float = 1e-12) -> PF2Report:
    """Random 2x2 determinants of the cubic interpolant of the kernel."""
    k, g = kernel.k_values, kernel.g_values
    spline = CubicSpline(k, g)
    half = 0.5 * min(-k[0], k[-1])
    rng = np.random.Generator(np.random.Philox(seed))
    xs = np.sort(rng.uniform(-half, half, size=(num_samples, 2)), axis=1)
    ys = np.sort(rng.uniform(-half, half, size=(num_samples, 2)), axis=1)
    x1, x2 = xs[:, 0], xs[:, 1]
    y1, y2 = ys[:, 0], ys[:, 1]
    det = spline(x1 - y1) * spline(x2 - y2) - spline(x1 - y2) * spline(x2 - y1)
    i = int(np.argmin(det))
    scale = float(np.max(g)) ** 2
    positive = bool(np.all(g > 0)) if kernel.log_g is None else bool(np.all(np.isfinite(kernel.log_g)))
    return PF2Report(positive=positive, tp2_min_det=float(det[i]),
                     tp2_argmin=[float(x1[i]), float(x2[i]), float(y1[i]), float(y2[i])],
                     tp2_pass=bool(det[i] >= -rtol * scale), num_samples=num_samples)


def full_report(kernel: KernelSamples, num_samples: int = 100_000, seed: int = 42) -> PF2Report:
    lc = positivity_and_logconcavity(kernel)
    tp = tp2_sample_check(kernel, num_samples, seed)
    lc.tp2_min_det, lc.tp2_argmin = tp.tp2_min_det, tp.tp2_argmin
    lc.tp2_pass, lc.num_samples = tp.tp2_pass, tp.num_samples
    return lc
