"""Explicit solitary-wave families, their norms and the moment index.

Two Kawahara families are available: the closed forms printed for the
``beta*sech^2 + lam*sech^4`` ansatz (``source="paper"``) and the positive
root of the coefficient system rederived by :mod:`exact_algebra`
(``source="derived"``). The modified Kawahara wave ``beta*sech^2(alpha xi)``
comes in the same two flavours through ``convention``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from . import exact_algebra as ea
from .grid import Grid, GridProfile
from .models import WaveModel

SECH_INTEGRALS = {2: Fraction(2), 4: Fraction(4, 3), 6: Fraction(16, 15), 8: Fraction(32, 35)}

BRANCH_CSV_HEADER = ["omega", "lambda1", "beta1", "b", "gamma1", "norm_sq", "index", "source"]


class NoBranchError(ValueError):
    pass


def _check_speed(speed: float) -> None:
    if not speed > 0:
        raise ValueError("wave speed must be positive")


@dataclass(frozen=True)
class SymbolSpec:
    """Symbol ``delta(k) = gamma k^4 + c2 k^2`` plus the growth-bound constants."""

    gamma: float
    c2: float = 1.0
    A1: float | None = None
    A2: float | None = None
    nu: int = 4
    mu: int = 4
    k0: float = 1.0
    b_low: float = -1.0

    def delta(self, k):
        k = np.asarray(k, dtype=float)
        return self.gamma * k ** 4 + self.c2 * k ** 2

    def constants(self) -> tuple:
        # (1+|k|)^4 >= k^4 + k^2, so max(gamma, c2) bounds from above
        a1 = self.gamma if self.A1 is None else self.A1
        a2 = max(self.gamma, self.c2) if self.A2 is None else self.A2
        return a1, a2

    def validate(self, k_samples=None) -> dict:
        if k_samples is None:
            k_samples = np.linspace(-200.0, 200.0, 4001)
        k = np.asarray(k_samples, dtype=float)
        d = self.delta(k)
        a1, a2 = self.constants()
        tail = np.abs(k) >= self.k0
        lower = bool(np.all(a1 * np.abs(k[tail]) ** self.nu <= d[tail] * (1 + 1e-14)))
        upper = bool(np.all(d[tail] <= a2 * (1 + np.abs(k[tail])) ** self.mu))
        even = bool(np.allclose(self.delta(-k), d, rtol=1e-15, atol=0))
        above = bool(np.all(d > self.b_low))
        return {"even": even, "lower_bound": lower, "upper_bound": upper,
                "above_b": above, "ok": even and lower and upper and above and a1 > 0}


# ---------------------------------------------------------------------------
# Kawahara
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KawaharaBranchPoint:
    omega: float
    lambda1: float
    beta1: float
    b: float
    gamma1: float
    source: str = "paper"
    exact: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def speed(self) -> float:
        return self.omega

    @property
    def gamma(self) -> float:
        return self.gamma1

    def model(self) -> WaveModel:
        return WaveModel.kawahara(self.gamma1)

    def profile(self, xi) -> np.ndarray:
        s2 = 1.0 / np.cosh(self.b * np.asarray(xi, dtype=float)) ** 2
        return self.beta1 * s2 + self.lambda1 * s2 * s2

    def scaled(self, s: float) -> KawaharaBranchPoint:
        """Point at speed ``s*omega`` by homogeneity."""
        return KawaharaBranchPoint(self.omega * s, self.lambda1 * s, self.beta1 * s,
                                   self.b * math.sqrt(s), self.gamma1 / s, self.source)


def paper_kawahara_branch(omega: float) -> KawaharaBranchPoint:
    """Closed forms printed for lambda1, beta1, b, with gamma1 = lambda1/(1680 b^4)."""
    _check_speed(omega)
    lam = ea.paper_lambda_over_omega()
    beta = ea.paper_beta_over_omega()
    bsq = ea.paper_b_squared_over_omega()
    gamma_omega = lam / (1680 * bsq * bsq)
    return KawaharaBranchPoint(
        omega=omega,
        lambda1=float(lam) * omega,
        beta1=float(beta) * omega,
        b=math.sqrt(float(bsq) * omega),
        gamma1=float(gamma_omega) / omega,
        source="paper",
        exact={"lambda_over_omega": lam, "beta_over_omega": beta,
               "b_squared_over_omega": bsq, "gamma_times_omega": gamma_omega},
    )


def _solve_linear(poly: ea.ParamPoly, sym: str) -> ea.ParamPoly:
    """Solve ``poly = 0`` for a symbol entering linearly with constant coefficient."""
    i = ea.SYMBOLS.index(sym)
    coef = ea.ParamPoly()
    rest = {}
    for e, c in poly.terms:
        if e[i] == 0:
            rest[e] = c
        elif e[i] == 1:
            q = list(e)
            q[i] = 0
            coef = coef + ea.ParamPoly.from_dict({tuple(q): c})
        else:
            raise ValueError(f"{sym} enters nonlinearly")
    if len(coef.terms) != 1 or any(coef.terms[0][0]):
        raise ValueError(f"coefficient of {sym} is not a nonzero constant")
    return ea.ParamPoly.from_dict(rest) * (-1 / coef.terms[0][1])


def _divide_out(poly: ea.ParamPoly, sym: str) -> ea.ParamPoly:
    i = ea.SYMBOLS.index(sym)
    exps = [0] * len(ea.SYMBOLS)
    exps[i] = poly.content_monomial()[i]
    return poly.divide_monomial(tuple(exps))


def _const(poly: ea.ParamPoly) -> Fraction:
    if not poly.terms:
        return Fraction(0)
    if len(poly.terms) != 1 or any(poly.terms[0][0]):
        raise ValueError(f"expected a constant, got {poly}")
    return poly.terms[0][1]


def _sqrt_fraction(x: Fraction):
    """Exact square root of a non-negative rational as Fraction or QuadExt."""
    num = x.numerator * x.denominator
    den = x.denominator
    # num = s^2 * d with d squarefree
    s, d, p = 1, 1, 2
    while p * p <= num:
        while num % (p * p) == 0:
            num //= p * p
            s *= p
        if num % p == 0:
            num //= p
            d *= p
        p += 1
    d *= num
    if d == 1:
        return Fraction(s, den)
    return ea.QuadExt(0, Fraction(s, den), d)


@dataclass
class DerivedKawaharaSolution:
    """Exact per-unit-speed solution of the derived system (omega = 1)."""

    lam: Fraction
    beta: Fraction
    B: Fraction
    gamma: Fraction
    case: str
    notes: list


@lru_cache(maxsize=None)
def derived_kawahara_solution() -> DerivedKawaharaSolution:
    """Positive root of the rederived coefficient system at unit speed.

    gamma enters only through ``gamma*B^2``; the sech^8 equation fixes that
    combination in terms of lam. The sech^2 equation factors as
    ``beta * (...)``: for ``beta != 0`` it fixes B, the sech^6 equation then
    gives beta and the sech^4 equation is a quadratic in lam. The ``beta = 0``
    factor leaves a pure sech^4 family. The first case with a positive root
    is returned.
    """
    system = ea.derived_kawahara_system()
    e2, e4, e6, e8 = (system[n] for n in (2, 4, 6, 8))
    gB2 = (0, 1, 0, 0, 2)
    e8r = _divide_out(e8, "lam")
    p = e8r.coefficient(lam=1)
    q = e8r.coefficient(gamma=1, B=2)
    rule = ea.ParamPoly.monomial(-p / q, lam=1)
    e2r, e4r, e6r = (e.rewrite(gB2, rule) for e in (e2, e4, e6))
    one = {"omega": 1}
    notes = []

    # beta != 0
    B_expr = _solve_linear(_divide_out(e2r, "beta"), "B")
    e6b = _divide_out(e6r.substitute({"B": B_expr}), "lam")
    beta_expr = _solve_linear(e6b, "beta")
    quad = e4r.substitute({"B": B_expr, "beta": beta_expr}).substitute(one)
    qa, qb, qc = (quad.coefficient(lam=2), quad.coefficient(lam=1), quad.coefficient())
    disc = qb * qb - 4 * qa * qc
    notes.append(f"beta!=0 case: {qa}*t^2 + {qb}*t + {qc} = 0 in t = lam/omega, "
                 f"discriminant {disc}")
    if disc >= 0:
        r = _sqrt_fraction(disc)
        for root in ((-qb + r) / (2 * qa), (-qb - r) / (2 * qa)):
            vals = {"lam": root, "omega": 1}
            B_val = B_expr.evaluate(**vals, gamma=0, beta=0, B=0)
            beta_val = beta_expr.evaluate(**vals, gamma=0, beta=0, B=B_val)
            if all(_positive(v) for v in (root, B_val, beta_val)):
                gamma_val = (-p / q) * root / (B_val * B_val)
                return DerivedKawaharaSolution(root, beta_val, B_val, gamma_val,
                                               "beta*sech^2+lam*sech^4", notes)
        notes.append("beta!=0 case: no root with lam, beta, B > 0")
    else:
        notes.append("beta!=0 case: complex roots only")

    # beta = 0: pure sech^4
    e6z = _divide_out(e6r.substitute({"beta": 0}), "lam")
    lam_expr = _solve_linear(e6z, "lam")
    e4z = _divide_out(e4r.substitute({"beta": 0}), "lam").substitute({"lam": lam_expr})
    B_val = _const(_solve_linear(e4z, "B").substitute(one))
    lam_val = _const(lam_expr.substitute({"B": B_val}))
    if lam_val > 0 and B_val > 0:
        gamma_val = (-p / q) * lam_val / (B_val * B_val)
        notes.append("beta=0 case: pure sech^4 family")
        return DerivedKawaharaSolution(lam_val, Fraction(0), B_val, gamma_val, "lam*sech^4",
                                       notes)
    raise NoBranchError("no positive solitary branch for derived system")


def _positive(v) -> bool:
    if isinstance(v, ea.QuadExt):
        return v.sign() > 0
    return v > 0


def derived_kawahara_branch(omega: float) -> KawaharaBranchPoint:
    _check_speed(omega)
    sol = derived_kawahara_solution()
    return KawaharaBranchPoint(
        omega=omega,
        lambda1=float(sol.lam) * omega,
        beta1=float(sol.beta) * omega,
        b=math.sqrt(float(sol.B) * omega),
        gamma1=float(sol.gamma) / omega,
        source="derived",
        exact={"lambda_over_omega": sol.lam, "beta_over_omega": sol.beta,
               "b_squared_over_omega": sol.B, "gamma_times_omega": sol.gamma,
               "case": sol.case},
    )


def kawahara_branch(omega: float, source: str = "paper") -> KawaharaBranchPoint:
    if source == "paper":
        return paper_kawahara_branch(omega)
    if source == "derived":
        return derived_kawahara_branch(omega)
    raise ValueError(f"unknown source {source!r}")


def omega_for_gamma(gamma1: float, source: str = "paper") -> float:
    """Speed on the branch whose fifth-order coefficient equals ``gamma1``."""
    if not gamma1 > 0:
        raise ValueError("gamma must be positive")
    return kawahara_branch(1.0, source).gamma1 / gamma1


# ---------------------------------------------------------------------------
# modified Kawahara
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MKawaharaBranchPoint:
    c: float
    alpha: float
    beta2: float
    gamma2: float
    convention: str = "paper"

    @property
    def speed(self) -> float:
        return self.c

    @property
    def gamma(self) -> float:
        return self.gamma2

    def model(self) -> WaveModel:
        return WaveModel.mkawahara(self.gamma2)

    def profile(self, xi) -> np.ndarray:
        return self.beta2 / np.cosh(self.alpha * np.asarray(xi, dtype=float)) ** 2


@lru_cache(maxsize=None)
def derived_mkawahara_solution() -> dict:
    """Exact ``alpha^2/c``, ``beta^2/c`` and ``gamma*c`` from the rederived system."""
    system = ea.derived_mkawahara_system()
    e2, e4, e6 = (system[n] for n in (2, 4, 6))
    e4r = e4.divide_monomial(e4.content_monomial())  # beta*B out
    gB = -e4r.coefficient() / e4r.coefficient(gamma=1, B=1)
    rule = ea.ParamPoly.const(gB)
    e2r = _divide_out(e2, "beta").rewrite((0, 1, 0, 0, 1), rule)
    B_expr = _solve_linear(e2r, "B")
    B_val = _const(B_expr.substitute({"omega": 1}))
    e6r = _divide_out(e6, "beta").rewrite((0, 1, 0, 0, 1), rule)
    # beta^2 + k*B = 0
    b2 = -e6r.coefficient(B=1) * B_val / e6r.coefficient(beta=2)
    gamma_val = gB / B_val
    return {"alpha_sq_over_c": B_val, "beta_sq_over_c": b2, "gamma_times_c": gamma_val}


def mkawahara_branch(c: float, convention: str = "paper") -> MKawaharaBranchPoint:
    """alpha = sqrt(5c)/4 in both conventions; beta2 = 6 alpha (source="paper") or from the system."""
    _check_speed(c)
    sol = derived_mkawahara_solution()
    alpha = math.sqrt(float(sol["alpha_sq_over_c"]) * c)
    gamma2 = float(sol["gamma_times_c"]) / c
    if convention == "paper":
        beta2 = 6.0 * alpha
    elif convention == "derived":
        beta2 = math.sqrt(float(sol["beta_sq_over_c"]) * c)
    else:
        raise ValueError(f"unknown convention {convention!r}")
    return MKawaharaBranchPoint(c, alpha, beta2, gamma2, convention)


# ---------------------------------------------------------------------------
# evaluation, norms, transforms
# ---------------------------------------------------------------------------


def profile_eval(point, xi) -> GridProfile | np.ndarray:
    """Sample the closed-form profile on a :class:`Grid` or at raw points."""
    if isinstance(xi, Grid):
        return GridProfile(xi, point.profile(xi.x), {"speed": point.speed, "gamma": point.gamma})
    return point.profile(xi)


@lru_cache(maxsize=None)
def _symbolic_residual(kind: str) -> ea.SechPoly:
    if kind == "kawahara":
        return ea.stationary_residual(ea.StationaryEquation.kawahara(), ea.kawahara_ansatz())
    return ea.stationary_residual(ea.StationaryEquation.mkawahara(), ea.mkawahara_ansatz())


def ode_residual(point, xi) -> np.ndarray:
    """Stationary ODE residual at ``xi`` using exact derivatives of the closed form.

    Free of the round-off that spectral fourth derivatives pick up on fine grids.
    """
    xi = xi.x if isinstance(xi, Grid) else xi
    if isinstance(point, KawaharaBranchPoint):
        vals = dict(omega=point.omega, gamma=point.gamma1, beta=point.beta1,
                    lam=point.lambda1, B=point.b ** 2)
        return _symbolic_residual("kawahara").evaluate(xi, point.b, **vals)
    if isinstance(point, MKawaharaBranchPoint):
        vals = dict(omega=point.c, gamma=point.gamma2, beta=point.beta2, lam=0.0,
                    B=point.alpha ** 2)
        return _symbolic_residual("mkawahara").evaluate(xi, point.alpha, **vals)
    raise TypeError(f"unsupported branch point {type(point).__name__}")


def l2_norm_and_index(point) -> tuple:
    """Analytic ``||phi||^2`` and its derivative with respect to the speed."""
    if isinstance(point, KawaharaBranchPoint):
        b, be, la = point.b, point.beta1, point.lambda1
        i4, i6, i8 = (float(SECH_INTEGRALS[n]) for n in (4, 6, 8))
        norm = (be * be * i4 + 2 * be * la * i6 + la * la * i8) / b
        return norm, 1.5 * norm / point.omega
    if isinstance(point, MKawaharaBranchPoint):
        norm = point.beta2 ** 2 * float(SECH_INTEGRALS[4]) / point.alpha
        return norm, 0.5 * norm / point.c
    raise TypeError(f"unsupported branch point {type(point).__name__}")


def _pk_over_sinh(k):
    """``pi*k/sinh(pi*k/2)`` with the k = 0 limit 2 and no overflow."""
    k = np.abs(np.asarray(k, dtype=float))
    x = 0.5 * np.pi * k
    out = np.empty_like(k)
    small = x < 1e-8
    out[small] = 2.0
    xs = x[~small]
    out[~small] = 2.0 * np.pi * k[~small] * np.exp(-xs) / -np.expm1(-2.0 * xs)
    return out


def sech2_transform(k):
    """Transform of sech^2 with the convention f^(k) = ∫ f e^{-ikx} dx."""
    return _pk_over_sinh(k)


def sech4_transform(k):
    k = np.asarray(k, dtype=float)
    return _pk_over_sinh(k) * (k * k + 4.0) / 6.0


def profile_fourier(point, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    if isinstance(point, KawaharaBranchPoint):
        kb = k / point.b
        return (point.beta1 * sech2_transform(kb) + point.lambda1 * sech4_transform(kb)) / point.b
    if isinstance(point, MKawaharaBranchPoint):
        return point.beta2 * sech2_transform(k / point.alpha) / point.alpha
    raise TypeError(f"unsupported branch point {type(point).__name__}")


def branch_sweep(speeds, source: str = "paper") -> list:
    return [kawahara_branch(w, source) for w in speeds]


def branch_rows(points) -> list:
    rows = []
    for p in points:
        norm, idx = l2_norm_and_index(p)
        rows.append({"omega": p.omega, "lambda1": p.lambda1, "beta1": p.beta1, "b": p.b,
                     "gamma1": p.gamma1, "norm_sq": norm, "index": idx, "source": p.source})
    return rows


def branch_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(BRANCH_CSV_HEADER)
    for r in branch_rows(points):
        w.writerow([f"{r[h]:.17g}" if h != "source" else r[h] for h in BRANCH_CSV_HEADER])
    return buf.getvalue()
