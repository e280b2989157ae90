"""Exact calculus on sech-power polynomials.

Everything here works over the rationals (``fractions.Fraction``) or the
quadratic field Q(sqrt 70). Coefficients of a :class:`SechPoly` are
polynomials in the fixed symbol set ``(omega, gamma, beta, lam, B)`` where
``B`` stands for ``b**2``. Only even derivatives of pure sech powers occur
in the stationary equations, so ``tanh`` never appears and the algebra
stays closed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Mapping, Union

SYMBOLS = ("omega", "gamma", "beta", "lam", "B")
_DISPLAY = {"omega": "ω", "gamma": "γ", "beta": "β", "lam": "λ", "B": "B"}
_ASCII = {"omega": "w", "gamma": "g", "beta": "be", "lam": "la", "B": "B"}

Exponents = tuple  # tuple[int, int, int, int, int]
Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    raise TypeError(f"exact coefficient required, got {type(x).__name__}")


# ---------------------------------------------------------------------------
# Q(sqrt 70)
# ---------------------------------------------------------------------------


class QuadExt:
    """Exact element ``a + b*sqrt(d)`` of a real quadratic field, ``d = 70`` by default."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 70) -> None:
        self.a = _frac(a)
        self.b = _frac(b)
        self.d = d

    def _coerce(self, other) -> QuadExt:
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        return QuadExt(_frac(other), 0, self.d)

    def __repr__(self) -> str:
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        sign = "+" if self.b > 0 else "-"
        return f"{self.a} {sign} {abs(self.b)}*sqrt({self.d})"

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        return hash((self.a, self.b, self.d))

    def __add__(self, other) -> QuadExt:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __neg__(self) -> QuadExt:
        return QuadExt(-self.a, -self.b, self.d)

    def __sub__(self, other) -> QuadExt:
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> QuadExt:
        return self._coerce(other) - self

    def __mul__(self, other) -> QuadExt:
        try:
            o = self._coerce(other)
        except TypeError:
            return NotImplemented
        return QuadExt(self.a * o.a + self.d * self.b * o.b,
                       self.a * o.b + self.b * o.a, self.d)

    __rmul__ = __mul__

    def conjugate(self) -> QuadExt:
        return QuadExt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        """Field norm ``a**2 - d*b**2``."""
        return self.a * self.a - self.d * self.b * self.b

    def inverse(self) -> QuadExt:
        n = self.norm()
        if n == 0:
            # d is not a square, so the norm vanishes only at zero
            raise ZeroDivisionError(f"division by zero in Q(√{self.d})")
        c = self.conjugate()
        return QuadExt(c.a / n, c.b / n, self.d)

    def __truediv__(self, other) -> QuadExt:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> QuadExt:
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int) -> QuadExt:
        if n < 0:
            return self.inverse() ** (-n)
        out = QuadExt(1, 0, self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def sign(self) -> int:
        """Exact sign, decided by comparing ``a**2`` with ``d*b**2``."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins
        lhs = self.a * self.a
        rhs = self.d * self.b * self.b
        if lhs > rhs:
            return sa
        if lhs < rhs:
            return sb
        return 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __float__(self) -> float:
        # a + b*sqrt(d) = norm / (a - b*sqrt(d)) avoids cancellation when signs differ
        if self.a != 0 and self.b != 0 and (self.a > 0) != (self.b > 0):
            return float(self.norm()) / (float(self.a) - float(self.b) * math.sqrt(self.d))
        return float(self.a) + float(self.b) * math.sqrt(self.d)


# ---------------------------------------------------------------------------
# Polynomials in (omega, gamma, beta, lam, B)
# ---------------------------------------------------------------------------


def _grlex_key(exps: Exponents):
    return (-sum(exps), tuple(-e for e in exps))


def _monomial_str(exps: Exponents, names: Mapping[str, str]) -> str:
    parts = []
    for sym, e in zip(SYMBOLS, exps):
        if e == 1:
            parts.append(names[sym])
        elif e > 1:
            parts.append(f"{names[sym]}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class ParamPoly:
    """Sparse polynomial with rational coefficients in the symbols ``SYMBOLS``.

    Terms are kept in graded-lexicographic order (highest total degree first)
    and zero coefficients are never stored, so ``==`` is structural.
    """

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[Exponents, Scalar]) -> ParamPoly:
        items = [(tuple(e), _frac(c)) for e, c in d.items() if c != 0]
        items.sort(key=lambda t: _grlex_key(t[0]))
        return cls(tuple(items))

    @classmethod
    def const(cls, c: Scalar) -> ParamPoly:
        return cls.from_dict({(0, 0, 0, 0, 0): c})

    @classmethod
    def symbol(cls, name: str) -> ParamPoly:
        exps = [0] * len(SYMBOLS)
        exps[SYMBOLS.index(name)] = 1
        return cls.from_dict({tuple(exps): 1})

    @classmethod
    def monomial(cls, coeff: Scalar = 1, **powers: int) -> ParamPoly:
        exps = tuple(powers.get(s, 0) for s in SYMBOLS)
        unknown = set(powers) - set(SYMBOLS)
        if unknown:
            raise KeyError(f"unknown symbols {sorted(unknown)}")
        return cls.from_dict({exps: coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def _lift(self, other) -> ParamPoly:
        if isinstance(other, ParamPoly):
            return other
        return ParamPoly.const(_frac(other))

    def __add__(self, other) -> ParamPoly:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        d = self.as_dict()
        for e, c in o.terms:
            d[e] = d.get(e, 0) + c
        return ParamPoly.from_dict(d)

    __radd__ = __add__

    def __neg__(self) -> ParamPoly:
        return ParamPoly(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other) -> ParamPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> ParamPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> ParamPoly:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return ParamPoly.from_dict(d)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> ParamPoly:
        out = ParamPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, **powers: int) -> Fraction:
        exps = tuple(powers.get(s, 0) for s in SYMBOLS)
        return self.as_dict().get(exps, Fraction(0))

    def leading(self):
        return self.terms[0] if self.terms else None

    def divide_monomial(self, exps: Exponents, coeff: Scalar = 1) -> ParamPoly:
        """Exact division by ``coeff * monomial``; raises if not divisible."""
        coeff = _frac(coeff)
        d = {}
        for e, c in self.terms:
            q = tuple(a - b for a, b in zip(e, exps))
            if min(q) < 0:
                raise ValueError("not divisible by monomial")
            d[q] = c / coeff
        return ParamPoly.from_dict(d)

    def content_monomial(self) -> Exponents:
        """Largest monomial dividing every term."""
        if not self.terms:
            return (0,) * len(SYMBOLS)
        return tuple(min(e[i] for e, _ in self.terms) for i in range(len(SYMBOLS)))

    def substitute(self, values: Mapping[str, object]) -> ParamPoly:
        """Substitute exact values or polynomials for some symbols."""
        out = ParamPoly()
        subs = {s: (v if isinstance(v, ParamPoly) else ParamPoly.const(_frac(v)))
                for s, v in values.items()}
        for e, c in self.terms:
            term = ParamPoly.const(c)
            rest = list(e)
            for i, s in enumerate(SYMBOLS):
                if s in subs and e[i]:
                    term = term * subs[s] ** e[i]
                    rest[i] = 0
            out = out + term * ParamPoly.from_dict({tuple(rest): 1})
        return out

    def rewrite(self, pattern: Exponents, replacement: ParamPoly) -> ParamPoly:
        """Replace every occurrence of the monomial ``pattern`` as a factor.

        Applied repeatedly until no term contains ``pattern``; the replacement
        must not reintroduce it indefinitely.
        """
        out = self
        for _ in range(64):
            d: dict = {}
            changed = False
            acc = ParamPoly()
            for e, c in out.terms:
                q = tuple(a - b for a, b in zip(e, pattern))
                if min(q) >= 0:
                    changed = True
                    acc = acc + replacement * ParamPoly.from_dict({q: c})
                else:
                    d[e] = d.get(e, 0) + c
            out = ParamPoly.from_dict(d) + acc
            if not changed:
                return out
        raise RuntimeError("rewrite did not terminate")

    def evaluate(self, **values):
        """Evaluate at numeric values (floats, Fractions or QuadExt)."""
        total = 0
        for e, c in self.terms:
            term = c
            for s, k in zip(SYMBOLS, e):
                if k:
                    term = term * values[s] ** k
            total = total + term
        return total

    def to_str(self, unicode: bool = False) -> str:
        names = _DISPLAY if unicode else _ASCII
        if not self.terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(self.terms):
            mono = _monomial_str(e, names)
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            if i == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" {sign} {body}")
        return "".join(out)

    def __str__(self) -> str:
        return self.to_str()


# ---------------------------------------------------------------------------
# Sums of sech powers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SechPoly:
    """Formal sum ``sum_n c_n * sech(b xi)**n`` with ParamPoly coefficients."""

    terms: tuple = ()

    @classmethod
    def from_dict(cls, d: Mapping[int, object]) -> SechPoly:
        items = []
        for n, c in d.items():
            if n < 0:
                raise ValueError("sech exponents must be non-negative")
            c = c if isinstance(c, ParamPoly) else ParamPoly.const(_frac(c))
            if c:
                items.append((int(n), c))
        items.sort(key=lambda t: t[0])
        return cls(tuple(items))

    @classmethod
    def term(cls, n: int, coeff=1) -> SechPoly:
        return cls.from_dict({n: coeff})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def powers(self) -> list:
        return [n for n, _ in self.terms]

    def coefficient(self, n: int) -> ParamPoly:
        return self.as_dict().get(n, ParamPoly())

    def __add__(self, other: SechPoly) -> SechPoly:
        d = self.as_dict()
        for n, c in other.terms:
            d[n] = d.get(n, ParamPoly()) + c
        return SechPoly.from_dict(d)

    def __neg__(self) -> SechPoly:
        return SechPoly(tuple((n, -c) for n, c in self.terms))

    def __sub__(self, other: SechPoly) -> SechPoly:
        return self + (-other)

    def scale(self, a) -> SechPoly:
        a = a if isinstance(a, ParamPoly) else ParamPoly.const(_frac(a))
        return SechPoly.from_dict({n: c * a for n, c in self.terms})

    def __mul__(self, other) -> SechPoly:
        if not isinstance(other, SechPoly):
            return self.scale(other)
        return sech_mul(self, other)

    def __rmul__(self, other) -> SechPoly:
        return self.scale(other)

    def __pow__(self, k: int) -> SechPoly:
        out = SechPoly.term(0, 1)
        for _ in range(k):
            out = sech_mul(out, self)
        return out

    def substitute(self, values: Mapping[str, object]) -> SechPoly:
        return SechPoly.from_dict({n: c.substitute(values) for n, c in self.terms})

    def evaluate(self, xi, b: float, **values):
        """Numerically sample at points ``xi`` (array-like) for inverse length ``b``."""
        import numpy as np

        s = 1.0 / np.cosh(b * np.asarray(xi, dtype=float))
        total = np.zeros_like(s)
        for n, c in self.terms:
            total = total + float(c.evaluate(**values)) * s ** n
        return total

    def dump(self) -> str:
        """Canonical text form, one ``coef * sech^n`` term per line, sorted by n."""
        if not self.terms:
            return "0"
        return "\n".join(f"({c}) * sech^{n}" for n, c in self.terms)

    def __str__(self) -> str:
        return " + ".join(f"({c})*sech^{n}" for n, c in self.terms) or "0"


def sech_mul(f: SechPoly, g: SechPoly) -> SechPoly:
    d: dict = {}
    for n, a in f.terms:
        for m, c in g.terms:
            d[n + m] = d.get(n + m, ParamPoly()) + a * c
    return SechPoly.from_dict(d)


_B = ParamPoly.symbol("B")


def sech_d2(f: SechPoly) -> SechPoly:
    """Second derivative in xi of ``sum c_n sech^n(b xi)``.

    Uses d²/dξ² sechⁿ(bξ) = B·(n²·sechⁿ − n(n+1)·sechⁿ⁺²) with B = b².
    """
    d: dict = {}
    for n, c in f.terms:
        if n == 0:
            continue
        cb = c * _B
        d[n] = d.get(n, ParamPoly()) + cb * (n * n)
        d[n + 2] = d.get(n + 2, ParamPoly()) + cb * (-n * (n + 1))
    return SechPoly.from_dict(d)


# ---------------------------------------------------------------------------
# Stationary equations
# ---------------------------------------------------------------------------


def _pp(x) -> ParamPoly:
    return x if isinstance(x, ParamPoly) else ParamPoly.const(_frac(x))


@dataclass(frozen=True)
class StationaryEquation:
    """``-c0*phi + nl_coeff*phi**(nl_power+1) + c2*phi'' - c4*phi'''' = 0``."""

    c0: ParamPoly
    c2: ParamPoly
    c4: ParamPoly
    nl_coeff: ParamPoly
    nl_power: int
    name: str = "custom"

    @classmethod
    def kawahara(cls) -> StationaryEquation:
        return cls(ParamPoly.symbol("omega"), ParamPoly.const(1), ParamPoly.symbol("gamma"),
                   ParamPoly.const(Fraction(1, 2)), 1, "kawahara")

    @classmethod
    def mkawahara(cls) -> StationaryEquation:
        # the speed c is carried by the omega symbol
        return cls(ParamPoly.symbol("omega"), ParamPoly.const(1), ParamPoly.symbol("gamma"),
                   ParamPoly.const(1), 2, "mkawahara")

    @classmethod
    def custom(cls, c0, c2, c4, nl_coeff, nl_power: int) -> StationaryEquation:
        return cls(_pp(c0), _pp(c2), _pp(c4), _pp(nl_coeff), nl_power, "custom")

    @classmethod
    def albert(cls) -> StationaryEquation:
        return cls.custom(Fraction(12, 35), Fraction(13, 420), Fraction(1, 1680), Fraction(1, 2), 1)


def stationary_residual(equation: StationaryEquation, ansatz: SechPoly,
                        B=None) -> SechPoly:
    """Residual of the stationary ODE for ``ansatz`` as a SechPoly.

    ``B`` optionally fixes b² to an exact value after differentiation.
    """
    phi2 = sech_d2(ansatz)
    phi4 = sech_d2(phi2)
    res = (ansatz.scale(-equation.c0)
           + (ansatz ** (equation.nl_power + 1)).scale(equation.nl_coeff)
           + phi2.scale(equation.c2)
           - phi4.scale(equation.c4))
    if B is not None:
        res = res.substitute({"B": B})
    return res


def kawahara_ansatz() -> SechPoly:
    """``beta*sech^2 + lam*sech^4``."""
    return SechPoly.from_dict({2: ParamPoly.symbol("beta"), 4: ParamPoly.symbol("lam")})


def mkawahara_ansatz() -> SechPoly:
    return SechPoly.from_dict({2: ParamPoly.symbol("beta")})


def collect_coefficient_system(residual: SechPoly) -> list:
    """One polynomial equation per sech power, zeros dropped, ordered by power."""
    return [c for _, c in residual.terms if c]


def coefficient_system_by_power(residual: SechPoly) -> dict:
    return {n: c for n, c in residual.terms if c}


def derived_kawahara_system() -> dict:
    return coefficient_system_by_power(stationary_residual(StationaryEquation.kawahara(),
                                                           kawahara_ansatz()))


def derived_mkawahara_system() -> dict:
    return coefficient_system_by_power(stationary_residual(StationaryEquation.mkawahara(),
                                                           mkawahara_ansatz()))


# ---------------------------------------------------------------------------
# The printed coefficient system and its comparison with the derived one
# ---------------------------------------------------------------------------


def _m(coeff, **p) -> ParamPoly:
    return ParamPoly.monomial(coeff, **p)


F = Fraction

# b^2 -> B, b^4 -> B^2
PAPER_KAWAHARA_SYSTEM = (
    ("λ₁−1680b⁴γ₁=0",
     _m(1, lam=1) + _m(-1680, B=2, gamma=1)),
    ("−½b²+γ₁b⁴+1/16 ω=0",
     _m(F(-1, 2), B=1) + _m(1, gamma=1, B=2) + _m(F(1, 16), omega=1)),
    ("240γ₁b⁴β₁−512γ₁b⁴λ₁−32λ₁b²−12β₁b²+β₁²−2ωλ₁=0",
     _m(240, gamma=1, B=2, beta=1) + _m(-512, gamma=1, B=2, lam=1) + _m(-32, lam=1, B=1)
     + _m(-12, beta=1, B=1) + _m(1, beta=2) + _m(-2, omega=1, lam=1)),
    ("2080γ₁b⁴λ₁−240γ₁β₁b⁴−40λ₁b²+2β₁λ₁=0",
     _m(2080, gamma=1, B=2, lam=1) + _m(-240, gamma=1, beta=1, B=2) + _m(-40, lam=1, B=1)
     + _m(2, beta=1, lam=1)),
)

# reduced system after eliminating gamma
PAPER_KAWAHARA_REDUCED = (
    ("b²−λ₁/840−ω/8=0", _m(1, B=1) + _m(F(-1, 840), lam=1) + _m(F(-1, 8), omega=1)),
    ("26λ₁+39β₁−840b²=0", _m(26, lam=1) + _m(39, beta=1) + _m(-840, B=1)),
    ("3λ₁β₁−32λ₁²−672λ₁b²−252β₁b²+21β₁²−42ωλ₁=0",
     _m(3, lam=1, beta=1) + _m(-32, lam=2) + _m(-672, lam=1, B=1) + _m(-252, beta=1, B=1)
     + _m(21, beta=2) + _m(-42, omega=1, lam=1)),
)

PAPER_LAMBDA_OMEGA_QUADRATIC = (_m(F(-2023210, 169), omega=1, lam=1)
                                + _m(F(-862463, 507), lam=2)
                                + _m(F(797475, 169), omega=2))


@dataclass
class LineComparison:
    label: str
    paper: ParamPoly
    matched: bool
    power: int | None = None
    ratio: ParamPoly | None = None
    mismatches: list = field(default_factory=list)  # (monomial, derived, paper*ratio)

    def describe(self) -> str:
        if self.matched:
            return f"{self.label}: MATCH with sech^{self.power} equation, ratio {self.ratio}"
        if self.power is None:
            return f"{self.label}: NO candidate derived equation"
        lines = [f"{self.label}: MISMATCH against sech^{self.power} equation "
                 f"(best ratio {self.ratio})"]
        for mono, dc, pc in self.mismatches:
            lines.append(f"    {mono or '1'}: derived {dc}, paper*ratio {pc}")
        return "\n".join(lines)


@dataclass
class DiffReport:
    lines: list

    @property
    def all_matched(self) -> bool:
        return all(c.matched for c in self.lines)

    def matched_labels(self) -> list:
        return [c.label for c in self.lines if c.matched]

    def text(self) -> str:
        return "\n".join(c.describe() for c in self.lines)

    def to_dict(self) -> dict:
        return {"lines": [{"label": c.label, "matched": c.matched, "power": c.power,
                           "ratio": None if c.ratio is None else str(c.ratio),
                           "mismatches": [[m, str(a), str(b)] for m, a, b in c.mismatches]}
                          for c in self.lines]}


def _candidate_ratios(derived: ParamPoly, paper: ParamPoly) -> list:
    out = []
    seen = set()
    for e_p, c_p in paper.terms:
        for e_d, c_d in derived.terms:
            q = tuple(a - b for a, b in zip(e_d, e_p))
            if min(q) < 0:
                continue
            r = ParamPoly.from_dict({q: c_d / c_p})
            if r not in seen:
                seen.add(r)
                out.append(r)
    return out


def _agreement(derived: ParamPoly, scaled: ParamPoly) -> int:
    dd = derived.as_dict()
    return sum(1 for e, c in scaled.terms if dd.get(e) == c)


def compare_with_paper_system(derived, paper=PAPER_KAWAHARA_SYSTEM) -> DiffReport:
    """Check each printed line against the derived equations.

    A line matches when some derived equation equals ``r * line`` for a
    nonzero rational multiple ``r`` of a monomial. Otherwise the derived
    equation and ratio agreeing on the most monomials is reported together
    with every disagreeing monomial. Neither side is altered.
    """
    if isinstance(derived, dict):
        items = list(derived.items())
    else:
        items = list(enumerate(derived))
    out = []
    for label, pline in paper:
        best = None
        for power, deq in items:
            for r in _candidate_ratios(deq, pline):
                scaled = pline * r
                if scaled == deq:
                    best = (10 ** 9, power, r, scaled)
                    break
                score = _agreement(deq, scaled)
                if best is None or score > best[0]:
                    best = (score, power, r, scaled)
            if best is not None and best[0] == 10 ** 9:
                break
        if best is None:
            out.append(LineComparison(label, pline, False))
            continue
        score, power, r, scaled = best
        deq = dict(items)[power]
        if score == 10 ** 9:
            out.append(LineComparison(label, pline, True, power, r))
            continue
        dd, sd = deq.as_dict(), scaled.as_dict()
        mism = []
        for e in sorted(set(dd) | set(sd), key=_grlex_key):
            a, b = dd.get(e, Fraction(0)), sd.get(e, Fraction(0))
            if a != b:
                mism.append((_monomial_str(e, _ASCII), a, b))
        out.append(LineComparison(label, pline, False, power, r, mism))
    return DiffReport(out)


def format_system(system: Mapping[int, ParamPoly]) -> str:
    return "\n".join(f"sech^{n}: {p} = 0" for n, p in sorted(system.items()))


def paper_lambda_over_omega() -> QuadExt:
    """λ₁/ω as printed: 105·(−4129/123209 + 546/123209·√70)."""
    return QuadExt(F(-4129 * 105, 123209), F(546 * 105, 123209))


def paper_beta_over_omega() -> QuadExt:
    """β₁/ω as printed: (609630 − 36750·√70)/123209."""
    return QuadExt(F(609630, 123209), F(-36750, 123209))


def paper_b_squared_over_omega() -> QuadExt:
    """b²/ω from the printed b: 123209·(59540 + 273√70)/246418²."""
    scale = F(123209, 246418 ** 2)
    return QuadExt(59540 * scale, 273 * scale)


def check_paper_quadratic_exact() -> tuple:
    """Substitute the printed λ₁/ω into the λ–ω quadratic at ω = 1 exactly."""
    lam = paper_lambda_over_omega()
    val = PAPER_LAMBDA_OMEGA_QUADRATIC.evaluate(omega=QuadExt(1), lam=lam, gamma=0, beta=0, B=0)
    return val.is_zero(), val


def check_paper_reduced_exact() -> list:
    """Exact residuals of the reduced system lines at ω = 1 with the printed closed forms."""
    vals = dict(omega=QuadExt(1), lam=paper_lambda_over_omega(), beta=paper_beta_over_omega(),
                B=paper_b_squared_over_omega(), gamma=QuadExt(0))
    return [(label, poly.evaluate(**vals)) for label, poly in PAPER_KAWAHARA_REDUCED]
