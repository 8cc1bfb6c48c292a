"""
Rational symbols on the unit circle.

Two parameterizations are supported.

``RationalSymbolBC``
    phi(z) = prod (1 - a/z)(1 - b z) / prod (1 - c/z)(1 - d z)
    with |c|, |d| < 1.  The sets a, b, c, d may have different sizes.

``DayForm``
    phi(z) = c0 prod (z - r) / (prod (1 - z/rho) prod (z - delta))
    with |rho| > 1 and |delta| < 1.

Fourier (Laurent) coefficients are computed exactly by partial fractions,
so the same code serves both arithmetic backends and needs no assumption
on the size of the zeros a, b.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .scalars import EXACT, FLOAT, Field, GaussianRational, abs2, format_scalar, is_zero

__all__ = [
    "DISTINCT_TOL",
    "RationalSymbolBC",
    "DayForm",
    "Issue",
    "ValidationReport",
    "WHFactors",
    "BCConversion",
    "SymbolError",
    "validate",
    "evaluate",
    "fourier_coeff",
    "fourier_coeffs",
    "day_to_bc",
    "wiener_hopf",
    "psi_of",
    "tilde",
    "reciprocal",
    "winding_number",
    "polynomials",
]

DISTINCT_TOL = 1e-10


class SymbolError(ValueError):
    """Raised when a symbol is outside the domain of an operation."""


def _coincide(x, y) -> bool:
    if isinstance(x, GaussianRational) and isinstance(y, GaussianRational):
        return x == y
    return abs(complex(x) - complex(y)) < DISTINCT_TOL


def _mod_ge_one(x) -> bool:
    return abs2(x) >= 1


def _field_for(values: Iterable) -> Field:
    for v in values:
        if not isinstance(v, GaussianRational):
            return FLOAT
    return EXACT


@dataclass(frozen=True)
class RationalSymbolBC:
    """Symbol ``prod(1 - a/z)(1 - b z) / prod(1 - c/z)(1 - d z)``."""

    a: tuple = ()
    b: tuple = ()
    c: tuple = ()
    d: tuple = ()

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @classmethod
    def make(cls, a=(), b=(), c=(), d=(), field: Field | str | None = None) -> "RationalSymbolBC":
        """Build a symbol, coercing every parameter to one backend.

        Strings are parsed as exact scalars.  With ``field=None`` the exact
        backend is used when every input is exact (strings, ints, Fractions,
        Gaussian rationals) and the float backend otherwise.
        """
        raw = [*a, *b, *c, *d]
        if isinstance(field, str):
            field = EXACT if field == "exact" else FLOAT
        if field is None:
            field = FLOAT if any(isinstance(v, (float, complex)) for v in raw) else EXACT
        co = field.coerce
        return cls(tuple(map(co, a)), tuple(map(co, b)), tuple(map(co, c)), tuple(map(co, d)))

    @classmethod
    def from_json(cls, obj: dict, field: Field | str | None = None) -> "RationalSymbolBC":
        unknown = set(obj) - set("abcd")
        if unknown:
            raise SymbolError(f"unknown symbol keys: {sorted(unknown)}")
        return cls.make(*(obj.get(key, []) for key in "abcd"), field=field)

    def to_json(self) -> dict:
        return {key: [format_scalar(v) for v in getattr(self, key)] for key in "abcd"}

    @property
    def params(self) -> tuple:
        return self.a + self.b + self.c + self.d

    @property
    def field(self) -> Field:
        return _field_for(self.params)

    @property
    def k(self) -> int:
        """Common set size; raises if the sets have different sizes."""
        sizes = {len(self.a), len(self.b), len(self.c), len(self.d)}
        if len(sizes) != 1:
            raise SymbolError(
                f"unequal parameter set sizes {len(self.a)},{len(self.b)},{len(self.c)},{len(self.d)}"
            )
        return sizes.pop()

    def to_float(self) -> "RationalSymbolBC":
        return RationalSymbolBC.make(self.a, self.b, self.c, self.d, field=FLOAT)

    def evaluate(self, z):
        return evaluate(self, z)

    def __call__(self, z):
        return evaluate(self, z)


@dataclass(frozen=True)
class DayForm:
    """Symbol ``c0 prod(z - r) / (prod(1 - z/rho) prod(z - delta))``."""

    c0: object
    r: tuple = ()
    rho: tuple = ()
    delta: tuple = ()

    def __post_init__(self):
        for name in ("r", "rho", "delta"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    @classmethod
    def make(cls, c0, r=(), rho=(), delta=(), field: Field | str | None = None) -> "DayForm":
        raw = [c0, *r, *rho, *delta]
        if isinstance(field, str):
            field = EXACT if field == "exact" else FLOAT
        if field is None:
            field = FLOAT if any(isinstance(v, (float, complex)) for v in raw) else EXACT
        co = field.coerce
        return cls(co(c0), tuple(map(co, r)), tuple(map(co, rho)), tuple(map(co, delta)))

    @classmethod
    def from_json(cls, obj: dict, field: Field | str | None = None) -> "DayForm":
        unknown = set(obj) - {"c0", "r", "rho", "delta"}
        if unknown:
            raise SymbolError(f"unknown Day-form keys: {sorted(unknown)}")
        if "c0" not in obj:
            raise SymbolError("Day form needs c0")
        return cls.make(obj["c0"], obj.get("r", []), obj.get("rho", []), obj.get("delta", []), field=field)

    def to_json(self) -> dict:
        return {
            "c0": format_scalar(self.c0),
            "r": [format_scalar(v) for v in self.r],
            "rho": [format_scalar(v) for v in self.rho],
            "delta": [format_scalar(v) for v in self.delta],
        }

    @property
    def p(self) -> int:
        return len(self.r)

    @property
    def h(self) -> int:
        return len(self.rho)

    @property
    def k(self) -> int:
        return len(self.delta)

    @property
    def field(self) -> Field:
        return _field_for((self.c0, *self.r, *self.rho, *self.delta))

    def check(self) -> None:
        if is_zero(self.c0):
            raise SymbolError("c0 must be nonzero")
        for j, rho in enumerate(self.rho):
            if abs2(rho) <= 1:
                raise SymbolError(f"|rho_{j + 1}| must exceed 1")
        for j, dl in enumerate(self.delta):
            if abs2(dl) >= 1:
                raise SymbolError(f"|delta_{j + 1}| must be below 1")
        for i in range(len(self.r)):
            for j in range(i + 1, len(self.r)):
                if _coincide(self.r[i], self.r[j]):
                    raise SymbolError(f"repeated zero r_{i + 1} = r_{j + 1}")

    def evaluate(self, z):
        val = self.c0
        for r in self.r:
            val = val * (z - r)
        den = 1
        for rho in self.rho:
            den = den * (1 - z / rho)
        for dl in self.delta:
            den = den * (z - dl)
        if is_zero(den, 1e-300):
            raise ZeroDivisionError("pole of the Day-form symbol at z")
        return val / den

    __call__ = evaluate


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class Issue:
    kind: str
    message: str
    indices: tuple = ()


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def messages(self) -> list[str]:
        return [issue.message for issue in self.issues]

    def raise_if_invalid(self) -> None:
        if self.issues:
            raise SymbolError("; ".join(self.messages()))

    def __bool__(self) -> bool:
        return self.ok


def validate(sym: RationalSymbolBC) -> ValidationReport:
    """Report precondition violations: |c|, |d| >= 1 and coincident a/b/d values."""
    report = ValidationReport()
    for name in "cd":
        for i, v in enumerate(getattr(sym, name)):
            if _mod_ge_one(v):
                report.issues.append(Issue(f"{name}_modulus", f"|{name}_{i + 1}| ≥ 1", (i,)))
    labelled = [(f"{name}_{i + 1}", v) for name in "abd" for i, v in enumerate(getattr(sym, name))]
    for x in range(len(labelled)):
        for y in range(x + 1, len(labelled)):
            if _coincide(labelled[x][1], labelled[y][1]):
                report.issues.append(
                    Issue(
                        "coincident",
                        f"{labelled[x][0]} and {labelled[y][0]} coincide",
                        (labelled[x][0], labelled[y][0]),
                    )
                )
    return report


# ---------------------------------------------------------------------------
# evaluation


def evaluate(sym: RationalSymbolBC, z):
    """Product-formula value of the symbol at a nonzero point ``z``."""
    if is_zero(z):
        raise ZeroDivisionError("symbol evaluated at z = 0")
    if isinstance(z, int):
        z = GaussianRational(z)
    w = 1 / z
    num = 1
    for a in sym.a:
        num = num * (1 - a * w)
    for b in sym.b:
        num = num * (1 - b * z)
    den = 1
    for c in sym.c:
        den = den * (1 - c * w)
    for d in sym.d:
        den = den * (1 - d * z)
    if is_zero(den, 1e-300):
        raise ZeroDivisionError("symbol has a pole at z")
    return num / den


# ---------------------------------------------------------------------------
# Laurent coefficients


def _poly_from_roots_inv(params: Sequence) -> list:
    """Coefficients of prod(1 - p x) in increasing degree."""
    coeffs = [1]
    for p in params:
        nxt = [0] * (len(coeffs) + 1)
        for i, co in enumerate(coeffs):
            nxt[i] = nxt[i] + co
            nxt[i + 1] = nxt[i + 1] - p * co
        coeffs = nxt
    return coeffs


class _SeriesPart:
    """Power series of prod(1 - z_i x) / prod(1 - p_j x) split as polynomial + geometric tails."""

    def __init__(self, zeros: Sequence, poles: Sequence, one):
        poles = [p for p in poles if not is_zero(p)]
        for i in range(len(poles)):
            for j in range(i + 1, len(poles)):
                if _coincide(poles[i], poles[j]):
                    raise SymbolError("coincident pole parameters are not supported")
        num = _poly_from_roots_inv(zeros)
        self.poles = poles
        self.weights = []
        for i, p in enumerate(poles):
            x = 1 / p
            val = 0 * one
            for co in reversed(num):
                val = val * x + co
            den = one
            for j, q in enumerate(poles):
                if j != i:
                    den = den * (1 - q * x)
            self.weights.append(val / den)
        npoly = len(num) - len(poles)
        self.poly = []
        if npoly > 0:
            qden = _poly_from_roots_inv(poles)
            series = []
            for m in range(npoly):
                acc = num[m] if m < len(num) else 0
                for l in range(1, min(m, len(qden) - 1) + 1):
                    acc = acc - qden[l] * series[m - l]
                series.append(acc)
            for m in range(npoly):
                tail = 0
                for w, p in zip(self.weights, poles):
                    tail = tail + w * p**m
                self.poly.append(series[m] - tail)

    def coeff(self, m: int):
        if m < 0:
            return 0
        val = self.poly[m] if m < len(self.poly) else 0
        for w, p in zip(self.weights, self.poles):
            val = val + w * p**m
        return val


class _Laurent:
    """Laurent coefficients of a BC symbol on the unit circle."""

    def __init__(self, sym: RationalSymbolBC):
        for name in "cd":
            for i, v in enumerate(getattr(sym, name)):
                if _mod_ge_one(v):
                    raise SymbolError(f"|{name}_{i + 1}| ≥ 1: no Laurent expansion on the circle")
        self.one = sym.field.one
        # phi = plus(z) * minus(1/z)
        self.plus = _SeriesPart(sym.b, sym.d, self.one)
        self.minus = _SeriesPart(sym.a, sym.c, self.one)
        self.cross = [
            [wp * wm / (1 - p * q) for wm, q in zip(self.minus.weights, self.minus.poles)]
            for wp, p in zip(self.plus.weights, self.plus.poles)
        ]

    def coeff(self, j: int):
        plus, minus = self.plus, self.minus
        m0 = max(0, -j)
        total = 0 * self.one
        # polynomial part of the plus factor against the whole minus series
        for i, pc in enumerate(plus.poly):
            m = i - j
            if m >= m0:
                total = total + pc * minus.coeff(m)
        # polynomial part of the minus factor against the geometric part of plus
        for m, mc in enumerate(minus.poly):
            if m >= m0:
                for w, p in zip(plus.weights, plus.poles):
                    total = total + mc * w * p ** (j + m)
        # geometric x geometric: sum_{m >= m0} p^(j+m) q^m
        for row, p in zip(self.cross, plus.poles):
            pj = p ** (j + m0)
            for cw, q in zip(row, minus.poles):
                total = total + cw * pj * q**m0
        return total


@lru_cache(maxsize=256)
def _laurent(sym: RationalSymbolBC) -> _Laurent:
    return _Laurent(sym)


def fourier_coeff(sym: RationalSymbolBC, j: int):
    """The j-th Fourier coefficient of the symbol, exact in the exact backend.

    Raises
    ------
    SymbolError
        If some |c_i| or |d_i| >= 1, or two nonzero c's (or d's) coincide.
    """
    return _laurent(sym).coeff(j)


def fourier_coeffs(sym: RationalSymbolBC, lo: int, hi: int) -> dict:
    """Coefficients for ``lo <= j <= hi`` as a dict keyed by index."""
    lau = _laurent(sym)
    return {j: lau.coeff(j) for j in range(lo, hi + 1)}


# ---------------------------------------------------------------------------
# conversions and factorizations


@dataclass(frozen=True)
class BCConversion:
    symbol: RationalSymbolBC
    scale: object
    a_side: tuple

    def prefactor(self, n: int):
        """Determinant ratio ``D_n(day) / D_n(bc) = scale**n``."""
        return self.scale**n


def day_to_bc(day: DayForm, a_side: Sequence[int] | None = None) -> BCConversion:
    """Rewrite a Day-form symbol as ``scale * (BC symbol)``.

    ``a_side`` lists the k zero indices placed on the ``e^{-i theta}`` side;
    by default the k zeros of smallest modulus (ties by index).

    Raises
    ------
    SymbolError
        If p < k (the Toeplitz determinant then vanishes identically) or a zero
        on the inverted side is 0.
    """
    day.check()
    p, k = day.p, day.k
    if p < k:
        raise SymbolError("p<k, determinant vanishes")
    if a_side is None:
        order = sorted(range(p), key=lambda i: (abs2(day.r[i]), i))
        a_side = tuple(sorted(order[:k]))
    else:
        a_side = tuple(a_side)
        if len(a_side) != k or len(set(a_side)) != k or not all(0 <= i < p for i in a_side):
            raise SymbolError(f"a_side must name {k} distinct zero indices")
    b_side = [i for i in range(p) if i not in a_side]
    scale = day.c0
    for i in b_side:
        if is_zero(day.r[i]):
            raise SymbolError(f"zero r_{i + 1} = 0 cannot be placed on the e^(i theta) side")
        scale = scale * (-day.r[i])
    sym = RationalSymbolBC(
        a=tuple(day.r[i] for i in a_side),
        b=tuple(1 / day.r[i] for i in b_side),
        c=tuple(day.delta),
        d=tuple(1 / rho for rho in day.rho),
    )
    return BCConversion(sym, scale, a_side)


@dataclass(frozen=True)
class WHFactors:
    """Wiener-Hopf factors; ``plus`` holds (B, D), ``minus`` holds (A, C)."""

    plus: RationalSymbolBC
    minus: RationalSymbolBC


def wiener_hopf(sym: RationalSymbolBC) -> WHFactors:
    return WHFactors(
        plus=RationalSymbolBC(b=sym.b, d=sym.d),
        minus=RationalSymbolBC(a=sym.a, c=sym.c),
    )


def tilde(sym: RationalSymbolBC) -> RationalSymbolBC:
    """The reflected symbol z -> phi(1/z)."""
    return RationalSymbolBC(a=sym.b, b=sym.a, c=sym.d, d=sym.c)


def reciprocal(sym: RationalSymbolBC) -> RationalSymbolBC:
    """The symbol 1/phi (numerator and denominator swapped)."""
    return RationalSymbolBC(a=sym.c, b=sym.d, c=sym.a, d=sym.b)


def psi_of(sym: RationalSymbolBC) -> RationalSymbolBC:
    """``phi_minus / (phi_plus * tilde(phi_plus))`` as a BC symbol.

    Numerator (1 - a/z)(1 - d z)(1 - d/z), denominator (1 - c/z)(1 - b z)(1 - b/z).
    """
    return RationalSymbolBC(a=sym.a + sym.d, b=sym.d, c=sym.c + sym.b, d=sym.b)


def winding_number(sym, m: int = 1024) -> int:
    """Winding number of ``phi(e^{i theta})`` about 0 from ``m`` samples.

    ``sym`` is anything with an ``evaluate`` method (BC or Day form).
    """
    if m < 256:
        raise ValueError("winding_number needs at least 256 samples")
    values = np.empty(m, dtype=complex)
    for j in range(m):
        z = cmath.exp(2j * math.pi * j / m)
        v = complex(sym.evaluate(z))
        if abs(v) < 1e-9:
            raise SymbolError("symbol vanishes near unit circle")
        values[j] = v
    steps = np.angle(np.roll(values, -1) / values)
    return int(round(steps.sum() / (2 * math.pi)))


# ---------------------------------------------------------------------------
# polynomial form


def _poly_mul(p: list, q: list) -> list:
    out = [0j] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return out


def polynomials(sym: RationalSymbolBC) -> tuple[np.ndarray, np.ndarray]:
    """Float polynomials ``f, g`` (increasing degree) with ``phi(z) = f(z) / g(z)``.

    Both sides are multiplied by ``z**max(|A|, |C|)``.
    """
    top = max(len(sym.a), len(sym.c))
    f = [0j] * (top - len(sym.a)) + [1 + 0j]
    for a in sym.a:
        f = _poly_mul(f, [-complex(a), 1 + 0j])
    for b in sym.b:
        f = _poly_mul(f, [1 + 0j, -complex(b)])
    g = [0j] * (top - len(sym.c)) + [1 + 0j]
    for c in sym.c:
        g = _poly_mul(g, [-complex(c), 1 + 0j])
    for d in sym.d:
        g = _poly_mul(g, [1 + 0j, -complex(d)])
    return np.array(f, dtype=complex), np.array(g, dtype=complex)


def as_callable(sym) -> Callable:
    return sym.evaluate
