"""
Arithmetic backends.

Two scalar types flow through every formula in the package:

* :class:`GaussianRational` -- exact elements of Q(i), built on
  :class:`fractions.Fraction`.
* the builtin :class:`complex` -- binary64 pairs.

Both support ``+ - * /``, unary minus, ``conjugate()`` and comparison with
integers, so the determinant formulas are written once and run in either
backend.  The :data:`EXACT` and :data:`FLOAT` field objects carry the
backend-specific pieces (coercion, zero tests, square roots are float only).
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "GaussianRational",
    "Field",
    "EXACT",
    "FLOAT",
    "Scalar",
    "parse_scalar",
    "format_scalar",
    "field_div",
    "field_of",
    "abs2",
    "is_exact",
    "is_zero",
    "rel_close",
    "check_finite",
    "pow_int",
]


def _is_float(x) -> bool:
    return isinstance(x, (float, complex))


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts.

    Parts are stored as :class:`fractions.Fraction`, which keeps them in
    lowest terms with positive denominators.  Mixing with a float or complex
    operand promotes to ``complex`` (as ``Fraction`` does with ``float``);
    the constructor itself refuses floats.
    """

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction, str] = 0, im: Union[int, Fraction, str] = 0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("GaussianRational does not accept floats; use Fraction or a string")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _lift(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) + other if _is_float(other) else NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) - other if _is_float(other) else NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return other - complex(self) if _is_float(other) else NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) * other if _is_float(other) else NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return complex(self) / other if _is_float(other) else NotImplemented
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / den,
            (self.im * o.re - self.re * o.im) / den,
        )

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return other / complex(self) if _is_float(other) else NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        return pow_int(self, n)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inv(self) -> "GaussianRational":
        return 1 / self

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        o = self._lift(other)
        if o is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


Scalar = Union[GaussianRational, complex]


def pow_int(x, n: int):
    """``x**n`` for an integer ``n`` by repeated squaring (negative ``n`` inverts)."""
    if n < 0:
        if not x:
            raise ZeroDivisionError("zero raised to a negative power")
        return pow_int(1 / x, -n)
    result = GaussianRational(1) if isinstance(x, GaussianRational) else 1.0 + 0j
    base = x
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


# ---------------------------------------------------------------------------
# string encoding

_NUM = r"\d+(?:\.\d*)?|\.\d+"
_REAL_RE = re.compile(rf"^(?P<sign>[+-]?)(?P<num>{_NUM})(?:/(?P<den>\d+))?$")
# imaginary term: "3/4i", "3i/4", "i/4", "i", "3i", "3*i"
_IMAG_RE = re.compile(
    rf"^(?P<sign>[+-]?)(?:(?P<num>{_NUM})(?:/(?P<den1>\d+))?\*?)?i(?:/(?P<den2>\d+))?$"
)
_SPLIT_RE = re.compile(r"(?<=[\d.i])(?=[+-])")


def _frac(sign: str, num: str | None, den: str | None) -> Fraction:
    value = Fraction(num) if num else Fraction(1)
    if den is not None:
        d = int(den)
        if d == 0:
            raise ZeroDivisionError("zero denominator in scalar literal")
        value /= d
    return -value if sign == "-" else value


def parse_scalar(text: str) -> GaussianRational:
    """Parse a scalar literal into an exact Gaussian rational.

    Accepted forms include ``"1/2"``, ``"-2"``, ``"0.25"``, ``"i/2"``,
    ``"3/4i"``, ``"1/2-3/5i"`` and ``"0+1/2i"``.

    Raises
    ------
    ValueError
        If the text is malformed.
    ZeroDivisionError
        If a denominator is zero.
    """
    if not isinstance(text, str):
        raise ValueError(f"scalar literal must be a string, got {type(text).__name__}")
    s = text.replace(" ", "").replace("j", "i")
    if not s:
        raise ValueError("empty scalar literal")
    parts = _SPLIT_RE.split(s)
    if len(parts) > 2:
        raise ValueError(f"malformed scalar literal {text!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen_re = seen_im = False
    for part in parts:
        m = _IMAG_RE.match(part)
        if m:
            if seen_im:
                raise ValueError(f"malformed scalar literal {text!r}")
            den = m.group("den1") or m.group("den2")
            if m.group("den1") and m.group("den2"):
                raise ValueError(f"malformed scalar literal {text!r}")
            im_part = _frac(m.group("sign"), m.group("num"), den)
            seen_im = True
            continue
        m = _REAL_RE.match(part)
        if m and not seen_re and not seen_im:
            re_part = _frac(m.group("sign"), m.group("num"), m.group("den"))
            seen_re = True
            continue
        raise ValueError(f"malformed scalar literal {text!r}")
    return GaussianRational(re_part, im_part)


def _fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_scalar(x, digits: int = 17) -> str:
    """Canonical string form; exact values round-trip through :func:`parse_scalar`."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return _fmt_frac(x.re)
        im = x.im
        mag = abs(im)
        im_s = "i" if mag == 1 else f"{_fmt_frac(mag)}i"
        sign = "-" if im < 0 else "+"
        if x.re == 0:
            return ("-" if im < 0 else "") + im_s
        return f"{_fmt_frac(x.re)}{sign}{im_s}"
    z = complex(x)
    if z.imag == 0:
        return f"{z.real:.{digits}g}"
    sign = "-" if z.imag < 0 else "+"
    return f"{z.real:.{digits}g}{sign}{abs(z.imag):.{digits}g}i"


# ---------------------------------------------------------------------------
# field contract


class Field:
    """Backend descriptor: coercion and the zero / closeness tests."""

    name = "abstract"
    exact = False

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        raise NotImplementedError

    def from_string(self, text: str):
        return self.coerce(parse_scalar(text))

    def __repr__(self) -> str:
        return f"<{self.name} field>"


class _ExactField(Field):
    name = "exact"
    exact = True

    def coerce(self, value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        if isinstance(value, (int, Rational)):
            return GaussianRational(value)
        if isinstance(value, (float, complex)):
            raise TypeError("exact backend cannot represent a binary floating value exactly")
        raise TypeError(f"cannot coerce {type(value).__name__} to a Gaussian rational")


class _FloatField(Field):
    name = "float"

    def coerce(self, value) -> complex:
        if isinstance(value, str):
            value = parse_scalar(value)
        z = complex(value)
        check_finite(z)
        return z


EXACT: Field = _ExactField()
FLOAT: Field = _FloatField()


def field_of(*values) -> Field:
    """EXACT when every value is a Gaussian rational or integer, FLOAT otherwise."""
    for v in values:
        if isinstance(v, (float, complex)):
            return FLOAT
    return EXACT


def is_exact(x) -> bool:
    return isinstance(x, GaussianRational)


def abs2(x):
    """``x * conj(x)``; a Fraction for exact input, a float otherwise."""
    if isinstance(x, GaussianRational):
        return x.abs2()
    z = complex(x)
    return z.real * z.real + z.imag * z.imag


def is_zero(x, tol: float = 0.0) -> bool:
    """Exact zero test for Gaussian rationals, ``|x| <= tol`` for floats."""
    if isinstance(x, GaussianRational):
        return not x
    if isinstance(x, (int, Rational)):
        return x == 0
    return abs(complex(x)) <= tol


def field_div(x, y):
    """``x / y`` raising :class:`ZeroDivisionError` on an (exactly) zero divisor."""
    if is_zero(y):
        raise ZeroDivisionError("field division by zero")
    return x / y


def check_finite(z) -> None:
    if isinstance(z, GaussianRational):
        return
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise OverflowError(f"non-finite floating value {z!r}")


def rel_close(x, y, rtol: float = 1e-12, atol: float = 1e-14) -> bool:
    """Relative comparison with an absolute floor; exact values compare exactly."""
    if isinstance(x, GaussianRational) and isinstance(y, GaussianRational):
        return x == y
    x = complex(x)
    y = complex(y)
    return abs(x - y) <= max(atol, rtol * max(abs(x), abs(y)))
