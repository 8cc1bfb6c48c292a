"""
Seeded random parameters for the randomized suites.

All draws go through :func:`numpy.random.default_rng` (PCG64), so a seed
reproduces a run bit for bit.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .scalars import GaussianRational
from .symbol import RationalSymbolBC, validate

__all__ = ["make_rng", "random_rational", "random_point", "random_symbol", "distinct"]


def make_rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_rational(rng: np.random.Generator, bound: float = 0.9, den: int = 13, complex_prob: float = 0.5):
    """A nonzero Gaussian rational with both parts of modulus below ``bound / sqrt(2)``."""
    lim = bound / np.sqrt(2)
    while True:
        q = int(rng.integers(2, den + 1))
        top = int(np.floor(lim * q))
        re = Fraction(int(rng.integers(-top, top + 1)), q)
        im = Fraction(0)
        if rng.random() < complex_prob:
            q2 = int(rng.integers(2, den + 1))
            top2 = int(np.floor(lim * q2))
            im = Fraction(int(rng.integers(-top2, top2 + 1)), q2)
        x = GaussianRational(re, im)
        if x:
            return x


def random_point(rng: np.random.Generator, radius: float = 0.9, rmin: float = 0.05) -> complex:
    """Uniform in the annulus ``rmin <= |z| <= radius``."""
    r = np.sqrt(rng.uniform(rmin**2, radius**2))
    return complex(r * np.exp(2j * np.pi * rng.random()))


def distinct(values, tol: float = 1e-3) -> bool:
    vals = [complex(v) for v in values]
    return all(abs(vals[i] - vals[j]) > tol for i in range(len(vals)) for j in range(i + 1, len(vals)))


def random_symbol(
    rng: np.random.Generator,
    sizes=(1, 1, 1, 1),
    radius: float = 0.9,
    exact: bool = False,
    big: float | None = None,
    sep: float = 1e-2,
) -> RationalSymbolBC:
    """A valid BC symbol with ``len(a), len(b), len(c), len(d) = sizes``.

    All parameters are nonzero and pairwise separated by ``sep``.  With
    ``big`` set, one a or b parameter is redrawn with modulus in
    ``[1.05, big]``.
    """
    total = sum(sizes)
    while True:
        if exact:
            vals = [random_rational(rng, radius) for _ in range(total)]
        else:
            vals = [random_point(rng, radius) for _ in range(total)]
        if big is not None and sizes[0] + sizes[1] > 0:
            pos = int(rng.integers(0, sizes[0] + sizes[1]))
            z = random_point(rng, big, 1.05)
            if abs(z) < 1.05:
                z = z / abs(z) * 1.05
            vals[pos] = z if not exact else GaussianRational(
                Fraction(z.real).limit_denominator(20), Fraction(z.imag).limit_denominator(20)
            )
        if not distinct(vals, sep):
            continue
        # reciprocal pairs make Z poles
        if any(abs(1 - complex(x) * complex(y)) < sep for x in vals for y in vals):
            continue
        parts, i = [], 0
        for s in sizes:
            parts.append(tuple(vals[i : i + s]))
            i += s
        sym = RationalSymbolBC(*parts)
        if validate(sym).ok:
            return sym
