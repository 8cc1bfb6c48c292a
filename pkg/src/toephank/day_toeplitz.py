"""
Closed forms for Toeplitz determinants of rational symbols.

``day_det`` sums over k-subsets of the zeros of a Day-form symbol;
``bc_toeplitz_det`` sums over equal-size subset pairs of the BC parameters.
``bocg_det_toeplitz`` evaluates the same determinant through a truncated
Fredholm determinant of a Hankel product and serves as an independent route.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .scalars import abs2, is_zero
from .symbol import DayForm, RationalSymbolBC, SymbolError, day_to_bc, fourier_coeffs
from .zfun import one_like, pow_prod, surgery, z_composite

__all__ = [
    "DayTermRecord",
    "SeriesEstimate",
    "TruncationError",
    "toeplitz_min_n",
    "day_det",
    "bc_toeplitz_det",
    "szego_G",
    "szego_E_toeplitz",
    "log_coeff",
    "bocg_det_toeplitz",
    "truncation_size",
]

MAX_TRUNCATION = 2048


class TruncationError(RuntimeError):
    """The geometric tail cannot be pushed below tolerance within the size cap."""


@dataclass(frozen=True)
class DayTermRecord:
    M: tuple
    r_M: object
    A_M: object


def _nonzero(xs) -> int:
    return sum(1 for x in xs if not is_zero(x))


def toeplitz_min_n(sym: RationalSymbolBC) -> int:
    """Smallest n for which the subset-sum closed form reproduces ``det T_n``.

    Zero parameters are trivial factors and do not count.
    """
    a, b, c, d = (_nonzero(getattr(sym, name)) for name in "abcd")
    return max(1, d - b, c - a)


def day_det(day: DayForm, n: int, records: bool = False):
    """Toeplitz determinant from the zeros and poles of a Day-form symbol.

    Returns the value, or ``(value, [DayTermRecord, ...])`` when ``records``
    is set.  The overall sign is ``(-1)**((p - k) n)``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    day.check()
    p, k = day.p, day.k
    if p < k:
        zero = 0 * day.c0
        return (zero, []) if records else zero
    try:
        n0 = toeplitz_min_n(day_to_bc(day).symbol)
    except SymbolError:
        n0 = day.h - (p - k)
    if n < n0:
        raise ValueError(f"closed form holds for n >= {n0}")
    total = 0 * day.c0
    recs = []
    for M in itertools.combinations(range(p), k):
        Mc = [j for j in range(p) if j not in M]
        r_M = day.c0
        for j in Mc:
            r_M = r_M * day.r[j]
        num = 1 + 0 * day.c0
        den = 1 + 0 * day.c0
        for j in Mc:
            for dl in day.delta:
                num = num * (day.r[j] - dl)
            for i in M:
                den = den * (day.r[j] - day.r[i])
        for rho in day.rho:
            for i in M:
                num = num * (rho - day.r[i])
            for dl in day.delta:
                den = den * (rho - dl)
        A_M = num / den
        recs.append(DayTermRecord(M, r_M, A_M))
        total = total + A_M * r_M**n
    if ((p - k) * n) % 2:
        total = -total
    return (total, recs) if records else total


def bc_toeplitz_det(sym: RationalSymbolBC, n: int):
    """``sum_{S in A, T in B, |S|=|T|} S^n T^n Z(A-S+T^-1, B-T+S^-1; C, D)``.

    Subsets containing a zero parameter contribute nothing (their power
    factor vanishes) and are skipped.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    n0 = toeplitz_min_n(sym)
    if n < n0:
        raise ValueError(f"closed form holds for n >= {n0} with these set sizes")
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    total = 0 * one_like(A, B, C, D)
    for r in range(min(len(A), len(B)) + 1):
        for S in itertools.combinations(range(len(A)), r):
            Sv = [A[i] for i in S]
            if any(is_zero(s) for s in Sv):
                continue
            for T in itertools.combinations(range(len(B)), r):
                Tv = [B[i] for i in T]
                if any(is_zero(t) for t in Tv):
                    continue
                term = pow_prod(Sv, n) * pow_prod(Tv, n)
                term = term * z_composite(surgery(A, S, Tv), surgery(B, T, Sv), C, D)
                total = total + term
    return total


# ---------------------------------------------------------------------------
# Szego constants


@dataclass(frozen=True)
class SeriesEstimate:
    value: complex
    terms: int
    tail_bound: float


def _inside(sym: RationalSymbolBC) -> bool:
    return all(abs2(x) < 1 for x in sym.params)


def log_coeff(sym: RationalSymbolBC, j: int) -> complex:
    """Fourier coefficient of the continuous logarithm (all parameters inside the disk)."""
    if j == 0:
        return 0j
    m = abs(j)
    if j > 0:
        return complex(sum(complex(d) ** m for d in sym.d) - sum(complex(b) ** m for b in sym.b)) / m
    return complex(sum(complex(c) ** m for c in sym.c) - sum(complex(a) ** m for a in sym.a)) / m


def szego_G(sym: RationalSymbolBC):
    """Geometric mean ``exp((log phi)_0)``; equals 1 for every BC symbol of winding number 0."""
    if not _inside(sym):
        raise SymbolError("nonzero winding number: some |a| or |b| is not below 1")
    return sym.field.one


def szego_E_toeplitz(sym: RationalSymbolBC, method: str = "closed", terms: int = 200):
    """Szego constant ``E(phi)``.

    ``method="closed"`` returns ``Z(A, B; C, D)`` in the symbol's backend;
    ``method="series"`` sums ``k (log phi)_k (log phi)_{-k}`` for k <= terms
    and returns a :class:`SeriesEstimate` with a geometric tail bound.
    """
    if not _inside(sym):
        raise SymbolError("nonzero winding number: some |a| or |b| is not below 1")
    if method == "closed":
        return z_composite(sym.a, sym.b, sym.c, sym.d)
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    s = 0j
    for k in range(1, terms + 1):
        s += k * log_coeff(sym, k) * log_coeff(sym, -k)
    rate = max((abs(complex(x)) for x in sym.params), default=0.0)
    npar = max(len(sym.a) + len(sym.c), 1) * max(len(sym.b) + len(sym.d), 1)
    q = rate * rate
    tail = npar * q ** (terms + 1) / (1 - q) if q < 1 else math.inf
    return SeriesEstimate(complex(np.exp(s)), terms, abs(np.exp(s)) * math.expm1(tail) if tail < 1 else math.inf)


# ---------------------------------------------------------------------------
# Fredholm route


def truncation_size(rate: float, tol: float = 1e-15, cap: int = MAX_TRUNCATION) -> int:
    """Window size M with ``rate**M <= tol``."""
    if rate <= 0:
        return 1
    if rate >= 1:
        raise TruncationError("geometric rate must be below 1")
    m = math.ceil(math.log(tol) / math.log(rate))
    if m > cap:
        raise TruncationError(f"truncation {m} exceeds cap {cap}")
    return max(m, 1)


def bocg_det_toeplitz(sym: RationalSymbolBC, n: int, M: int | None = None):
    """``det T_n`` as ``G^n E det(I - H(z^-n phi_- / phi_+) H(~phi_+ / ~phi_- z^-n))``.

    Hankel entries come from the exact Laurent coefficients of the two
    Wiener-Hopf quotients; the operator product is truncated to ``M x M``.
    Float only.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not _inside(sym):
        raise SymbolError("Fredholm route needs every parameter inside the unit disk")
    fsym = sym.to_float()
    rate = max((abs(complex(x)) for x in fsym.params), default=0.0)
    if M is None:
        M = truncation_size(rate)
    # phi_- / phi_+ and its partner (phi_-)^{-1} phi_+
    left = RationalSymbolBC(a=fsym.a, b=fsym.d, c=fsym.c, d=fsym.b)
    right = RationalSymbolBC(a=fsym.c, b=fsym.b, c=fsym.a, d=fsym.d)
    lo = n + 1
    hi = n + 2 * M - 1
    lc = fourier_coeffs(left, lo, hi)
    rc = fourier_coeffs(right, -hi, -lo)
    idx = np.add.outer(np.arange(M), np.arange(M)) + lo
    H1 = np.vectorize(lambda m: complex(lc[m]), otypes=[complex])(idx)
    H2 = np.vectorize(lambda m: complex(rc[-m]), otypes=[complex])(idx)
    fred = complex(np.linalg.det(np.eye(M) - H1 @ H2))
    G = complex(szego_G(fsym))
    E = complex(szego_E_toeplitz(fsym))
    return G**n * E * fred
