"""
Z-function products over parameter multisets.

Multisets are plain sequences; duplicates are kept and every element is
used by position, so ``A + D`` is a disjoint union even if values collide.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import GaussianRational, is_zero

__all__ = [
    "Z_POLE_TOL",
    "ZPoleError",
    "z",
    "z_composite",
    "z_s",
    "z_o",
    "z_o_with",
    "surgery",
    "pow_prod",
    "inverses",
    "one_like",
    "z_properties",
]

Z_POLE_TOL = 1e-13


class ZPoleError(ZeroDivisionError):
    """A factor ``1 - x*y`` of a Z product vanishes."""


def one_like(*seqs: Iterable):
    """The multiplicative identity in the backend of the given values."""
    for seq in seqs:
        for v in seq:
            return GaussianRational(1) if isinstance(v, GaussianRational) else 1.0 + 0j
    return GaussianRational(1)


def _factor(x, y):
    f = 1 - x * y
    if is_zero(f, Z_POLE_TOL):
        raise ZPoleError(f"Z pole: 1 - ({x})({y}) vanishes")
    return f


def z(A: Sequence, B: Sequence):
    """``prod_{a in A, b in B} 1/(1 - a b)``."""
    den = one_like(A, B)
    for a in A:
        for b in B:
            den = den * _factor(a, b)
    return 1 / den


def z_composite(A: Sequence, B: Sequence, C: Sequence, D: Sequence):
    """``Z(A,B) Z(C,D) / (Z(A,D) Z(B,C))``."""
    one = one_like(A, B, C, D)
    num = one
    for a in A:
        for d in D:
            num = num * _factor(a, d)
    for b in B:
        for c in C:
            num = num * _factor(b, c)
    den = one
    for a in A:
        for b in B:
            den = den * _factor(a, b)
    for c in C:
        for d in D:
            den = den * _factor(c, d)
    return num / den


def z_s(A: Sequence):
    """``prod_{i <= j} 1/(1 - a_i a_j)``."""
    den = one_like(A)
    for i in range(len(A)):
        for j in range(i, len(A)):
            den = den * _factor(A[i], A[j])
    return 1 / den


def z_o(A: Sequence):
    """``prod_{i < j} 1/(1 - a_i a_j)``."""
    den = one_like(A)
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            den = den * _factor(A[i], A[j])
    return 1 / den


def z_o_with(A: Sequence, C: Sequence):
    """``Z_O(A) Z_S(C) / Z(A, C)``."""
    return z_o(A) * z_s(C) / z(A, C)


def inverses(T: Iterable) -> list:
    out = []
    for t in T:
        if is_zero(t):
            raise ZeroDivisionError("cannot invert a zero parameter")
        out.append(1 / t)
    return out


def surgery(A: Sequence, U: Iterable[int], T: Sequence) -> list:
    """The multiset ``A - U + T^{-1}``.

    ``U`` holds positions into ``A`` (so repeated values are removed one at
    a time); ``T`` holds values whose inverses are appended.
    """
    drop = set(U)
    if not drop <= set(range(len(A))):
        raise IndexError("U must index into A")
    return [x for i, x in enumerate(A) if i not in drop] + inverses(T)


def pow_prod(U: Iterable, n: int):
    """``prod_{u in U} u**n``."""
    U = list(U)
    out = one_like(U)
    for u in U:
        if n < 0 and is_zero(u):
            raise ZeroDivisionError("zero element raised to a negative power")
        out = out * u**n
    return out


def z_properties(A: Sequence, B: Sequence, C: Sequence) -> dict:
    """Both sides of the six product identities for Z and Z_O.

    Returns ``{label: [lhs, rhs, ...]}``; all entries of a list must agree.
    Elements of A and B must be nonzero (they are inverted).
    """
    A, B, C = list(A), list(B), list(C)
    one = one_like(A, B, C)
    # empty sets produce exact ones; keep a float trial in the float backend
    cast = (lambda x: x) if isinstance(one, GaussianRational) else complex
    nA, nB = len(A), len(B)
    Ainv, Binv = inverses(A), inverses(B)

    def Z(X, Y):
        return cast(z(X, Y))

    def ZO(X):
        return cast(z_o(X))

    def P(X, n):
        return cast(pow_prod(X, n))

    lhs4 = one
    mid4 = P(A, -nB)
    for a in A:
        for b in B:
            if is_zero(a - b):
                raise ZeroDivisionError("a = b in the 1/(a - b) product")
            lhs4 = lhs4 / (a - b)
            mid4 = mid4 / (1 - b / a)

    sign5 = -1 if (nA * nB) % 2 else 1
    sign6 = -1 if (nA * (nA - 1) // 2) % 2 else 1
    return {
        "(1) symmetry": [Z(A, B), Z(B, A)],
        "(2) additivity": [Z(A + B, C), Z(A, C) * Z(B, C)],
        "(3) Z_O factorization": [ZO(A + B), ZO(A) * ZO(B) * Z(A, B)],
        "(4) 1/(a-b) product": [lhs4, mid4, P(A, -nB) * Z(Ainv, B)],
        "(5) inversion": [Z(A, B), sign5 * P(A, -nB) * P(B, -nA) * Z(Ainv, Binv)],
        "(6) Z_O inversion": [ZO(A), sign6 * P(A, 1 - nA) * ZO(Ainv)],
    }
