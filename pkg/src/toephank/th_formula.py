"""
Determinants of ``T_n(phi) + H_n(phi)`` for BC symbols.

The general formula sums over subsets S of E = A + D and T of B with
|S| = |T|.  The k = 1 three-term closed form and the even-symbol (A = B,
C = D) sum are provided as specializations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .scalars import GaussianRational, format_scalar, is_exact, is_zero
from .symbol import DISTINCT_TOL, RationalSymbolBC, SymbolError, validate
from .zfun import one_like, pow_prod, surgery, z, z_o, z_o_with, z_s

__all__ = [
    "SubsetTerm",
    "TermError",
    "th_min_n",
    "e_th",
    "th_det",
    "th_det_k1",
    "th_det_even",
    "perturb",
    "terms_to_json",
]


class TermError(ZeroDivisionError):
    """A single (S, T) summand is singular."""

    def __init__(self, S, T, cause):
        super().__init__(f"singular term S={list(S)} T={list(T)}: {cause}")
        self.S = tuple(S)
        self.T = tuple(T)


@dataclass(frozen=True)
class SubsetTerm:
    S: tuple  # positions into E = A + D
    T: tuple  # positions into B
    value: object

    @property
    def sign(self) -> int:
        return -1 if len(self.S) % 2 else 1

    def to_json(self) -> dict:
        return {"S": list(self.S), "T": list(self.T), "value": format_scalar(self.value)}


def terms_to_json(terms) -> list:
    return [t.to_json() for t in terms]


def _nonzero(xs) -> int:
    return sum(1 for x in xs if not is_zero(x))


def th_min_n(sym: RationalSymbolBC) -> int:
    """Smallest n at which the subset sum matches ``det(T_n + H_n)``.

    Always 1 when the four sets have the same size.  For unequal sizes the
    bound ``max(|D| - |B|, |B| + |C| - |A| - |D|)`` (nonzero entries only)
    was determined against the exact matrix oracle.
    """
    a, b, c, d = (_nonzero(getattr(sym, name)) for name in "abcd")
    return max(1, d - b, b + c - a - d)


def _check_distinct(sym: RationalSymbolBC) -> None:
    # repeated zeros are harmless: every term that would use them is skipped
    values = {f"{name}_{i + 1}": v for name in "abd" for i, v in enumerate(getattr(sym, name))}
    bad = [
        i
        for i in validate(sym).issues
        if i.kind == "coincident" and not all(is_zero(values[label]) for label in i.indices)
    ]
    if bad:
        raise SymbolError(
            "; ".join(i.message for i in bad)
            + " (the formula needs distinct a, b, d; perturb the parameters, e.g. with perturb())"
        )


def e_th(sym: RationalSymbolBC):
    """The n-independent constant of the T+H expansion (its Szego-type limit)."""
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    one = one_like(A, B, C, D)
    num = one
    den = one
    for b in B:
        num = num * (1 - b)
    for d in D:
        num = num * (1 + d)
    for i in range(len(B)):
        for j in range(i + 1, len(B)):
            num = num * (1 - B[i] * B[j])
    for i in range(len(D)):
        for j in range(i + 1, len(D)):
            num = num * (1 - D[i] * D[j])
    for a in A:
        for d in D:
            num = num * (1 - a * d)
    for b in B:
        for c in C:
            num = num * (1 - b * c)
    for b in B:
        for d in D:
            den = den * (1 - b * d)
    for a in A:
        for b in B:
            den = den * (1 - a * b)
    for c in C:
        for d in D:
            den = den * (1 - c * d)
    if is_zero(den, 1e-300):
        raise ZeroDivisionError("singular factor in E(phi)")
    return num / den


def _th_sum(sym: RationalSymbolBC, n: int, s_pow: int, t_pow: int, keep_terms: bool):
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    E = A + D
    one = one_like(A, B, C, D)
    common = one
    for d in D:
        common = common * (1 + d)
    common = common * z_s(D) * z(C, D)
    total = 0 * one
    terms = []
    for r in range(min(len(E), len(B)) + 1):
        sign = -1 if r % 2 else 1
        for S in itertools.combinations(range(len(E)), r):
            Sv = [E[i] for i in S]
            if any(is_zero(s) for s in Sv):
                continue
            ws = pow_prod(Sv, s_pow)
            for s in Sv:
                ws = ws * (1 - s)
            for T in itertools.combinations(range(len(B)), r):
                Tv = [B[i] for i in T]
                if any(is_zero(t) for t in Tv):
                    continue
                try:
                    X = surgery(E, S, Tv)
                    Y = surgery(B, T, Sv)
                    val = ws * pow_prod(Tv, t_pow)
                    for i, b in enumerate(B):
                        if i not in T:
                            val = val * (1 - b)
                    val = val * z(X, Y) / (z(X, D) * z(Y, C) * z_o(Y))
                except ZeroDivisionError as exc:
                    raise TermError(S, T, exc) from exc
                val = common * val
                if sign < 0:
                    val = -val
                total = total + val
                if keep_terms:
                    terms.append(SubsetTerm(S, T, val))
    return total, terms


def th_det(sym: RationalSymbolBC, n: int, terms: bool = False):
    """``det(T_n(phi) + H_n(phi))`` from the subset expansion.

    Each summand is indexed by S (positions into E = A + D) and T
    (positions into B), |S| = |T|, enumerated with S outer and T inner in
    lexicographic order.  Summands whose S or T contains a zero parameter
    vanish and are skipped.

    Returns the value, or ``(value, [SubsetTerm, ...])`` with ``terms=True``.

    Raises
    ------
    SymbolError
        On |c|, |d| >= 1 or coincident a/b/d parameters.
    TermError
        If a summand hits a Z pole.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    report = validate(sym)
    for issue in report.issues:
        if issue.kind != "coincident":
            raise SymbolError(issue.message)
    _check_distinct(sym)
    n0 = th_min_n(sym)
    if n < n0:
        raise ValueError(f"expansion holds for n >= {n0} with these set sizes")
    total, recs = _th_sum(sym, n, n - 1, n, terms)
    return (total, recs) if terms else total


def th_det_k1(a, b, c, d, n: int):
    """Three-term closed form for a single parameter in each set."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if is_zero(a - d, DISTINCT_TOL):
        raise ZeroDivisionError("a = d: the two n-dependent terms are singular")
    const = (1 - b) * (1 + d) * (1 - c * b) * (1 - a * d) / ((1 - b * d) * (1 - a * b) * (1 - c * d))
    bd = (b * d) ** n * (1 - a * d) * (b - d) * (d - c) / ((d - a) * (1 - b * d) * (1 - c * d))
    ba = (b * a) ** n * (1 - a) * (a - c) * (1 + d) * (b - d) / ((a - d) * (1 - a * b) * (1 - c * d))
    return const + bd + ba


def _even_sum(A, C, n: int, power: int, signed: bool = False):
    one = one_like(A, C)
    total = 0 * one
    for r in range(len(A) + 1):
        for S in itertools.combinations(range(len(A)), r):
            Sv = [A[i] for i in S]
            if any(is_zero(s) for s in Sv):
                continue
            val = pow_prod(Sv, power) * z_o_with(surgery(A, S, Sv), C)
            if signed and r % 2:
                val = -val
            total = total + val
    pre = one
    for a, c in zip(A, C):
        pre = pre * (1 + c) / (1 + a)
    return pre * total


def th_det_even(A, C, n: int):
    """Even-symbol case A = B, C = D.

    ``prod (1 + c)/(1 + a) * sum_{S in A} prod_{a in S} a^(2n+1) Z_O(A - S + S^-1; C)``;
    the power 2n + 1 is the one that agrees with the matrix oracle.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    A = list(A)
    C = list(C)
    if len(A) != len(C):
        raise ValueError("A and C must have the same size")
    for a in A:
        if is_zero(1 + a, DISTINCT_TOL):
            raise ZeroDivisionError("a = -1 is not allowed")
    for c in C:
        if (c.abs2() if is_exact(c) else abs(c) ** 2) >= 1:
            raise SymbolError("|c| must be below 1")
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            if is_zero(A[i] - A[j], DISTINCT_TOL):
                raise SymbolError(f"a_{i + 1} and a_{j + 1} coincide")
    return _even_sum(A, C, n, 2 * n + 1)


def perturb(sym: RationalSymbolBC, eps) -> RationalSymbolBC:
    """Deterministic nudge: the j-th parameter of a, b, c, d (1-based, in that order) gets ``+ eps*j``.

    ``eps`` may be a Fraction or string for exact symbols.
    """
    if sym.params and is_exact(sym.params[0]) and not isinstance(eps, GaussianRational):
        eps = GaussianRational(Fraction(eps))
    out = {}
    j = 0
    for name in "abcd":
        vals = []
        for v in getattr(sym, name):
            j += 1
            vals.append(v + eps * j)
        out[name] = tuple(vals)
    return RationalSymbolBC(**out)
