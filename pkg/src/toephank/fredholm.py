"""
Operator route for T+H determinants.

``det(T_n + H_n) = G^n E(phi) det(I + Q_n K Q_n)`` with
``K = H(psi) (T(psi^-1) - H(~psi^-1))``.  For BC symbols with k parameters
per set the entries of K are finite sums of geometric terms built from four
families of residue constants (``alphas``).  This module also carries the
determinant identities used when the Fredholm series is expanded.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .day_toeplitz import truncation_size
from .matrix_oracle import DenseMatrix, det_lu
from .scalars import GaussianRational, is_exact, is_zero
from .symbol import RationalSymbolBC, SymbolError, fourier_coeff, psi_of, reciprocal
from .th_formula import e_th
from .zfun import one_like

__all__ = [
    "AlphaSet",
    "KMatrixWindow",
    "alphas",
    "psi_fourier",
    "k_entry",
    "k_entry_series",
    "k_window",
    "be_det",
    "be_det_k1_trace",
    "d_i_det",
    "d_i_tail_sum",
    "cauchy_type_det",
    "vanishing_residual",
    "vanishing_summands",
]


@dataclass(frozen=True)
class AlphaSet:
    alpha_b: tuple
    alpha_d_plus: tuple
    alpha_d_minus: tuple
    alpha_a: tuple


def _require_equal_k(sym: RationalSymbolBC) -> int:
    try:
        return sym.k
    except SymbolError as exc:
        raise SymbolError(f"operator route needs |A| = |B| = |C| = |D|: {exc}") from None


def _div(num, den, what: str):
    if is_zero(den, 1e-300):
        raise ZeroDivisionError(f"coincident parameters in {what}")
    return num / den


def alphas(sym: RationalSymbolBC) -> AlphaSet:
    """Residue constants of psi and psi^-1 (one value per index j)."""
    k = _require_equal_k(sym)
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    one = one_like(A, B, C, D)
    ab, dp, dm, aa = [], [], [], []
    for j in range(k):
        b = B[j]
        num, den = one, one
        for i in range(k):
            num = num * (1 - A[i] * b) * (1 - D[i] * b) * (b - D[i])
            den = den * (1 - C[i] * b) * (1 - B[i] * b)
            if i != j:
                den = den * (b - B[i])
        ab.append(_div(num, den, "alpha_b"))

        d = D[j]
        num, den = one, one
        for i in range(k):
            num = num * (1 - C[i] * d) * (1 - B[i] * d) * (d - B[i])
            den = den * (1 - A[i] * d) * (1 - D[i] * d)
            if i != j:
                den = den * (d - D[i])
        dp.append(_div(num, den, "alpha_d_plus"))

        num, den = one, one
        for i in range(k):
            num = num * (1 - B[i] * d) * (d - C[i]) * (d - B[i])
            den = den * (d - A[i]) * (1 - d * D[i])
            if i != j:
                den = den * (d - D[i])
        dm.append(_div(num, den, "alpha_d_minus"))

        a = A[j]
        num, den = one, one
        for i in range(k):
            num = num * (1 - a * B[i]) * (a - C[i]) * (a - B[i])
            den = den * (1 - D[i] * a) * (a - D[i])
            if i != j:
                den = den * (a - A[i])
        aa.append(_div(num, den, "alpha_a"))
    return AlphaSet(tuple(ab), tuple(dp), tuple(dm), tuple(aa))


def psi_fourier(sym: RationalSymbolBC, j: int, which: str = "psi", al: AlphaSet | None = None):
    """Fourier coefficient of ``psi``, ``psi_inv`` or ``psi_inv_tilde`` from the residue series.

    Covered indices: ``psi`` for j > 0; ``psi_inv`` and ``psi_inv_tilde`` for
    every j.  Other requests are delegated to the generic Laurent expansion.
    """
    if which == "psi_inv_tilde":
        return psi_fourier(sym, -j, "psi_inv", al)
    k = _require_equal_k(sym)
    al = al or alphas(sym)
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    zero = 0 * one_like(A, B, C, D)
    if which == "psi":
        if j <= 0:
            return fourier_coeff(psi_of(sym), j)
        return sum((al.alpha_b[i] * B[i] ** (j - 1) for i in range(k)), zero)
    if which != "psi_inv":
        raise ValueError(f"unknown coefficient family {which!r}")
    if j > 0:
        return sum((al.alpha_d_plus[i] * D[i] ** (j - 1) for i in range(k)), zero)
    if j < 0:
        m = -j
        return sum(
            (al.alpha_d_minus[i] * D[i] ** (m - 1) + al.alpha_a[i] * A[i] ** (m - 1) for i in range(k)),
            zero,
        )
    for x in A + D:
        if is_zero(x):
            raise ZeroDivisionError("zero a or d parameter in the j = 0 coefficient")
    val = zero
    for i in range(k):
        val = val + al.alpha_d_minus[i] / D[i] + al.alpha_a[i] / A[i]
    prod = one_like(A)
    for i in range(k):
        prod = prod * C[i] * B[i] / (A[i] * D[i])
    return val + prod


def _k_coefficients(sym: RationalSymbolBC, al: AlphaSet):
    """Weights w[i][j] and nodes x[j] with K(g, h) = sum w[i][j] b_i^g x_j^h."""
    k = sym.k
    B = sym.b
    nodes = list(sym.d) + list(sym.a)
    node_alpha = list(al.alpha_d_minus) + list(al.alpha_a)
    w = []
    for i in range(k):
        b = B[i]
        row = []
        for x, ax in zip(nodes, node_alpha):
            row.append(_div(al.alpha_b[i] * ax * (1 + b) * (1 - x), (x - b) * (1 - b * x), "K entry"))
        w.append(row)
    return w, nodes


def k_entry(sym: RationalSymbolBC, g: int, h: int, al: AlphaSet | None = None):
    """Closed-form entry K(g, h) (g, h >= 0)."""
    if g < 0 or h < 0:
        raise ValueError("K is indexed by nonnegative integers")
    _require_equal_k(sym)
    al = al or alphas(sym)
    w, nodes = _k_coefficients(sym, al)
    total = 0 * one_like(sym.params)
    for i, b in enumerate(sym.b):
        bg = b**g
        for wij, x in zip(w[i], nodes):
            total = total + wij * bg * x**h
    return total


def k_entry_series(sym: RationalSymbolBC, g: int, h: int, terms: int = 400):
    """K(g, h) from its defining series, truncated after ``terms`` summands.

    Uses the generic Laurent coefficients of psi and 1/psi, so it is
    independent of the residue constants.
    """
    psi = psi_of(sym)
    inv = reciprocal(psi)
    total = 0 * one_like(sym.params)
    for l in range(terms):
        total = total + fourier_coeff(psi, g + l + 1) * (fourier_coeff(inv, l - h) - fourier_coeff(inv, -l - h - 1))
    return total


@dataclass
class KMatrixWindow:
    n: int
    M: int
    entries: np.ndarray


def _max_rate(sym: RationalSymbolBC) -> float:
    return max((abs(complex(x)) for x in sym.params), default=0.0)


def k_window(sym: RationalSymbolBC, n: int, M: int) -> KMatrixWindow:
    """Float M x M block ``K(n + g, n + h)``."""
    fs = sym.to_float()
    al = alphas(fs)
    w, nodes = _k_coefficients(fs, al)
    g = np.arange(M) + n
    U = np.power.outer(np.array([complex(b) for b in fs.b]), g).T  # M x k
    V = np.power.outer(np.array([complex(x) for x in nodes]), g)  # 2k x M
    W = np.array([[complex(x) for x in row] for row in w], dtype=complex).reshape(len(fs.b), len(nodes))
    return KMatrixWindow(n, M, U @ W @ V)


def be_det(sym: RationalSymbolBC, n: int, M: int | None = None) -> complex:
    """``E(phi) det(I + Q_n K Q_n)`` with the Fredholm determinant truncated to M x M.

    Float only; every parameter must lie inside the unit disk.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    _require_equal_k(sym)
    rate = _max_rate(sym)
    if rate >= 1:
        raise SymbolError("operator route needs every parameter inside the unit disk")
    if M is None:
        # entries already carry a factor rate^(2n)
        M = max(1, truncation_size(rate) - 2 * n) if rate > 0 else 1
    if sym.k == 0:
        return complex(e_th(sym))
    win = k_window(sym, n, M)
    fred = complex(np.linalg.det(np.eye(M) + win.entries))
    return complex(e_th(sym.to_float())) * fred


def be_det_k1_trace(sym: RationalSymbolBC, n: int):
    """k = 1 shortcut: K has rank one, so ``det(I + Q_n K Q_n) = 1 + trace``.

    Exact in the exact backend (the trace is a finite sum of geometric series).
    """
    if sym.k != 1:
        raise SymbolError("rank-one shortcut needs k = 1")
    al = alphas(sym)
    w, nodes = _k_coefficients(sym, al)
    b = sym.b[0]
    trace = 0 * one_like(sym.params)
    for wij, x in zip(w[0], nodes):
        trace = trace + wij * (b * x) ** n / (1 - b * x)
    return e_th(sym) * (1 + trace)


# ---------------------------------------------------------------------------
# determinant identities


def d_i_det(I, T, S):
    """``det(t_h^{i_g} s_h^{i_h})`` for g, h = 1..l."""
    I, T, S = list(I), list(T), list(S)
    l = len(I)
    if l == 0 or len(T) != l or len(S) != l:
        raise ValueError("I, T and S must share a positive length")
    rows = [[T[h] ** I[g] * S[h] ** I[h] for h in range(l)] for g in range(l)]
    if not any(is_exact(x) for x in T + S):
        return complex(np.linalg.det(np.array(rows, dtype=complex)))
    return det_lu(DenseMatrix([[GaussianRational(x) if isinstance(x, int) else x for x in r] for r in rows]))


def d_i_tail_sum(T, S, n: int):
    """``sum over i_1..i_l >= n`` of ``D_I(T, S)`` in closed form (|t s| < 1)."""
    T, S = list(T), list(S)
    l = len(T)
    rows = [[(T[h] * S[m]) ** n / (1 - T[h] * S[m]) for h in range(l)] for m in range(l)]
    if not any(is_exact(x) for x in T + S):
        return complex(np.linalg.det(np.array(rows, dtype=complex)))
    return det_lu(DenseMatrix(rows))


def cauchy_type_det(S, T):
    """Direct and closed-form values of ``det 1/((s_i - t_j)(1 - s_i t_j))``.

    Returns ``(direct, closed)``.
    """
    S, T = list(S), list(T)
    n = len(S)
    if len(T) != n or n == 0:
        raise ValueError("S and T must share a positive length")
    exact = any(is_exact(x) for x in S + T)
    rows = []
    for s in S:
        row = []
        for t in T:
            den = (s - t) * (1 - s * t)
            if is_zero(den, 1e-300):
                raise ZeroDivisionError("singular Cauchy-type entry")
            row.append(1 / den)
        rows.append(row)
    if exact:
        direct = det_lu(DenseMatrix(rows))
    else:
        direct = complex(np.linalg.det(np.array(rows, dtype=complex)))
    one = one_like(S, T)
    num, den = one, one
    for i in range(n):
        for j in range(i + 1, n):
            num = num * (T[i] - T[j]) * (S[j] - S[i]) * (1 - T[i] * T[j]) * (1 - S[i] * S[j])
    for i in range(n):
        for j in range(n):
            den = den * (S[i] - T[j]) * (1 - T[i] * S[j])
    return direct, num / den


def vanishing_summands(sym: RationalSymbolBC, i: int, al: AlphaSet | None = None) -> list:
    """The 3k + 1 summands of the coefficient identity for ``b_i``."""
    k = _require_equal_k(sym)
    A, B, C, D = sym.a, sym.b, sym.c, sym.d
    for x in A + D:
        if is_zero(x):
            raise ZeroDivisionError("coefficient identity needs nonzero a and d")
    al = al or alphas(sym)
    b = B[i]
    out = []
    for j in range(k):
        out.append(-b * al.alpha_d_minus[j] / (D[j] * (D[j] - b)))
        out.append(-b * al.alpha_a[j] / (A[j] * (A[j] - b)))
        out.append(b * al.alpha_d_plus[j] / (1 - b * D[j]))
    prod = one_like(A)
    for j in range(k):
        prod = prod * B[j] * C[j] / (A[j] * D[j])
    out.append(prod)
    return out


def vanishing_residual(sym: RationalSymbolBC, i: int):
    """Left side of the coefficient identity; zero for every valid symbol."""
    terms = vanishing_summands(sym, i)
    total = terms[0]
    for t in terms[1:]:
        total = total + t
    return total
