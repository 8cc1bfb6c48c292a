"""
Brute-force ground truth: dense Toeplitz / Hankel matrices, LU determinants
in either backend, and dense eigenvalues in floating point.
"""
from __future__ import annotations

import io
from dataclasses import dataclass

import numpy as np

from .scalars import GaussianRational, check_finite, is_zero
from .symbol import RationalSymbolBC, fourier_coeffs

__all__ = [
    "DenseMatrix",
    "EigenError",
    "build_toeplitz",
    "build_hankel",
    "build_th",
    "det_lu",
    "eigenvalues",
]


class EigenError(RuntimeError):
    pass


@dataclass
class DenseMatrix:
    """Row-major matrix of scalars from one backend."""

    rows: list

    def __post_init__(self):
        widths = {len(r) for r in self.rows}
        if len(widths) > 1:
            raise ValueError("ragged matrix rows")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def n_cols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @property
    def exact(self) -> bool:
        return bool(self.rows) and bool(self.rows[0]) and isinstance(self.rows[0][0], GaussianRational)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __add__(self, other: "DenseMatrix") -> "DenseMatrix":
        if (self.n_rows, self.n_cols) != (other.n_rows, other.n_cols):
            raise ValueError("shape mismatch")
        return DenseMatrix([[x + y for x, y in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in r] for r in self.rows], dtype=complex).reshape(
            self.n_rows, self.n_cols
        )

    @classmethod
    def from_numpy(cls, arr) -> "DenseMatrix":
        arr = np.asarray(arr, dtype=complex)
        return cls([[complex(x) for x in row] for row in arr])

    def to_csv(self) -> str:
        """One line per row of ``re,im`` pairs."""
        buf = io.StringIO()
        for row in self.rows:
            cells = []
            for x in row:
                z = complex(x)
                cells.append(f"{z.real!r},{z.imag!r}")
            buf.write(",".join(cells) + "\n")
        return buf.getvalue()


def build_toeplitz(sym: RationalSymbolBC, n: int) -> DenseMatrix:
    """``T_n`` with entry (i, j) = phi_{i-j}."""
    co = fourier_coeffs(sym, -(n - 1), n - 1)
    return DenseMatrix([[co[i - j] for j in range(n)] for i in range(n)])


def build_hankel(sym: RationalSymbolBC, n: int) -> DenseMatrix:
    """``H_n`` with entry (i, j) = phi_{i+j+1}."""
    co = fourier_coeffs(sym, 1, 2 * n - 1)
    return DenseMatrix([[co[i + j + 1] for j in range(n)] for i in range(n)])


def build_th(sym: RationalSymbolBC, n: int) -> DenseMatrix:
    """``T_n + H_n`` with entry (i, j) = phi_{i-j} + phi_{i+j+1}."""
    co = fourier_coeffs(sym, -(n - 1), 2 * n - 1)
    return DenseMatrix([[co[i - j] + co[i + j + 1] for j in range(n)] for i in range(n)])


def _det_exact(rows: list) -> GaussianRational:
    a = [list(r) for r in rows]
    n = len(a)
    det = GaussianRational(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return GaussianRational(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        inv = 1 / p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                row_r, row_c = a[r], a[col]
                for c in range(col + 1, n):
                    row_r[c] = row_r[c] - f * row_c[c]
    return det


def det_lu(m: DenseMatrix):
    """Determinant by LU with partial pivoting.

    Exact matrices pivot on the first nonzero entry; floating matrices go
    through LAPACK (pivot by modulus).
    """
    if m.n_rows != m.n_cols:
        raise ValueError("determinant of a non-square matrix")
    if m.n_rows == 0:
        return GaussianRational(1)
    if m.exact:
        return _det_exact(m.rows)
    d = complex(np.linalg.det(m.to_numpy()))
    check_finite(d)
    return d


def eigenvalues(m: DenseMatrix | np.ndarray, rtol: float = 1e-8) -> np.ndarray:
    """All eigenvalues of a dense (nonsymmetric) matrix.

    Each eigenpair is certified by ``||(m - lam I) v|| <= rtol * ||m||``
    with ``||v|| = 1``.

    Raises
    ------
    EigenError
        If LAPACK fails or an eigenpair misses the residual bound.
    """
    arr = m.to_numpy() if isinstance(m, DenseMatrix) else np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("eigenvalues of a non-square matrix")
    try:
        lam, vecs = np.linalg.eig(arr)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure path
        raise EigenError(str(exc)) from exc
    scale = max(np.linalg.norm(arr, 2), np.finfo(float).tiny)
    vecs = vecs / np.linalg.norm(vecs, axis=0, keepdims=True)
    resid = np.linalg.norm(arr @ vecs - vecs * lam, axis=0)
    bad = np.nonzero(resid > rtol * scale)[0]
    if bad.size:
        raise EigenError(f"{bad.size} eigenpairs miss the residual bound (worst {resid.max():.3g})")
    return lam


def is_singular(m: DenseMatrix) -> bool:
    return is_zero(det_lu(m), 0.0)
