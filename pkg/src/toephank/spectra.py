"""
Eigenvalue-locus analysis for rational symbols.

``phi - lambda = (f - lambda g) / g``.  The Toeplitz determinant of
``phi - lambda`` can only fail to be exponentially dominated by a single
term when the k-th and (k+1)-th roots of ``f - lambda g`` share a modulus
(k = poles of phi inside the circle).  For T+H the analogous condition uses
the 3k moduli of ``{a_i(lambda), 1/b_i(lambda), d_i}``.  The scans below
sample those gaps on a grid and compare them with finite-matrix spectra and
the image curve ``phi(T)``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .matrix_oracle import build_th, build_toeplitz, eigenvalues
from .symbol import DayForm, RationalSymbolBC, polynomials

__all__ = [
    "RootSet",
    "LocusSample",
    "LocusScan",
    "EigCloud",
    "symbol_polynomials",
    "inside_pole_count",
    "shifted_roots",
    "gap_toeplitz",
    "gap_th",
    "th_split",
    "locus_scan",
    "image_curve",
    "curve_distance",
    "eig_cloud",
    "write_locus_csv",
    "write_eigs_csv",
    "write_curve_csv",
]

LEAD_TOL = 1e-12


@dataclass(frozen=True)
class RootSet:
    roots: np.ndarray  # finite roots
    n_infinite: int  # degree drop


@dataclass(frozen=True)
class LocusSample:
    lam: complex
    sorted_moduli: tuple
    gap: float
    kind: str


@dataclass
class LocusScan:
    kind: str
    re: np.ndarray  # cell-center grid, shape (res,)
    im: np.ndarray
    gap: np.ndarray  # shape (res_im, res_re)
    flag: np.ndarray

    @property
    def cell(self) -> float:
        """Cell diameter."""
        return float(np.hypot(self.re[1] - self.re[0], self.im[1] - self.im[0]))

    def flagged_points(self) -> np.ndarray:
        ii, jj = np.nonzero(self.flag)
        return self.re[jj] + 1j * self.im[ii]

    def samples(self) -> list:
        out = []
        for i, y in enumerate(self.im):
            for j, x in enumerate(self.re):
                out.append(LocusSample(complex(x, y), (), float(self.gap[i, j]), self.kind))
        return out


@dataclass
class EigCloud:
    which: str
    n: int
    eigs: np.ndarray
    dist_curve: np.ndarray
    dist_locus: np.ndarray | None
    phi1: complex
    phi1_distance: float  # min |eig - phi(1)|

    @property
    def max_dist_curve(self) -> float:
        return float(self.dist_curve.max()) if self.dist_curve.size else 0.0


# ---------------------------------------------------------------------------
# polynomials and roots


def _poly_mul(p, q):
    return np.convolve(np.asarray(p, dtype=complex), np.asarray(q, dtype=complex))


def symbol_polynomials(sym) -> tuple[np.ndarray, np.ndarray]:
    """``(f, g)`` with ``phi = f / g``, coefficients in increasing degree."""
    if isinstance(sym, RationalSymbolBC):
        return polynomials(sym)
    if isinstance(sym, DayForm):
        f = np.array([complex(sym.c0)])
        for r in sym.r:
            f = _poly_mul(f, [-complex(r), 1])
        g = np.array([1 + 0j])
        for rho in sym.rho:
            g = _poly_mul(g, [1, -1 / complex(rho)])
        for dl in sym.delta:
            g = _poly_mul(g, [-complex(dl), 1])
        return f, g
    raise TypeError(f"unsupported symbol type {type(sym).__name__}")


def _trim(p: np.ndarray) -> tuple[np.ndarray, int]:
    """Drop negligible leading coefficients; returns the polynomial and the drop."""
    scale = np.abs(p).max() if p.size else 0.0
    drop = 0
    while p.size and abs(p[-1]) <= LEAD_TOL * scale:
        p = p[:-1]
        drop += 1
    return p, drop


def _roots_increasing(p: np.ndarray) -> np.ndarray:
    if p.size <= 1:
        return np.zeros(0, dtype=complex)
    return np.roots(p[::-1]).astype(complex)


def inside_pole_count(sym) -> int:
    """Roots of g strictly inside the unit circle (the Toeplitz split index)."""
    _, g = symbol_polynomials(sym)
    g, _ = _trim(g)
    return int(np.sum(np.abs(_roots_increasing(g)) < 1))


def shifted_roots(sym, lam: complex) -> RootSet:
    """Roots of ``f - lam g``.  Lost degree is reported as roots at infinity."""
    f, g = symbol_polynomials(sym)
    size = max(f.size, g.size)
    p = np.zeros(size, dtype=complex)
    p[: f.size] += f
    p[: g.size] -= lam * g
    full = size
    p, drop = _trim(p)
    if p.size == 0:
        raise ValueError("f - lambda g vanishes identically")
    return RootSet(_roots_increasing(p), full - 1 - (p.size - 1) if full else 0)


def _sorted_moduli(rs: RootSet) -> np.ndarray:
    return np.concatenate([np.sort(np.abs(rs.roots)), np.full(rs.n_infinite, np.inf)])


def _gap_at(moduli: np.ndarray, split: int) -> float:
    if split < 1 or split >= moduli.size:
        raise ValueError(f"split index {split} outside 1..{moduli.size - 1}")
    hi, lo = moduli[split], moduli[split - 1]
    if np.isinf(hi):
        return np.inf
    return float(hi - lo)


def gap_toeplitz(sym, lam: complex, k: int | None = None) -> LocusSample:
    """``|z_{k+1}| - |z_k|`` for the roots of ``f - lam g``."""
    k = inside_pole_count(sym) if k is None else k
    mods = _sorted_moduli(shifted_roots(sym, lam))
    return LocusSample(complex(lam), tuple(mods), _gap_at(mods, k), "toeplitz")


def _th_set(sym: RationalSymbolBC, rs: RootSet) -> np.ndarray:
    # k smallest roots are a_i(lambda), the rest are 1/b_i(lambda); d_i fixed
    mods = _sorted_moduli(rs)
    return np.sort(np.concatenate([mods, [abs(complex(d)) for d in sym.d]]))


def th_split(sym: RationalSymbolBC) -> int:
    """Position of the T+H gap: ``|A| + |D|`` (2k when all sets have k elements)."""
    return len(sym.a) + len(sym.d)


def gap_th(sym: RationalSymbolBC, lam: complex) -> LocusSample:
    """``|s_{2k+1}| - |s_{2k}|`` over ``S = {a_i(lam), 1/b_i(lam), d_i}``.

    The ``|A|`` smallest roots of ``f - lam g`` play the a_i(lam), the
    others are the 1/b_i(lam); their moduli enter S as they are.
    """
    rs = shifted_roots(sym, lam)
    want = len(sym.a) + len(sym.b)
    if rs.roots.size + rs.n_infinite != want:
        raise ValueError(f"expected {want} roots of f - lambda g, found {rs.roots.size + rs.n_infinite}")
    mods = _th_set(sym, rs)
    return LocusSample(complex(lam), tuple(mods), _gap_at(mods, th_split(sym)), "th")


# ---------------------------------------------------------------------------
# grid scans


def _batch_moduli(f: np.ndarray, g: np.ndarray, lams: np.ndarray) -> np.ndarray:
    """Sorted root moduli of ``f - lam g`` for many lam (rows); inf for lost degree."""
    size = max(f.size, g.size)
    F = np.zeros(size, dtype=complex)
    G = np.zeros(size, dtype=complex)
    F[: f.size] = f
    G[: g.size] = g
    P = F[None, :] - lams[:, None] * G[None, :]
    deg = size - 1
    out = np.full((lams.size, deg), np.inf)
    if deg == 0:
        return out
    lead = P[:, -1]
    scale = np.abs(P).max(axis=1)
    ok = np.abs(lead) > LEAD_TOL * scale
    if ok.any():
        mon = P[ok, :-1] / lead[ok, None]
        comp = np.zeros((mon.shape[0], deg, deg), dtype=complex)
        if deg > 1:
            comp[:, np.arange(1, deg), np.arange(deg - 1)] = 1
        comp[:, :, -1] = -mon
        out[ok] = np.sort(np.abs(np.linalg.eigvals(comp)), axis=1)
    for idx in np.nonzero(~ok)[0]:
        p, drop = _trim(P[idx])
        m = np.sort(np.abs(_roots_increasing(p)))
        out[idx, : m.size] = m
    return out


def _flag(gap: np.ndarray, threshold: float | None) -> np.ndarray:
    """Locus cells.

    With ``threshold`` set, flag ``gap < threshold``.  Otherwise flag a cell
    when the zero of the V-shaped gap passes within half a cell of its
    center: ``gap <= max |gap(neighbor) - gap| / 2``.
    """
    finite = np.where(np.isfinite(gap), gap, np.nan)
    if threshold is not None:
        return np.nan_to_num(finite, nan=np.inf) < threshold
    pad = np.pad(finite, 1, constant_values=np.nan)
    diffs = []
    for di, dj in ((0, 1), (0, -1), (1, 0), (-1, 0)):
        nb = pad[1 + di : 1 + di + gap.shape[0], 1 + dj : 1 + dj + gap.shape[1]]
        diffs.append(np.abs(nb - finite))
    stack = np.stack(diffs)
    with np.errstate(invalid="ignore"):
        slope = np.max(np.where(np.isnan(stack), -np.inf, stack), axis=0)
        flag = finite <= 0.5 * slope
    return np.nan_to_num(flag, nan=False).astype(bool)


def locus_scan(
    sym,
    kind: str,
    window: tuple[float, float, float, float],
    resolution: int,
    threshold: float | None = None,
) -> LocusScan:
    """Sample the Toeplitz (``kind="toeplitz"``) or T+H (``"th"``) gap on a cell-centered grid.

    ``window = (re_min, re_max, im_min, im_max)``.  See ``_flag`` for the
    default flagging rule; pass ``threshold`` for an absolute cut.
    """
    if resolution < 2 or resolution > 2048:
        raise ValueError("resolution must lie in 2..2048")
    x0, x1, y0, y1 = window
    hx = (x1 - x0) / resolution
    hy = (y1 - y0) / resolution
    re = x0 + hx * (np.arange(resolution) + 0.5)
    im = y0 + hy * (np.arange(resolution) + 0.5)
    lams = (re[None, :] + 1j * im[:, None]).ravel()
    f, g = symbol_polynomials(sym)
    mods = _batch_moduli(f, g, lams)
    if kind == "toeplitz":
        split = inside_pole_count(sym)
    elif kind == "th":
        if not isinstance(sym, RationalSymbolBC):
            raise TypeError("T+H locus needs a BC symbol")
        split = th_split(sym)
        dmod = np.array([abs(complex(d)) for d in sym.d])
        mods = np.sort(np.concatenate([mods, np.broadcast_to(dmod, (mods.shape[0], dmod.size))], axis=1), axis=1)
    else:
        raise ValueError(f"unknown locus kind {kind!r}")
    if mods.shape[1] == 0 or split < 1 or split >= mods.shape[1]:
        # no admissible split: the gap condition can never hold
        gap = np.full(lams.size, np.inf)
    else:
        with np.errstate(invalid="ignore"):
            gap = mods[:, split] - mods[:, split - 1]
        gap = np.where(np.isinf(mods[:, split]), np.inf, gap)
    gap = gap.reshape(resolution, resolution)
    return LocusScan(kind, re, im, gap, _flag(gap, threshold))


# ---------------------------------------------------------------------------
# image curve and eigenvalue clouds


def image_curve(sym, m: int = 4096) -> np.ndarray:
    """``phi(exp(2 pi i j / m))`` for j = 0..m-1."""
    if m < 16:
        raise ValueError("need at least 16 samples")
    z = np.exp(2j * np.pi * np.arange(m) / m)
    f, g = symbol_polynomials(sym)
    den = np.polynomial.polynomial.polyval(z, g)
    if np.any(np.abs(den) < 1e-300):
        raise ZeroDivisionError("pole of the symbol on the unit circle")
    return np.polynomial.polynomial.polyval(z, f) / den


def curve_distance(points, curve: np.ndarray) -> np.ndarray:
    """Distance from each point to the closed polyline through ``curve``."""
    pts = np.asarray(points, dtype=complex).ravel()
    if pts.size == 0:
        return np.zeros(0)
    p0 = curve
    p1 = np.roll(curve, -1)
    seg = p1 - p0
    L2 = np.abs(seg) ** 2
    out = np.empty(pts.size)
    for start in range(0, pts.size, 512):
        q = pts[start : start + 512, None]
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.real((q - p0) * np.conj(seg)) / L2
        t = np.clip(np.nan_to_num(t), 0.0, 1.0)
        out[start : start + 512] = np.abs(q - (p0 + t * seg)).min(axis=1)
    return out


def _point_distance(points: np.ndarray, targets: np.ndarray) -> np.ndarray:
    if targets.size == 0:
        return np.full(points.size, np.inf)
    out = np.empty(points.size)
    for start in range(0, points.size, 256):
        out[start : start + 256] = np.abs(points[start : start + 256, None] - targets[None, :]).min(axis=1)
    return out


def eig_cloud(sym, n: int, which: str = "T", locus: LocusScan | None = None, m: int = 4096) -> EigCloud:
    """Eigenvalues of ``T_n`` (``which="T"``) or ``T_n + H_n`` (``"TH"``) with distance diagnostics."""
    if n < 1 or n > 400:
        raise ValueError("n must lie in 1..400")
    fs = sym.to_float()
    if which.upper() == "T":
        mat = build_toeplitz(fs, n)
    elif which.upper() == "TH":
        mat = build_th(fs, n)
    else:
        raise ValueError(f"unknown matrix family {which!r}")
    eigs = eigenvalues(mat)
    curve = image_curve(fs, m)
    dist_curve = curve_distance(eigs, curve)
    dist_locus = _point_distance(eigs, locus.flagged_points()) if locus is not None else None
    phi1 = complex(fs.evaluate(1.0))
    return EigCloud(
        which.upper(), n, eigs, dist_curve, dist_locus, phi1, float(np.abs(eigs - phi1).min())
    )


# ---------------------------------------------------------------------------
# CSV output


def _g(x: float) -> str:
    return repr(float(x))


def write_locus_csv(scan: LocusScan, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["re_lambda", "im_lambda", "gap", "flag"])
    for i, y in enumerate(scan.im):
        for j, x in enumerate(scan.re):
            w.writerow([_g(x), _g(y), _g(scan.gap[i, j]), int(scan.flag[i, j])])


def write_eigs_csv(cloud: EigCloud, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["re", "im", "dist_curve", "dist_locus"])
    for idx, lam in enumerate(cloud.eigs):
        dl = "" if cloud.dist_locus is None else _g(cloud.dist_locus[idx])
        w.writerow([_g(lam.real), _g(lam.imag), _g(cloud.dist_curve[idx]), dl])


def write_curve_csv(curve: np.ndarray, fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["re", "im"])
    for z in curve:
        w.writerow([_g(z.real), _g(z.imag)])
