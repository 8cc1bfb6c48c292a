from fractions import Fraction

import numpy as np
import pytest

from toephank.fredholm import (
    alphas,
    be_det,
    be_det_k1_trace,
    cauchy_type_det,
    d_i_det,
    d_i_tail_sum,
    k_entry,
    k_entry_series,
    k_window,
    psi_fourier,
    vanishing_residual,
    vanishing_summands,
)
from toephank.sampling import make_rng, random_point, random_rational, random_symbol
from toephank.scalars import GaussianRational as G
from toephank.symbol import RationalSymbolBC, SymbolError, fourier_coeff, psi_of, reciprocal
from toephank.th_formula import th_det
from conftest import rel_err

F = Fraction


def test_alphas_k1(ex51):
    a, b, c, d = ex51.params
    al = alphas(ex51)
    assert al.alpha_b == ((1 - a * b) * (1 - d * b) * (b - d) / ((1 - c * b) * (1 - b * b)),)
    assert al.alpha_d_plus == ((1 - c * d) * (1 - b * d) * (d - b) / ((1 - a * d) * (1 - d * d)),)
    assert al.alpha_d_minus == ((1 - b * d) * (d - c) * (d - b) / ((d - a) * (1 - d * d)),)
    assert al.alpha_a == ((1 - a * b) * (a - c) * (a - b) / ((1 - d * a) * (a - d)),)
    # the k = 1 shortcut for the zeroth coefficient of 1/psi
    assert psi_fourier(ex51, 0, "psi_inv") == (al.alpha_d_plus[0] + b) / d


def test_psi_inverse_minus_two(ex51):
    a, b, c, d = ex51.params
    al = alphas(ex51)
    assert psi_fourier(ex51, -2, "psi_inv") == al.alpha_d_minus[0] * d + al.alpha_a[0] * a


def test_constant_symbol(one):
    assert psi_fourier(one, 0, "psi") == 1
    assert psi_fourier(one, 2, "psi") == 0
    # all-zero parameters collapse the alpha denominators
    zero = RationalSymbolBC.make(["0"], ["0"], ["0"], ["0"])
    with pytest.raises(ZeroDivisionError):
        k_entry(zero, 0, 0)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_psi_series_match_residues(k):
    rng = make_rng(40 + k)
    sym = random_symbol(rng, (k, k, k, k), exact=True)
    psi = psi_of(sym)
    inv = reciprocal(psi)
    for j in range(1, 6):
        assert psi_fourier(sym, j) == fourier_coeff(psi, j)
    for j in range(-5, 6):
        assert psi_fourier(sym, j, "psi_inv") == fourier_coeff(inv, j)
        assert psi_fourier(sym, j, "psi_inv_tilde") == fourier_coeff(inv, -j)


def test_psi_quadrature():
    sym = random_symbol(make_rng(44), (2, 2, 2, 2), radius=0.7)
    m = 4096
    z = np.exp(2j * np.pi * np.arange(m) / m)
    psi = psi_of(sym)
    vals = np.array([psi.evaluate(x) for x in z])
    inv_vals = 1 / vals
    q, qi = np.fft.fft(vals) / m, np.fft.fft(inv_vals) / m
    for j in range(1, 5):
        assert abs(q[j] - psi_fourier(sym, j)) < 1e-10
    for j in range(-4, 5):
        assert abs(qi[j % m] - psi_fourier(sym, j, "psi_inv")) < 1e-10


def test_psi_fourier_errors(ex51):
    sym = RationalSymbolBC.make(["0"], ["1/3"], ["1/4"], ["1/5"])
    with pytest.raises(ZeroDivisionError):
        psi_fourier(sym, 0, "psi_inv")
    with pytest.raises(ValueError):
        psi_fourier(ex51, 1, "phi")


def test_k_entry_series():
    for k in (1, 2):
        sym = random_symbol(make_rng(50 + k), (k, k, k, k), radius=0.6)
        for g in range(6):
            for h in range(6):
                assert abs(k_entry(sym, g, h) - k_entry_series(sym, g, h, 400)) < 1e-11


def test_k_rank_one():
    sym = random_symbol(make_rng(53), radius=0.8)
    s = np.linalg.svd(k_window(sym, 0, 8).entries, compute_uv=False)
    assert s[1] < 1e-12 * s[0]


def test_be_det(one, ex51):
    assert abs(be_det(one, 4) - 1) < 1e-15
    assert abs(be_det(ex51.to_float(), 5, M=64) - 51551341 / 57712500) < 1e-10
    rng = make_rng(54)
    for _ in range(5):
        sym = random_symbol(rng, (2, 2, 2, 2), radius=0.7)
        for n in (1, 4, 8):
            assert rel_err(be_det(sym, n), th_det(sym, n)) < 1e-9


def test_be_trace_shortcut(ex51):
    assert be_det_k1_trace(ex51, 5) == F(51551341, 57712500)
    with pytest.raises(SymbolError):
        be_det_k1_trace(RationalSymbolBC.make(["1/2", "1/3"], ["1/5", "1/7"], ["0", "0"], ["0", "1/9"]), 2)


def test_be_det_rejects(ex52):
    with pytest.raises(SymbolError):
        be_det(ex52.to_float(), 3)
    with pytest.raises(SymbolError):
        be_det(RationalSymbolBC.make(["1/2"], [], [], []), 3)


def test_d_i_det_basic():
    t, s = G(F(1, 2)), G(F(1, 3))
    assert d_i_det([3], [t], [s]) == t**3 * s**3
    T = [G(F(1, 2)), G(F(1, 2))]
    assert d_i_det([1, 4], T, [G(F(1, 3)), G(F(1, 5))]) == 0


def test_d_i_tail_sum_vanishes_and_matches():
    S = [G(F(1, 3)), G(F(1, 3))]
    assert d_i_tail_sum([G(F(1, 2)), G(F(-1, 4))], S, 3) == 0
    rng = make_rng(55)
    T = [random_point(rng, 0.5) for _ in range(2)]
    S = [random_point(rng, 0.5) for _ in range(2)]
    brute = sum(d_i_det([i, j], T, S) for i in range(2, 62) for j in range(2, 62))
    assert abs(d_i_tail_sum(T, S, 2) - brute) < 1e-13


def test_cauchy():
    s, t = G(F(1, 2)), G(F(-1, 3))
    direct, closed = cauchy_type_det([s], [t])
    assert direct == closed == 1 / ((s - t) * (1 - s * t))
    rng = make_rng(56)
    S = [random_rational(rng) for _ in range(2)]
    T = [random_rational(rng) for _ in range(2)]
    direct, closed = cauchy_type_det(S, T)
    assert direct == closed
    S = [random_point(rng, 0.9) for _ in range(5)]
    T = [random_point(rng, 0.9) for _ in range(5)]
    direct, closed = cauchy_type_det(S, T)
    assert rel_err(direct, closed) < 1e-10
    with pytest.raises(ZeroDivisionError):
        cauchy_type_det([s], [s])


def test_vanishing_residual(ex51):
    assert vanishing_residual(ex51, 0) == 0
    sym = random_symbol(make_rng(57), (2, 2, 2, 2), exact=True)
    assert all(vanishing_residual(sym, i) == 0 for i in range(2))
    sym = random_symbol(make_rng(58), (3, 3, 3, 3))
    for i in range(3):
        scale = max(abs(complex(x)) for x in vanishing_summands(sym, i))
        assert abs(vanishing_residual(sym, i)) <= 1e-11 * scale
    with pytest.raises(ZeroDivisionError):
        vanishing_residual(RationalSymbolBC.make(["0"], ["1/3"], ["1/4"], ["1/5"]), 0)
