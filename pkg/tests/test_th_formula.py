import itertools
import json
from fractions import Fraction

import pytest

from toephank.matrix_oracle import build_th, det_lu
from toephank.sampling import make_rng, random_rational, random_symbol
from toephank.scalars import GaussianRational as G
from toephank.symbol import RationalSymbolBC, SymbolError
from toephank.th_formula import (
    TermError,
    _th_sum,
    e_th,
    perturb,
    terms_to_json,
    th_det,
    th_det_even,
    th_det_k1,
    th_min_n,
)
from conftest import rel_err

F = Fraction


def test_e_th(one, ex51):
    assert e_th(one) == 1
    assert e_th(ex51) == F(594, 665)
    a, b, c, d = ex51.params
    assert e_th(ex51) == (1 - b) * (1 + d) * (1 - c * b) * (1 - a * d) / ((1 - b * d) * (1 - a * b) * (1 - c * d))


def test_th_det_examples(one, ex51):
    assert th_det(ex51, 5) == F(51551341, 57712500)
    for n in (1, 4, 9):
        assert th_det(one, n) == 1


def test_second_example_value(ex52):
    # both routes agree with each other, not with the printed 7571/4617
    assert th_det(ex52, 5) == det_lu(build_th(ex52, 5)) == F(20546131, 14428125)


def test_th_det_random_exact():
    rng = make_rng(12)
    for k in (2, 3):
        sym = random_symbol(rng, (k, k, k, k), exact=True)
        for n in (1, 2, 4):
            assert th_det(sym, n) == det_lu(build_th(sym, n))


def test_k1_closed_form(ex51):
    a, b, c, d = ex51.params
    assert th_det_k1(a, b, c, d, 5) == F(51551341, 57712500)
    for n in (1, 3, 7):
        assert th_det_k1(a, 0, c, d, n) == (1 + d) * (1 - a * d) / (1 - c * d)
    rng = make_rng(2)
    for _ in range(5):
        sym = random_symbol(rng, exact=True)
        for n in range(1, 11):
            assert th_det_k1(*sym.params, n) == th_det(sym, n)
    with pytest.raises(ZeroDivisionError):
        th_det_k1(G(F(1, 2)), G(F(1, 3)), G(0), G(F(1, 2)), 3)


def test_even_case():
    assert th_det_even([G(0)], [G(0)], 4) == 1
    half, quarter = G(F(1, 2)), G(F(1, 4))
    even = RationalSymbolBC((half,), (half,), (quarter,), (quarter,))
    assert th_det_even([half], [quarter], 3) == det_lu(build_th(even, 3))
    with pytest.raises(ZeroDivisionError):
        th_det_even([G(-1)], [G(0)], 2)
    with pytest.raises(SymbolError):
        th_det_even([half, half], [quarter, G(0)], 2)


def test_even_matches_perturbed_general():
    rng = make_rng(31)
    for k in (1, 2):
        A = [random_rational(rng, 0.8) for _ in range(k)]
        C = [random_rational(rng, 0.8) for _ in range(k)]
        even = RationalSymbolBC(tuple(A), tuple(A), tuple(C), tuple(C))
        for n in (1, 2, 3):
            near = th_det(perturb(even, F(1, 10**30)), n)
            assert abs(complex(near) - complex(th_det_even(A, C, n))) < 1e-20


def test_terms_breakdown(ex51):
    val, terms = th_det(ex51, 2, terms=True)
    assert [(t.S, t.T) for t in terms] == [((), ()), ((0,), (0,)), ((1,), (0,))]
    assert sum((t.value for t in terms), G(0)) == val
    assert [t.sign for t in terms] == [1, -1, -1]
    payload = json.loads(json.dumps(terms_to_json(terms)))
    assert payload[0] == {"S": [], "T": [], "value": "594/665"}


def test_zero_parameters():
    cases = [
        (["0"], ["1/3"], ["1/4"], ["1/5"]),
        (["1/2"], ["0"], ["1/4"], ["1/5"]),
        (["1/2"], ["1/3"], ["1/4"], ["0"]),
        (["0", "1/2"], ["1/3", "0"], ["1/4", "0"], ["0", "1/5"]),
    ]
    for params in cases:
        sym = RationalSymbolBC.make(*params)
        for n in (1, 2, 3):
            assert th_det(sym, n) == det_lu(build_th(sym, n))


def test_unequal_sizes():
    rng = make_rng(14)
    for sizes in itertools.product(range(3), repeat=4):
        sym = random_symbol(rng, sizes, exact=True)
        n0 = th_min_n(sym)
        for n in (n0, n0 + 1):
            assert th_det(sym, n) == det_lu(build_th(sym, n)), (sizes, n)


def test_below_validity():
    sym = RationalSymbolBC.make(["1/2"], ["1/3"], ["1/4", "1/7", "-1/6"], [])
    assert th_min_n(sym) == 3
    with pytest.raises(ValueError):
        th_det(sym, 2)
    # the bound is sharp: the raw sum misses the determinant at n = 2
    raw, _ = _th_sum(sym, 2, 1, 2, False)
    assert raw != det_lu(build_th(sym, 2))
    assert th_det(sym, 3) == det_lu(build_th(sym, 3))


def test_permutation_invariance():
    rng = make_rng(15)
    sym = random_symbol(rng, (2, 2, 2, 2), exact=True)
    ref = th_det(sym, 3)
    for name in "abcd":
        vals = getattr(sym, name)
        swapped = RationalSymbolBC(**{**{k: getattr(sym, k) for k in "abcd"}, name: vals[::-1]})
        assert th_det(swapped, 3) == ref


def test_continuity():
    sym = random_symbol(make_rng(16), (2, 2, 2, 2))
    moved = RationalSymbolBC(sym.a, sym.b, (sym.c[0] + 1e-8, sym.c[1]), sym.d)
    assert abs(th_det(moved, 4) - th_det(sym, 4)) < 1e-6


def test_errors(ex51):
    with pytest.raises(ValueError):
        th_det(ex51, 0)
    with pytest.raises(SymbolError, match="perturb"):
        th_det(RationalSymbolBC.make(["1/2"], ["1/2"], ["1/4"], ["1/5"]), 3)
    with pytest.raises(SymbolError):
        th_det(RationalSymbolBC.make(["1/2"], ["1/3"], ["5/4"], ["1/5"]), 3)
    # a = c puts a Z pole into the S = {a} terms
    with pytest.raises(TermError) as info:
        th_det(RationalSymbolBC.make(["1/4"], ["1/3"], ["1/4"], ["1/5"]), 2)
    assert info.value.S == (0,) and info.value.T == (0,)


def test_float_backend(ex51):
    assert rel_err(th_det(ex51.to_float(), 5), 51551341 / 57712500) < 1e-14


def test_perturb(ex51):
    p = perturb(ex51, "1/100")
    assert p.a == (ex51.a[0] + F(1, 100),) and p.d == (ex51.d[0] + F(4, 100),)
    q = perturb(ex51.to_float(), 1e-3)
    assert abs(q.c[0] - (0.25 + 3e-3)) < 1e-15
