from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from toephank.scalars import GaussianRational as G
from toephank.zfun import ZPoleError, pow_prod, surgery, z, z_composite, z_o, z_o_with, z_properties, z_s

F = Fraction
small = st.builds(
    G,
    st.fractions(min_value=-F(3, 4), max_value=F(3, 4), max_denominator=9),
    st.fractions(min_value=-F(3, 4), max_value=F(3, 4), max_denominator=9),
)
nonzero = small.filter(bool)


def test_z_examples():
    assert z([], [G(F(1, 3))]) == 1
    assert z([G(F(1, 2))], [G(F(1, 3))]) == F(6, 5)


def test_z_composite_examples():
    assert z_composite([], [], [], []) == 1
    A, B, C, D = ([G(F(1, p))] for p in (2, 3, 4, 5))
    assert z_composite(A, B, C, D) == F(99, 95)


def test_z_o_z_s():
    assert z_o([G(F(1, 7))]) == 1
    assert z_s([G(F(1, 2))]) == F(4, 3)
    A = [G(F(1, 2)), G(F(1, 3))]
    C = [G(F(1, 5))]
    assert z_o_with(A, C) == z_o(A) * z_s(C) / z(A, C)


def test_z_pole():
    with pytest.raises(ZPoleError, match="Z pole"):
        z([G(2)], [G(F(1, 2))])
    with pytest.raises(ZPoleError):
        z([0.5], [2.0 + 1e-15])
    with pytest.raises(ZPoleError):
        z_s([G(1)])


def test_surgery():
    A = [G(F(1, 2)), G(F(1, 3))]
    assert surgery(A, [], []) == A
    assert surgery(A, [0], [G(F(1, 5))]) == [G(F(1, 3)), G(5)]
    assert len(surgery(A, [1], [G(2), G(3)])) == len(A) - 1 + 2
    with pytest.raises(ZeroDivisionError):
        surgery(A, [], [G(0)])
    with pytest.raises(IndexError):
        surgery(A, [2], [])


def test_pow_prod():
    assert pow_prod([], 4) == 1
    assert pow_prod([G(F(1, 2)), G(F(1, 3))], 2) == F(1, 36)
    assert pow_prod([G(F(1, 2))], 0) == 1
    with pytest.raises(ZeroDivisionError):
        pow_prod([G(0)], -1)


@settings(max_examples=60)
@given(st.lists(small, max_size=3), st.lists(small, max_size=3), st.permutations(range(3)))
def test_permutation_invariance(A, B, perm):
    A3 = (A + [G(0)] * 3)[:3]
    P = [A3[i] for i in perm]
    assert z(A3, B) == z(P, B)
    assert z_o(A3) == z_o(P)
    assert z_s(A3) == z_s(P)
    assert z_composite(A3, B, B, A3) == z_composite(P, B, B, P)


@settings(max_examples=60)
@given(st.lists(nonzero, max_size=3), st.lists(nonzero, max_size=3), st.lists(small, max_size=3))
def test_z_properties_exact(A, B, C):
    try:
        props = z_properties(A, B, C)
    except ZeroDivisionError:
        return
    for label, vals in props.items():
        assert all(v == vals[0] for v in vals), label
