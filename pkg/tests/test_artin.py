from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.artin import (ArtinAlgebra, ArtinError, SmallExtension, make_dual_numbers, multiply,
                          small_extension_chain)


def test_dual_numbers_shapes():
    A = make_dual_numbers(2)
    assert A.r == 1 and A.mul({0: 1}, {0: 1}) == {}
    A = make_dual_numbers(3)
    assert A.r == 2
    assert A.mul({0: 1}, {0: 1}) == {1: 1}
    assert A.mul({0: 1}, {1: 1}) == {}
    assert make_dual_numbers(4).nilpotency_index == 4
    with pytest.raises(ArtinError):
        make_dual_numbers(1)


def test_multiply_examples():
    A = make_dual_numbers(3)
    assert multiply(A, [1, 0], [1, 0]) == [0, 1]
    assert multiply(A, [0, 1], [1, 0]) == [0, 0]
    assert multiply(A, [1, 1], [1, 0]) == [0, 1]


def test_rejects_bad_tables():
    with pytest.raises(ArtinError):
        ArtinAlgebra([])
    with pytest.raises(ArtinError):
        ArtinAlgebra(["a", "b"], {(0, 1): {1: 1}, (1, 0): {0: 1}})
    with pytest.raises(ArtinError):
        ArtinAlgebra(["a"], {(0, 0): {0: 1}})


def test_json_round_trip():
    A = make_dual_numbers(4)
    assert ArtinAlgebra.from_json(A.to_json()) == A
    two = ArtinAlgebra(["x", "y", "xy"], {(0, 1): {2: 1}, (1, 0): {2: 1}})
    assert ArtinAlgebra.from_json(two.to_json()) == two
    assert two.nilpotency_index == 3


def test_chain_examples():
    ch = small_extension_chain(3)
    assert len(ch) == 1 and ch[0].kernel_basis == ({1: 1},)
    ch = small_extension_chain(4)
    assert [e.kernel_basis for e in ch] == [({2: 1},), ({1: 1},)]
    assert [e.total.nilpotency_index for e in ch] == [4, 3]


def test_small_extension_rejects_big_kernel():
    B, A = make_dual_numbers(3), make_dual_numbers(2)
    with pytest.raises(ArtinError):
        SmallExtension(make_dual_numbers(4), A, ({0: 1}, {}, {}), ({1: 1}, {2: 1}))
    with pytest.raises(ArtinError):
        SmallExtension(B, A, ({}, {}), ({1: 1},))


vec = st.lists(st.fractions(max_denominator=5).map(lambda f: max(min(f, 9), -9)),
               min_size=3, max_size=3)


@settings(max_examples=40, deadline=None)
@given(vec, vec, vec)
def test_product_associative_commutative(u, v, w):
    A = make_dual_numbers(4)
    assert multiply(A, u, v) == multiply(A, v, u)
    assert multiply(A, multiply(A, u, v), w) == multiply(A, u, multiply(A, v, w))


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 6), st.data())
def test_lift_is_a_section(n, data):
    for ext in small_extension_chain(n):
        v = {i: Fraction(data.draw(st.integers(-5, 5))) for i in range(ext.base.r)}
        v = {i: c for i, c in v.items() if c}
        assert ext.project(ext.lift(v)) == v
