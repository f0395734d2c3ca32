import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.artin import make_dual_numbers, small_extension_chain
from scdgla.dgla import (Dgla, DglaError, DglaMorphism, bch, gauge, gauge_equiv_decide,
                         gauge_group_law_check, irrelevant_stabilizer_membership, mc_defect,
                         obstruction_class, tangent_space, twisted)
from scdgla.graded import GradedMap, GradedSpace
from scdgla.instances import heisenberg_like, obstruction_dgla
from scdgla.lie import LieTensor, is_zero, sub
from scdgla.samples import abelian_dgla, change_basis, random_dgla, random_element, random_mc


def heis0():
    S = GradedSpace({0: 3})
    return Dgla(S, GradedMap(S, S, 1), [(0, 0, 0, 1, 2, 1)])


def test_mc_defect_examples():
    A = make_dual_numbers(3)
    L = obstruction_dgla()
    assert mc_defect(L, A, {}) == {}
    assert mc_defect(L, A, {(0, 0): 1}) == {(1, 1): 1}
    ab = abelian_dgla({1: 1, 2: 1}, {0: {1: 1}})
    assert mc_defect(ab, A, {(0, 0): 1}) == {(1, 0): 1}


def test_bch_examples():
    A = make_dual_numbers(3)
    L = heis0()
    a = {(0, 0): Fraction(1)}
    assert bch(L, A, a, {}) == a
    assert bch(L, A, a, {(1, 0): 1}) == {(0, 0): 1, (1, 0): 1, (2, 1): Fraction(1, 2)}
    ab = abelian_dgla({0: 2})
    assert bch(ab, A, {(0, 0): 1}, {(1, 0): 2, (0, 1): 1}) == {(0, 0): 1, (1, 0): 2, (0, 1): 1}


def test_gauge_examples():
    A = make_dual_numbers(3)
    ab = abelian_dgla({0: 1, 1: 1}, {0: {1: 1}})
    assert gauge(ab, A, {}, {(1, 0): 3}) == {(1, 0): 3}
    assert gauge(ab, A, {(0, 0): 1}, {(1, 0): 3}) == {(1, 0): 2}
    S = GradedSpace({0: 1, 1: 2})
    L = Dgla(S, GradedMap(S, S, 1), [(0, 0, 1, 0, 1, 1)])
    assert gauge(L, A, {(0, 0): 1}, {(1, 0): 1}) == {(1, 0): 1, (2, 1): 1}


def test_group_law_trivial_cases():
    A = make_dual_numbers(4)
    L = heisenberg_like()
    assert gauge_group_law_check(L, A, {}, {}, {(4, 0): 1})
    ab = abelian_dgla({0: 2, 1: 2}, {0: {2: 1}})
    assert gauge_group_law_check(ab, A, {(0, 0): 1}, {(1, 1): 2}, {(3, 0): 1})


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_group_law_random(seed):
    rng = random.Random(seed)
    L = random_dgla(rng)
    A = make_dual_numbers(rng.choice([2, 3, 4]))
    a, b = random_element(L, A, 0, rng), random_element(L, A, 0, rng)
    x = random_mc(L, A, rng)
    assert gauge_group_law_check(L, A, a, b, x)
    T = LieTensor(L, A)
    assert is_zero(T.mc_defect(gauge(L, A, a, x)))


def test_rejects_wrong_degree():
    L, A = heisenberg_like(), make_dual_numbers(2)
    with pytest.raises(ValueError):
        gauge(L, A, {(4, 0): 1}, {})


def test_validate_rejects_broken_jacobi_and_leibniz():
    S = GradedSpace({0: 1, 1: 1})
    with pytest.raises(DglaError):
        Dgla(S, GradedMap.from_sparse(S, S, 1, {0: {1: 1}}), [(0, 0, 0, 0, 0, 1)])
    S = GradedSpace({0: 2, 1: 1})
    with pytest.raises(DglaError):
        Dgla(S, GradedMap.from_sparse(S, S, 1, {0: {2: 1}}),
             [(0, 0, 0, 1, 1, 1), (0, 1, 1, 0, 0, 1)])


def test_json_round_trip():
    L = heisenberg_like()
    M = Dgla.from_json(L.to_json())
    assert M.bracket_entries() == L.bracket_entries()
    assert M.dmap.sparse() == L.dmap.sparse()


def test_stabilizer_membership():
    L, A = heisenberg_like(), make_dual_numbers(3)
    x = {(4, 0): 1}
    assert irrelevant_stabilizer_membership(L, A, x, {}) == {}
    h0 = {(0, 0): 2, (0, 1): -1}
    T = LieTensor(L, A)
    u = T.twisted_d(x, h0)
    h = irrelevant_stabilizer_membership(L, A, x, u)
    assert h is not None and T.twisted_d(x, h) == u
    Lq = heis0()
    assert irrelevant_stabilizer_membership(Lq, A, {}, {(0, 0): 1}) is None


def test_twisted_differential_squares_to_zero():
    L, A = heisenberg_like(), make_dual_numbers(3)
    tw = twisted(L, A, {(4, 0): 1, (5, 1): 1})
    assert tw.d(tw.d({(0, 0): 1})) == {}
    ab = abelian_dgla({0: 1, 1: 1}, {0: {1: 1}})
    assert twisted(ab, A, {(1, 0): 1}).d({(0, 0): 1}) == {(1, 0): 1}
    with pytest.raises(DglaError):
        twisted(obstruction_dgla(), A, {(0, 0): 1})


def test_obstruction_examples():
    ext = small_extension_chain(3)[0]
    cls, lifted = obstruction_class(obstruction_dgla(), ext, {(0, 0): 1})
    assert cls == {0: {1: 1}} and lifted is None
    L = obstruction_dgla(with_u=True)
    cls, lifted = obstruction_class(L, ext, {(0, 0): 1})
    assert cls == {}
    assert lifted == {(0, 0): 1, (1, 1): -1}
    assert is_zero(mc_defect(L, ext.total, lifted))


def test_obstruction_independent_of_lift():
    ext = small_extension_chain(3)[0]
    L = obstruction_dgla()
    base, _ = obstruction_class(L, ext, {(0, 0): 1})
    other, _ = obstruction_class(L, ext, {(0, 0): 1}, lift={(0, 0): 1, (0, 1): 5})
    assert base == other


def test_gauge_equiv_examples():
    L, A = heisenberg_like(), make_dual_numbers(3)
    x = {(4, 0): 1}
    assert gauge_equiv_decide(L, A, x, x) == (True, {})
    a = {(1, 0): 1, (2, 1): 2}
    y = gauge(L, A, a, x)
    ok, w = gauge_equiv_decide(L, A, x, y, want_witness=True)
    assert ok and w is not None and gauge(L, A, w, x) == y
    ok, _ = gauge_equiv_decide(L, A, x, {(5, 0): 1})
    assert not ok


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_first_order_decision_is_linear(seed):
    rng = random.Random(seed)
    ab = abelian_dgla({0: 2, 1: 2}, {0: {2: 1}})
    A = make_dual_numbers(2)
    x0 = random_element(ab, A, 1, rng)
    x1 = random_element(ab, A, 1, rng)
    ok, _ = gauge_equiv_decide(ab, A, x0, x1)
    diff = sub(x1, x0)
    assert ok == all(k[0] == 2 for k in diff)


def test_tangent_space():
    assert tangent_space(abelian_dgla({1: 1}))[0] == 1
    assert tangent_space(abelian_dgla({0: 1, 1: 1}, {0: {1: 1}}))[0] == 0
    assert tangent_space(heisenberg_like())[0] == 2


def test_morphism_checks():
    L = heisenberg_like()
    ident = DglaMorphism.from_sparse(L, L, {i: {i: 1} for i in range(L.dim)})
    assert ident.compose(ident).equals(ident)
    with pytest.raises(DglaError):
        DglaMorphism.from_sparse(L, L, {3: {3: 1}})


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_change_of_basis_preserves_cohomology(seed):
    rng = random.Random(seed)
    L = random_dgla(rng)
    M = change_basis(L, rng)
    M.validate()
    from scdgla.dgla import cohomology
    H, K = cohomology(L), cohomology(M)
    assert {j: H[j][0] for j in H} == {j: K[j][0] for j in K}
