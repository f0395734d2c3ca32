import random

from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.artin import make_dual_numbers
from scdgla.dgla import is_mc
from scdgla.h1sc import check_n, tw02, z1_conditions
from scdgla.instances import BUNDLED, obstruction_dgla
from scdgla.lie import LieTensor
from scdgla.samples import (check_dgla, direct_sum, end_dgla, random_degree0_02, random_dgla,
                            random_mc, random_z1, rng_for, solve_by_order)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_random_dgla_shape(seed):
    L = random_dgla(random.Random(seed))
    assert check_dgla(L) is None
    assert all(-2 <= j <= 2 and n <= 4 for j, n in L.space.dims.items())


def test_end_dgla_and_sums():
    L = end_dgla({0: 1, 1: 1}, {0: {1: 1}})
    assert check_dgla(L) is None
    assert check_dgla(direct_sum(L, L)) is None
    assert direct_sum(L, L).dim == 2 * L.dim


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([2, 3, 4]))
def test_random_mc_is_mc(seed, n):
    rng = random.Random(seed)
    L = random_dgla(rng)
    A = make_dual_numbers(n)
    assert is_mc(L, A, random_mc(L, A, rng))


def test_solve_by_order_meets_obstruction():
    L = obstruction_dgla()
    A = make_dual_numbers(3)
    T = LieTensor(L, A)
    start = {"x": {(0, 0): 1}}
    out = solve_by_order(A, [("x", L, 1)], lambda v: {"mc": T.mc_defect(v["x"])},
                         rng_for(0), start=start)
    assert out is None


def test_random_z1_and_degree0(cech3):
    A = make_dual_numbers(3)
    rng = rng_for(9)
    z = random_z1(cech3, A, rng)
    assert z1_conditions(cech3, A, z.l, z.m)[0] is None and check_n(cech3, A, z)
    tw = tw02(cech3, A)
    assert tw.is_compatible(random_degree0_02(cech3, A, rng, tw.cap))


def test_seeded_reproducible():
    g = BUNDLED["pair"]()
    A = make_dual_numbers(3)
    assert random_z1(g, A, rng_for(3)) == random_z1(g, A, rng_for(3))
