import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.artin import make_dual_numbers
from scdgla.cech import (CoverData, CoverError, Product, Refinement, cech_scdgla, components,
                         constant_cover, global_sections_compare, local_equations,
                         nerve_cohomology, refinement_from_json, refinement_independence,
                         refinement_map, refinement_to_json, refinement_witness)
from scdgla.dgla import DglaMorphism, unit_basis
from scdgla.h1sc import Z1Element, z1_check, z1_conditions
from scdgla.instances import (augmented_broken, augmented_interval, cech3_quotient_cover,
                              heisenberg_like, refinement_3_to_2)
from scdgla.lie import LieTensor, add, is_zero, solve_combination, sub
from scdgla.samples import abelian_dgla, random_element, random_z1
from scdgla.tw import tot_cohomology


def ident(L):
    return DglaMorphism.from_sparse(L, L, {i: {i: 1} for i in range(L.dim)})


def test_single_set_cover():
    L = heisenberg_like()
    g = cech_scdgla(constant_cover([0], L))
    assert g.levels[0].dim == L.dim
    assert g.levels[1].dim == 0 and g.levels[2].dim == 0


def test_two_set_cover_cofaces():
    L = heisenberg_like()
    g = cech_scdgla(constant_cover([0, 1], L))
    P = g.products[0]
    assert g.levels[0].dim == 2 * L.dim and g.levels[1].dim == L.dim
    x = {(4, 0): Fraction(1)}
    on1, on0 = P.embed(x, 1), P.embed(x, 0)
    assert g.coface(0, 1)(on1) == x and g.coface(0, 1)(on0) == {}
    assert g.coface(1, 1)(on0) == x and g.coface(1, 1)(on1) == {}


def test_product_components():
    L = heisenberg_like()
    P = Product([L, L])
    x = {(1, 0): Fraction(2)}
    assert P.component(P.embed(x, 1), 1) == x
    assert P.component(P.embed(x, 1), 0) == {}


@pytest.mark.parametrize("depth,h1", [(3, 0), (2, 1)])
def test_nerve_cohomology_matches_tot(depth, h1):
    cover = constant_cover([0, 1, 2], abelian_dgla({0: 1}), depth)
    nerve = nerve_cohomology(cover)
    assert nerve.get(0) == 1 and nerve.get(1, 0) == h1
    H = tot_cohomology(cech_scdgla(cover))
    assert {j: H[j][0] for j in H if H[j][0]} == {k: v for k, v in nerve.items() if v}


def test_cover_errors():
    L = heisenberg_like()
    with pytest.raises(CoverError):
        CoverData([1, 0], {(0,): L}, {})
    with pytest.raises(CoverError):
        CoverData([0, 1], {(0, 1): L, (0,): L}, {})


def test_cover_json_round_trip():
    cov = cech3_quotient_cover()
    back = CoverData.from_json(cov.to_json())
    assert sorted(back.locals) == sorted(cov.locals)
    assert all(back.restrict(*k).equals(f) for k, f in cov.restrictions.items())


def test_local_equations_agree_with_z1(cech3):
    A = make_dual_numbers(3)
    rng = random.Random(4)
    for _ in range(3):
        z = random_z1(cech3, A, rng)
        eqs = local_equations(cech3, A, z.l, z.m, z.n)
        assert all(eqs.values()), eqs
    z = random_z1(cech3, A, rng)
    m = add(z.m, random_element(cech3.levels[1], A, 0, rng, power=1))
    failed, _ = z1_conditions(cech3, A, z.l, m)
    eqs = local_equations(cech3, A, z.l, m)
    assert (failed is None) == all(eqs.values())


def _identity_refinement(cover):
    maps = {(t, t): ident(L) for t, L in cover.locals.items()}
    return Refinement(cover, cover, {"id": {i: i for i in cover.indices}}, maps)


def test_identity_refinement(cech3):
    A = make_dual_numbers(3)
    r = _identity_refinement(cech3.cover)
    z = random_z1(cech3, A, random.Random(2))
    out = refinement_map(r, cech3, cech3, A, z, "id")
    assert out.l == z.l and is_zero(sub(out.m, z.m))
    zero = refinement_map(r, cech3, cech3, A, Z1Element({}, {}), "id")
    assert zero.l == {} and zero.m == {}
    a = refinement_witness(r, cech3, cech3, A, z, "id", "id")
    assert a == {}


def _ref_instances():
    r = refinement_3_to_2()
    return r, cech_scdgla(r.source), cech_scdgla(r.target)


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_refinement_independence_planted(seed):
    r, gs, gt = _ref_instances()
    A = make_dual_numbers(3)
    z = random_z1(gs, A, random.Random(seed))
    z0, z1, (a, b) = refinement_independence(r, gs, gt, A, z)
    z1_check(gt, A, z0.l, z0.m)
    z1_check(gt, A, z1.l, z1.m)


def test_refinement_json_round_trip():
    r = refinement_3_to_2()
    back = refinement_from_json(refinement_to_json(r))
    assert back.phis == r.phis and sorted(back.maps) == sorted(r.maps)


def test_abelian_refinement_witness_is_linear():
    L = abelian_dgla({-1: 1, 0: 1, 1: 2}, {0: {1: 1}})
    src, tgt = constant_cover([0, 1], L), constant_cover([0, 1, 2], L)
    maps = {}
    for k in range(3):
        for t in tgt.tuples(k):
            for s in [(0,), (1,), (0, 1)]:
                maps[(s, t)] = ident(L)
    r = Refinement(src, tgt, {"phi": {0: 0, 1: 0, 2: 1}, "psi": {0: 0, 1: 1, 2: 1}}, maps)
    gs, gt = cech_scdgla(src), cech_scdgla(tgt)
    A = make_dual_numbers(2)
    z = random_z1(gs, A, random.Random(6))
    z0, z1, (a, b) = refinement_independence(r, gs, gt, A, z)
    T0, T1 = LieTensor(gt.levels[0], A), LieTensor(gt.levels[1], A)
    assert is_zero(add(sub(z1.l, z0.l), T0.d(a)))
    rest = sub(add(sub(z1.m, z0.m), gt.coface(0, 1)(a)), gt.coface(1, 1)(a))
    cols = [T1.d(h) for h in unit_basis(gt.levels[1], A, -1)]
    assert is_zero(rest) or solve_combination(cols, rest) is not None


def test_global_sections():
    rep = global_sections_compare(augmented_interval())
    assert all(v["iso"] for v in rep.values())
    assert rep[0]["global"] == rep[0]["tot"]
    bad = global_sections_compare(augmented_broken())
    assert not bad[0]["iso"] or not bad[1]["iso"]


def test_components_round_trip(cech3):
    A = make_dual_numbers(2)
    x = random_element(cech3.levels[1], A, 0, random.Random(0))
    from scdgla.cech import assemble
    assert assemble(cech3, 1, components(cech3, 1, x)) == x


def test_single_set_global_sections():
    from scdgla.tw import AugmentedScDgla
    L = heisenberg_like()
    g = cech_scdgla(constant_cover([0], L))
    aug = DglaMorphism.from_sparse(L, g.levels[0], {i: {i: 1} for i in range(L.dim)})
    ag = AugmentedScDgla(L, g, aug)
    assert all(v["iso"] for v in global_sections_compare(ag, (-1, 0, 1)).values())
