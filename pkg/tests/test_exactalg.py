from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.exactalg import (CompositionNonzero, DegreeBudgetExceeded, LinSystem, Matrix, MPoly,
                             NotDivisible, PolyIdeal, Q, cohomology_dims, format_rational,
                             groebner, ideal_has_solution, normal_form, parse_rational,
                             solve_linear)
from scdgla.exactalg.groebner import find_rational_point, is_zero_dimensional


def lin(rows, rhs):
    return LinSystem(Matrix.from_rows(rows), tuple(Q(b) for b in rhs))


def test_rational_round_trip():
    assert parse_rational("-6/4") == Fraction(-3, 2)
    assert format_rational(Fraction(-3, 2)) == "-3/2"
    assert format_rational(4) == "4"


def test_solve_linear_identity():
    part, kern = solve_linear(lin([[1]], [0]))
    assert part == [0] and kern == []


def test_solve_linear_one_equation():
    part, kern = solve_linear(lin([[1, 1]], [1]))
    assert part == [1, 0]
    assert kern == [[-1, 1]] or kern == [[1, -1]]


def test_solve_linear_inconsistent():
    assert solve_linear(lin([[1], [1]], [0, 1])) is None


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_planted_solution_recovered(rows, x):
    b = [sum(a * v for a, v in zip(r, x)) for r in rows]
    sol = solve_linear(lin(rows, b))
    assert sol is not None
    part, kern = sol
    M = Matrix.from_rows(rows)
    assert M @ part == [Q(v) for v in b]
    for k in kern:
        assert not any(M @ k)


def test_cohomology_dims_examples():
    z = Matrix.from_rows([[0]])
    assert cohomology_dims(z, z) == (1, 0, 1)
    assert cohomology_dims(Matrix.from_rows([[1]]), z) == (1, 1, 0)
    assert cohomology_dims(Matrix.from_rows([[1], [1]]), Matrix.from_rows([[1, -1]])) == (1, 1, 0)
    with pytest.raises(CompositionNonzero):
        cohomology_dims(Matrix.from_rows([[1]]), Matrix.from_rows([[1]]))


def test_groebner_examples():
    x, = MPoly.gens(("x",))
    G = groebner(PolyIdeal(("x",), (x,), "lex"))
    assert G.generators == (x,)
    G = groebner(PolyIdeal(("x",), (x * x - 1, x - 1), "lex"))
    assert G.generators == (x - 1,)
    G = groebner(PolyIdeal(("x",), (x, x - 1), "lex"))
    assert G.generators == (MPoly.const(("x",), 1),)


def test_ideal_has_solution_examples():
    x, = MPoly.gens(("x",))
    assert not ideal_has_solution(PolyIdeal(("x",), (x, x - 1)))
    assert ideal_has_solution(PolyIdeal(("x",), (x * x + 1,)))
    assert ideal_has_solution(PolyIdeal(("x",), ()))


def _spoly_free(G):
    gens = list(G.generators)
    for f in gens:
        assert not normal_form(f, G)
    return True


polys = st.lists(st.tuples(st.integers(-2, 2), st.integers(0, 2), st.integers(0, 2)),
                 min_size=1, max_size=3)


def _mk(terms):
    x, y = MPoly.gens(("x", "y"))
    out = MPoly.const(("x", "y"), 0)
    for c, a, b in terms:
        out = out + c * x ** a * y ** b
    return out


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), st.sampled_from(["lex", "grevlex"]))
def test_groebner_generators_reduce_to_zero(gens, order):
    gens = [p for p in (_mk(t) for t in gens) if p]
    if not gens:
        return
    ideal = PolyIdeal(("x", "y"), tuple(gens), order)
    G = groebner(ideal)
    for f in gens:
        assert not normal_form(f, G)
    assert groebner(G).generators == G.generators


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=1, max_size=3), st.integers(1, 5), st.randoms())
def test_solvability_invariant_under_permutation_and_scaling(gens, c, r):
    gens = [p for p in (_mk(t) for t in gens) if p]
    if not gens:
        return
    base = ideal_has_solution(PolyIdeal(("x", "y"), tuple(gens)))
    shuffled = list(gens)
    r.shuffle(shuffled)
    shuffled[0] = shuffled[0] * c
    assert ideal_has_solution(PolyIdeal(("x", "y"), tuple(shuffled))) == base


def test_budget_guard():
    x, y, z = MPoly.gens(("x", "y", "z"))
    ideal = PolyIdeal(("x", "y", "z"), (x ** 3 - y * z, y ** 3 - x * z, z ** 3 - x * y, x * y * z - 1))
    with pytest.raises(DegreeBudgetExceeded):
        groebner(ideal, budget=2)


def test_rational_point_and_zero_dimensionality():
    x, y = MPoly.gens(("x", "y"))
    G = groebner(PolyIdeal(("x", "y"), (x * x - 4, y - x - 1)))
    assert is_zero_dimensional(G)
    pt = find_rational_point(G)
    assert pt is not None
    assert pt[0] ** 2 == 4 and pt[1] == pt[0] + 1


def test_exact_division():
    x, y = MPoly.gens(("x", "y"))
    f = (x - x * x) * (y + 2)
    assert f.exact_div(x - x * x) == y + 2
    with pytest.raises(NotDivisible):
        (f + 1).exact_div(x - x * x)
