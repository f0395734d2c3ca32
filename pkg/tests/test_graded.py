from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.artin import make_dual_numbers
from scdgla.graded import (GradedElement, GradedMap, GradedSpace, NotADifferential,
                           complex_cohomology, euler_characteristic, tensor_artin)


def test_zero_differential():
    S = GradedSpace({0: 2})
    H = complex_cohomology(S, GradedMap(S, S, 1))
    assert H[0][0] == 2


def test_identity_is_exact():
    S = GradedSpace({0: 1, 1: 1})
    d = GradedMap.from_sparse(S, S, 1, {0: {1: 1}})
    H = complex_cohomology(S, d)
    assert H[0][0] == 0 and H[1][0] == 0


def test_three_term_example():
    S = GradedSpace({-1: 1, 0: 2, 1: 1})
    d = GradedMap.from_sparse(S, S, 1, {0: {1: 1}, 2: {3: 1}})
    H = complex_cohomology(S, d)
    assert [H[j][0] for j in (-1, 0, 1)] == [0, 0, 0]


def test_rejects_non_differential():
    S = GradedSpace({0: 1, 1: 1, 2: 1})
    d = GradedMap.from_sparse(S, S, 1, {0: {1: 1}, 1: {2: 1}})
    with pytest.raises(NotADifferential):
        complex_cohomology(S, d)


def test_tensor_artin():
    assert tensor_artin(GradedSpace({0: 3}), make_dual_numbers(2)).dims == {0: 3}
    assert tensor_artin(GradedSpace({0: 1, 1: 2}), make_dual_numbers(3)).dims == {0: 2, 1: 4}
    with pytest.raises(ValueError):
        tensor_artin(GradedSpace({0: 1}), None)


def test_space_and_map_json():
    S = GradedSpace({-1: 1, 0: 2}, {-1: ["u"], 0: ["a", "b"]})
    assert GradedSpace.from_json(S.to_json()) == S
    d = GradedMap.from_sparse(S, S, 1, {0: {1: 2, 2: Fraction(1, 3)}})
    assert GradedMap.from_json(S, S, d.to_json()).sparse() == d.sparse()


def test_element_round_trip():
    S = GradedSpace({0: 2, 1: 1})
    x = GradedElement.from_sparse(S, {(0, 0): Fraction(1), (2, 0): Fraction(-2)})
    assert x.to_sparse() == {(0, 0): 1, (2, 0): -2}
    assert not x.is_homogeneous()
    assert GradedElement.from_json(S, x.to_json()).to_sparse() == x.to_sparse()
    A = make_dual_numbers(3)
    y = GradedElement.from_sparse(S, {(1, 1): Fraction(3)}, A)
    assert y.degrees() == [0]
    assert GradedElement.from_json(S, y.to_json(), A).to_sparse() == {(1, 1): 3}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_euler_characteristic_matches_cohomology(a, b, c, data):
    dims = {0: a, 1: b, 2: c}
    S = GradedSpace({j: n for j, n in dims.items() if n})
    # d = (second map) built as a composite-zero pair: choose d0 of rank <= min, d1 = 0 on its image
    r = data.draw(st.integers(0, min(a, b)))
    sp = {S.offset[0] + i: {S.offset[1] + i: 1} for i in range(r)} if a and b else {}
    s = data.draw(st.integers(0, min(b - r, c))) if b and c else 0
    for i in range(s):
        sp.setdefault(S.offset[1] + r + i, {})[S.offset[2] + i] = 1
    d = GradedMap.from_sparse(S, S, 1, sp)
    H = complex_cohomology(S, d)
    hdims = {j: H[j][0] for j in H}
    assert euler_characteristic(hdims) == euler_characteristic(S.dims)
    for j, (n, reps) in H.items():
        assert len(reps) == n
        for z in reps:
            img = {}
            for i, v in z.items():
                for k, w in sp.get(i, {}).items():
                    img[k] = img.get(k, 0) + v * w
            assert not any(img.values())
