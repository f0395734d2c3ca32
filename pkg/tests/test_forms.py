import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scdgla.exactalg import NotDivisible
from scdgla.forms import (FormTensor, PolyForm, face, integrate, monomials, omega_d, omega_mul,
                          poly_divide, restrict_edge, whitney_form)
from scdgla.instances import heisenberg_like
from scdgla.lie import add_into

t, dt = PolyForm.t, PolyForm.dt


def test_product_examples():
    f = t(2, 1) * dt(2, 0)
    assert omega_mul(f, PolyForm.const(2)) == f
    assert omega_mul(dt(2, 1), dt(2, 1)) == PolyForm(2)
    a = t(2, 1) * dt(2, 1)
    b = t(2, 2) * dt(2, 2)
    assert omega_mul(a, b) == -omega_mul(b, a)
    assert omega_mul(a, b) == t(2, 1) * t(2, 2) * (dt(2, 1) * dt(2, 2))


def test_d_examples():
    assert not omega_d(PolyForm.const(2, 5))
    assert omega_d(t(2, 1) * t(2, 1)) == 2 * t(2, 1) * dt(2, 1)
    f = t(2, 1) * t(2, 2) * dt(2, 1)
    assert omega_d(f) == -(t(2, 1) * (dt(2, 1) * dt(2, 2)))


def test_face_examples():
    assert face(0, PolyForm.const(1, 3)) == PolyForm.const(0, 3)
    assert face(1, t(1, 1)) == PolyForm(0)
    assert face(0, t(1, 1)) == PolyForm.const(0, 1)


def test_integrals():
    assert integrate(dt(1, 1)) == 1
    assert integrate(dt(2, 1) * dt(2, 2)) == Fraction(1, 2)
    assert integrate(t(1, 1) * dt(1, 1)) == Fraction(1, 2)
    assert integrate(t(2, 1) * t(2, 2) * dt(2, 1) * dt(2, 2)) == Fraction(1, 24)
    with pytest.raises(ValueError):
        integrate(t(1, 0))


def test_whitney_forms():
    assert whitney_form(3, [0]) == t(3, 0)
    assert whitney_form(1, [0, 1]) == dt(1, 1)
    assert integrate(whitney_form(1, [0, 1])) == 1
    assert integrate(whitney_form(2, [0, 1, 2])) == 1
    with pytest.raises(ValueError):
        whitney_form(2, [1, 0])


def test_restrict_edge():
    s = t(1, 0)
    assert restrict_edge(t(2, 0)) == s
    assert restrict_edge(t(2, 0) * dt(2, 1)) == -(s * dt(1, 0))
    assert restrict_edge(t(2, 0) * t(2, 1) * dt(2, 0)) == s * (1 - s) * dt(1, 0)


def test_divide():
    s0 = t(2, 0)
    assert poly_divide(s0 * s0, s0) == s0
    assert poly_divide(s0 - s0 * s0, s0 * (1 - s0)) == PolyForm.const(2)
    with pytest.raises(NotDivisible):
        poly_divide(t(2, 1), s0)


def random_form(rng, n, cap=3):
    keys = monomials(n, cap)
    f = PolyForm(n)
    for key in rng.sample(keys, min(4, len(keys))):
        f = f + PolyForm(n, {key: Fraction(rng.randint(-3, 3))})
    return f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(1, 3))
def test_d_is_a_derivation_and_squares_to_zero(seed, n):
    rng = random.Random(seed)
    f, g = random_form(rng, n), random_form(rng, n)
    assert not omega_d(omega_d(f))
    for p in f.degrees() or {0}:
        fp = PolyForm(n, {k: c for k, c in f.terms.items() if bin(k[1]).count("1") == p})
        sign = -1 if p % 2 else 1
        assert omega_d(fp * g) == omega_d(fp) * g + sign * (fp * omega_d(g))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_simplicial_face_identity(seed, n):
    rng = random.Random(seed)
    f = random_form(rng, n)
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            assert face(i, face(j, f)) == face(j - 1, face(i, f))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_stokes_on_the_triangle(seed):
    rng = random.Random(seed)
    f = PolyForm(2)
    for key in monomials(2, 4, 1):
        f = f + PolyForm(2, {key: Fraction(rng.randint(-2, 2))})
    boundary = sum((-1) ** k * integrate(face(k, f)) for k in range(3))
    assert integrate(omega_d(f)) == boundary


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_faces_and_products_commute(seed):
    rng = random.Random(seed)
    f, g = random_form(rng, 2), random_form(rng, 2)
    for k in range(3):
        assert face(k, f * g) == face(k, f) * face(k, g)
        assert face(k, omega_d(f)) == omega_d(face(k, f))


def test_json_round_trip():
    f = t(2, 0) * dt(2, 1) + Fraction(1, 3) * t(2, 2)
    assert PolyForm.from_json(f.to_json()) == f


def test_form_tensor_differential():
    L = heisenberg_like()
    T = FormTensor(2, L, 4)
    for key in T.keys(0)[:40]:
        x = {key: 1}
        once = {}
        for k, c in x.items():
            add_into(once, T.d_key(k), c)
        twice = {}
        for k, c in once.items():
            add_into(twice, T.d_key(k), c)
        assert not any(twice.values())
