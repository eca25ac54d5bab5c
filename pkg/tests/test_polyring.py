from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from flagforge.polyring import (
    ANY_DEGREE,
    ModPoly,
    Poly,
    evaluate,
    homogeneous_degree,
    is_prime,
    partial_derivative,
    poly_arith,
    reduce_mod_p,
    variables,
)
from helpers import from_sympy, homogeneous_polys, polys, to_sympy

z0, z1, z2, z3, z4 = variables(5)


def P(text, nvars=4):
    return Poly.parse(text, nvars)


def test_difference_of_squares():
    a, b = variables(2)
    assert poly_arith(a + b, a - b, "mul") == a**2 - b**2


def test_additive_inverse_is_empty():
    p = P("z0^2 - 3/2*z1*z3 + 4")
    s = poly_arith(p, poly_arith(p, None, "negate"), "add")
    assert s.is_zero()
    assert list(s.terms()) == []


def test_expansion_matches_hand_and_evaluation():
    a = P("z2^2 + z0*z3")
    b = P("z3")
    prod = poly_arith(a, b, "mul")
    assert prod == P("z2^2*z3 + z0*z3^2")
    for pt in [(1, 2, 3, 4), (Fraction(1, 2), -1, 5, Fraction(-2, 3)), (0, 7, -3, 1)]:
        assert prod.evaluate(pt) == a.evaluate(pt) * b.evaluate(pt)


def test_scale_and_sub():
    p = P("z0 + z1")
    assert poly_arith(p, None, "scale", Fraction(1, 2)) == P("1/2*z0 + 1/2*z1")
    assert poly_arith(p, P("z1"), "sub") == P("z0")
    with pytest.raises(ValueError):
        poly_arith(p, None, "divide")


def test_variable_count_mismatch():
    with pytest.raises(ValueError):
        Poly.var(0, 2) + Poly.var(0, 3)


def test_partials():
    assert partial_derivative(P("z3^2"), 3) == P("2*z3")
    assert partial_derivative(P("z1*z2"), 0).is_zero()
    f = Poly.parse("z1^2+z2^2+z3^2+z4^2", 5)
    assert partial_derivative(f, 1) == Poly.parse("2*z1", 5)


def test_homogeneous_degree():
    assert homogeneous_degree(P("z2^2 + z0*z3")) == 2
    assert homogeneous_degree(P("z0 + z1^2")) is None
    assert homogeneous_degree(Poly.zero(4)) is ANY_DEGREE
    assert P("5").homogeneous_degree() == 0


def test_evaluate_at_singular_points():
    assert evaluate(P("z2^2 + z0*z3"), (1, 0, 0, 0)) == 0
    assert evaluate(P("z3^2"), (0, 1, 0, 0)) == 0
    assert evaluate(P("z3^2"), (0, 0, 0, 2)) == 4


def test_evaluate_wrong_length():
    with pytest.raises(ValueError):
        P("z0").evaluate((1, 2))


def test_reduce_mod_p():
    assert reduce_mod_p(P("7*z0"), 7).is_zero()
    r = reduce_mod_p(P("1/2*z0 + 3*z1"), 5)
    assert isinstance(r, ModPoly)
    # 1/2 = 3 mod 5
    assert r.evaluate((1, 0, 0, 0)) == 3
    with pytest.raises(ValueError):
        reduce_mod_p(P("1/5*z0"), 5)
    with pytest.raises(ValueError):
        reduce_mod_p(P("z0"), 6)


def test_is_prime():
    assert [q for q in range(30) if is_prime(q)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_terms_in_descending_grlex_order():
    p = P("z3 + z0^2 + 1 + z0*z1 + z1^2")
    exps = [e for e, _ in p.terms()]
    assert exps == [(2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0), (0, 0, 0, 1), (0, 0, 0, 0)]


def test_no_zero_coefficients_stored():
    p = Poly(3, {(1, 0, 0): 0, (0, 1, 0): Fraction(2)})
    assert len(p) == 1
    with pytest.raises(ValueError):
        Poly(3, {(1, 0): 1})


def test_substitute_and_homogeneous_parts():
    p = P("z0*z1 + z1^2 + z2")
    assert p.substitute_var(0, 1) == P("z1 + z1^2 + z2")
    parts = p.homogeneous_parts()
    assert parts == {2: P("z0*z1 + z1^2"), 1: P("z2")}


@given(polys(), polys(), polys())
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a


@given(polys(4, 3), polys(4, 3))
@settings(max_examples=60)
def test_arithmetic_matches_sympy(a, b):
    assert a * b == from_sympy(to_sympy(a) * to_sympy(b), 4)
    assert a - b == from_sympy(to_sympy(a) - to_sympy(b), 4)


@given(polys(), polys(), st.lists(st.fractions(max_denominator=5), min_size=3, max_size=3))
@settings(max_examples=60)
def test_evaluate_is_homomorphism(a, b, x):
    assert (a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x)
    assert (a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x)


@given(polys(), polys(), st.integers(0, 2))
@settings(max_examples=60)
def test_leibniz(a, b, i):
    assert (a * b).partial(i) == a.partial(i) * b + a * b.partial(i)


@given(polys(4, 4))
@settings(max_examples=40)
def test_partial_matches_sympy(a):
    z = sp.symbols("z0:4")
    for i in range(4):
        assert a.partial(i) == from_sympy(sp.diff(to_sympy(a), z[i]), 4)


@given(homogeneous_polys(4, st.integers(0, 4)))
@settings(max_examples=60)
def test_euler_identity(p):
    e = p.homogeneous_degree()
    zs = variables(4)
    total = sum((zs[i] * p.partial(i) for i in range(4)), Poly.zero(4))
    assert total == p.scale(e)


@given(polys(4, 3))
@settings(max_examples=60)
def test_text_round_trip(p):
    assert Poly.parse(str(p), 4) == p
