from itertools import permutations

import pytest
import sympy as sp
from hypothesis import assume, given, settings, strategies as st
from sympy.combinatorics import Permutation

from flagforge.extalg import (
    MultiVector,
    PForm,
    contract,
    contract_chain,
    differential,
    exterior_derivative,
    lie_bracket,
    radial_field,
    sort_with_sign,
    volume_form,
    wedge,
)
from flagforge.examples import antisym_example, hamiltonian_fields
from flagforge.polyring import Poly, variables
from helpers import forms, homogeneous_polys, polys, to_sympy, vector_fields


def F(text, nvars=None, degree=None):
    return PForm.parse(text, nvars=nvars, degree=degree)


def test_sort_with_sign_against_permutation_parity():
    for idx in permutations(range(5)):
        sign, key = sort_with_sign(idx)
        assert key == tuple(range(5))
        assert sign == Permutation(list(idx)).signature()
    assert sort_with_sign((2, 2))[0] == 0


def test_wedge_examples():
    dz0, dz1 = F("dz0", 3), F("dz1", 3)
    assert dict(wedge(dz0, dz1).components()) == {(0, 1): Poly.constant(1, 3)}
    assert dict(wedge(dz1, dz0).components()) == {(0, 1): Poly.constant(-1, 3)}
    assert wedge(dz0, dz0).is_zero()
    assert wedge(dz0, dz0).degree == 2
    assert wedge(F("z1 dz0", 3), F("z0 dz1^dz2", 3)) == F("z0*z1 dz0^dz1^dz2", 3)


def test_wedge_degree_overflow_is_zero():
    w = wedge(volume_form(2), F("dz0", 2))
    assert w.is_zero()


def test_contract_radial_into_area():
    theta = radial_field(2)
    assert contract(theta, F("dz0^dz1")) == F("z0 dz1 - z1 dz0")


def test_disti_tangency_and_euler():
    for k in (1, 2, 3):
        omega, x = antisym_example(k)
        assert contract(radial_field(4), omega).is_zero()
        assert contract(x, omega).is_zero()
    omega, x = antisym_example(1)
    assert contract(x, omega).degree == 0


def test_exterior_derivative_examples():
    assert exterior_derivative(F("z1 dz0")) == F("-dz0^dz1")
    f = Poly.parse("z1^2+z2^2+z3^2+z4^2", 5)
    assert exterior_derivative(differential(f)).is_zero()
    z0 = Poly.var(0, 5)
    omega = differential(f).scale(z0) - PForm.dz(0, nvars=5).scale(f * 2)
    domega = exterior_derivative(omega)
    assert not domega.is_zero()
    # d(z0 dF - 2F dz0) = dz0^dF - 2 dF^dz0 = 3 dz0^dF
    assert domega == wedge(PForm.dz(0, nvars=5), differential(f)).scale(3)


def test_lie_bracket_examples():
    d0 = MultiVector.partial(0, 2)
    x = MultiVector.field([Poly.zero(2), Poly.var(0, 2)])
    assert lie_bracket(d0, x) == MultiVector.partial(1, 2)
    f = Poly.parse("z1^2+z2^2+z3^2+z4^2", 5)
    h = hamiltonian_fields(f, 4)
    assert lie_bracket(h[0].field, h[2].field).is_zero()


@given(homogeneous_polys(3, st.integers(0, 3)), st.integers(0, 2))
@settings(max_examples=40)
def test_radial_bracket_scales_by_degree_minus_one(p, i):
    e = p.homogeneous_degree()
    comps = [Poly.zero(3)] * 3
    comps[i] = p
    x = MultiVector.field(comps)
    assert lie_bracket(radial_field(3), x) == x.scale(e - 1)


def test_radial_and_volume():
    assert radial_field(2).coefficients() == list(variables(2))
    assert dict(volume_form(4).components()) == {(0, 1, 2, 3): Poly.constant(1, 4)}
    base = contract(radial_field(4), volume_form(4))
    comps = dict(base.components())
    assert len(comps) == 4
    z = variables(4)
    for i in range(4):
        missing = tuple(j for j in range(4) if j != i)
        assert comps[missing] == z[i].scale((-1) ** i)


def test_contract_chain_order():
    # i_X i_Y (dz0^dz1) with X = d0, Y = d1: i_Y first gives -dz0, then i_X gives -1
    x, y = MultiVector.partial(0, 2), MultiVector.partial(1, 2)
    assert contract_chain([x, y], F("dz0^dz1")).as_poly() == Poly.constant(-1, 2)
    assert contract(x, contract(y, F("dz0^dz1"))) == contract_chain([x, y], F("dz0^dz1"))


def test_multivector_contraction_matches_chain():
    x, y = MultiVector.field(list(variables(3))), MultiVector.partial(2, 3)
    a = F("z1 dz0^dz1^dz2")
    biv = wedge(x, y)
    # contraction by X^Y is i_X i_Y under the last-factor-first rule
    assert contract(biv, a) == contract_chain([x, y], a)


def test_alternating_validation():
    with pytest.raises(ValueError):
        PForm(3, 4)
    with pytest.raises(ValueError):
        PForm(3, 1, {(3,): Poly.constant(1, 3)})
    with pytest.raises(ValueError):
        wedge(F("dz0", 2), F("dz0", 3))


def _sympy_d(a: PForm):
    """Independent d: sum over components and partials with explicit sorting."""
    z = sp.symbols(f"z0:{a.nvars}")
    out = {}
    for idx, p in a.components():
        for j in range(a.nvars):
            if j in idx:
                continue
            key = tuple(sorted((j,) + idx))
            sign = Permutation([key.index(v) for v in (j,) + idx]).signature()
            out[key] = out.get(key, 0) + sign * sp.diff(to_sympy(p), z[j])
    return {k: sp.expand(v) for k, v in out.items() if sp.expand(v) != 0}


@given(forms(3, max_deg=3))
@settings(max_examples=40)
def test_exterior_derivative_matches_sympy(a):
    ours = {k: to_sympy(v) for k, v in exterior_derivative(a).components()}
    assert ours == _sympy_d(a)


@given(forms(4), forms(4), forms(4))
@settings(max_examples=40)
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(forms(4), forms(4))
@settings(max_examples=60)
def test_graded_anticommutativity(a, b):
    assert wedge(a, b) == wedge(b, a).scale((-1) ** (a.degree * b.degree))


@given(vector_fields(3), forms(3), forms(3))
@settings(max_examples=60)
def test_antiderivation(x, a, b):
    assume(a.degree + b.degree <= 3)
    lhs = contract(x, wedge(a, b))
    # i_X of a function is zero; drop those terms instead of tracking degree -1
    rhs = PForm.zero(3, max(a.degree + b.degree - 1, 0))
    if a.degree:
        rhs = rhs + wedge(contract(x, a), b)
    if b.degree:
        rhs = rhs + wedge(a, contract(x, b)).scale((-1) ** a.degree)
    assert lhs == rhs


@given(vector_fields(3), vector_fields(3), forms(3))
@settings(max_examples=60)
def test_contractions_anticommute(x, y, a):
    assert contract(x, contract(x, a)).is_zero()
    assert contract(x, contract(y, a)) == -contract(y, contract(x, a))


@given(forms(4, max_deg=3))
@settings(max_examples=60)
def test_d_squared_zero(a):
    assert exterior_derivative(exterior_derivative(a)).is_zero()


@given(forms(3), forms(3))
@settings(max_examples=40)
def test_d_is_graded_leibniz(a, b):
    lhs = exterior_derivative(wedge(a, b))
    rhs = wedge(exterior_derivative(a), b) + wedge(a, exterior_derivative(b)).scale((-1) ** a.degree)
    assert lhs == rhs


@given(vector_fields(3), vector_fields(3), vector_fields(3))
@settings(max_examples=40)
def test_jacobi(x, y, w):
    total = lie_bracket(x, lie_bracket(y, w)) + lie_bracket(y, lie_bracket(w, x)) + lie_bracket(w, lie_bracket(x, y))
    assert total.is_zero()


@given(vector_fields(3), vector_fields(3), polys(3))
@settings(max_examples=40)
def test_bracket_is_commutator_of_derivations(x, y, f):
    assert lie_bracket(x, y).apply(f) == x.apply(y.apply(f)) - y.apply(x.apply(f))


@given(homogeneous_polys(4, st.integers(0, 4)))
@settings(max_examples=60)
def test_euler_contraction(p):
    e = p.homogeneous_degree()
    assert contract(radial_field(4), differential(p)).as_poly() == p.scale(e)
