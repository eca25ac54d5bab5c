"""Shared strategies and oracles for the test suite."""
from fractions import Fraction
from itertools import combinations

import sympy as sp
from hypothesis import strategies as st

from flagforge.extalg import MultiVector, PForm
from flagforge.polyring import Poly

COEFFS = st.one_of(
    st.integers(min_value=-5, max_value=5),
    st.fractions(min_value=-3, max_value=3, max_denominator=4),
)


@st.composite
def exponents(draw, nvars, max_deg, exact=False):
    budget = max_deg if exact else draw(st.integers(0, max_deg))
    exps = []
    for _ in range(nvars - 1):
        e = draw(st.integers(0, budget))
        exps.append(e)
        budget -= e
    exps.append(budget)
    return tuple(exps)


@st.composite
def polys(draw, nvars=3, max_deg=3, max_terms=4):
    terms = draw(st.dictionaries(exponents(nvars, max_deg), COEFFS, max_size=max_terms))
    return Poly(nvars, terms)


@st.composite
def homogeneous_polys(draw, nvars=3, degree=2, max_terms=4):
    deg = degree if isinstance(degree, int) else draw(degree)
    exps = exponents(nvars, deg, exact=True)
    terms = draw(st.dictionaries(exps, COEFFS, min_size=1, max_size=max_terms))
    p = Poly(nvars, terms)
    if p.is_zero():
        p = Poly.monomial(next(iter(terms)), 1)
    return p


@st.composite
def forms(draw, nvars=3, degree=None, max_deg=2):
    p = draw(st.integers(0, nvars)) if degree is None else degree
    comps = {}
    for idx in combinations(range(nvars), p):
        if draw(st.booleans()):
            comps[idx] = draw(polys(nvars, max_deg, 3))
    return PForm(nvars, p, comps)


@st.composite
def vector_fields(draw, nvars=3, max_deg=2):
    return MultiVector.field([draw(polys(nvars, max_deg, 3)) for _ in range(nvars)])


def symbols(nvars):
    return sp.symbols(f"z0:{nvars}")


def to_sympy(p: Poly):
    z = symbols(p.nvars)
    total = sp.Integer(0)
    for exps, c in p.terms():
        term = sp.Rational(c.numerator, c.denominator)
        for v, e in zip(z, exps):
            term *= v**e
        total += term
    return sp.expand(total)


def from_sympy(expr, nvars) -> Poly:
    z = symbols(nvars)
    poly = sp.Poly(sp.expand(expr), *z)
    return Poly(nvars, {tuple(m): Fraction(int(c.p), int(c.q)) for m, c in poly.terms()})
