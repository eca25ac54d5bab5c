"""Text format for polynomials, forms and multivector fields.

Polynomials are signed sums of ``c*z0^a0*z1^a1`` terms.  Forms attach a basis
``dz0^dz2`` to each coefficient and multivectors a basis ``d/dz0^d/dz1``;
multi-term coefficients are written in parentheses::

    (z2^2 + z0*z3) dz1 - z1*z2 dz2
    -2*z2 d/dz1 + 2*z1 d/dz2

Whitespace or ``*`` between factors both mean multiplication.
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from flagforge.polyring import Poly

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<vec>d/dz(?P<vi>\d+))"
    r"|(?P<dif>dz(?P<di>\d+))"
    r"|(?P<var>z(?P<zi>\d+))"
    r"|(?P<num>\d+(?:/\d+)?)"
    r"|(?P<op>[-+*^()])"
    r")"
)


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> List[Tuple[str, object]]:
    text = text.replace("−", "-").replace("∧", "^")
    toks: List[Tuple[str, object]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at {text[pos:pos + 12]!r}")
        pos = m.end()
        if m.group("vec"):
            toks.append(("vec", int(m.group("vi"))))
        elif m.group("dif"):
            toks.append(("dif", int(m.group("di"))))
        elif m.group("var"):
            toks.append(("var", int(m.group("zi"))))
        elif m.group("num"):
            toks.append(("num", Fraction(m.group("num"))))
        else:
            toks.append(("op", m.group("op")))
    return toks


def _sort_sign(idx: List[int]) -> Tuple[int, Tuple[int, ...]]:
    if len(set(idx)) < len(idx):
        return 0, ()
    inversions = sum(1 for i in range(len(idx)) for j in range(i + 1, len(idx)) if idx[i] > idx[j])
    return (-1 if inversions % 2 else 1), tuple(sorted(idx))


# A parsed term is a coefficient in "symbolic" form: a list of monomial
# (coef, {var: exp}) pairs, plus a basis kind/index list.  Variables are
# resolved to Polys only once the variable count is known.
_Mono = Tuple[Fraction, Dict[int, int]]


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.max_var = -1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse_sum(self, allow_basis: bool):
        """Return a map from (kind, basis tuple) to a list of monomials."""
        out: Dict[Tuple[Optional[str], Tuple[int, ...]], List[_Mono]] = {}
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        while True:
            monos, bkind, basis = self.parse_term(allow_basis)
            s, key_basis = _sort_sign(basis)
            if s:
                bucket = out.setdefault((bkind, key_basis), [])
                bucket.extend((c * sign * s, e) for c, e in monos)
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
                continue
            break
        return out

    def parse_term(self, allow_basis: bool):
        monos: List[_Mono] = [(Fraction(1), {})]
        bkind: Optional[str] = None
        basis: List[int] = []
        nfactors = 0
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                if nfactors == 0:
                    raise ParseError("dangling '*'")
                self.take()
                kind, val = self.peek()
            if kind is None or (kind == "op" and val in "+-)^"):
                break
            if kind == "num":
                self.take()
                monos = [(c * val, e) for c, e in monos]
            elif kind == "var":
                self.take()
                self.max_var = max(self.max_var, val)
                k = self.parse_exponent()
                monos = [(c, _mono_mul(e, {val: k})) for c, e in monos]
            elif kind == "op" and val == "(":
                self.take()
                inner = self.parse_sum(allow_basis=False)
                self.expect_op(")")
                k = self.parse_exponent()
                inner_monos = inner.get((None, ()), [])
                factor: List[_Mono] = [(Fraction(1), {})]
                for _ in range(k):
                    factor = _expand(factor, inner_monos)
                monos = _expand(monos, factor)
            elif kind in ("dif", "vec"):
                if not allow_basis:
                    raise ParseError("basis element not allowed here")
                if bkind is not None:
                    raise ParseError("a term may carry only one basis element")
                bkind = kind
                basis = self.parse_basis(kind)
            else:
                raise ParseError(f"unexpected token {val!r}")
            nfactors += 1
        if nfactors == 0:
            raise ParseError("empty term")
        return monos, bkind, basis

    def parse_exponent(self) -> int:
        kind, val = self.peek()
        if kind == "op" and val == "^":
            nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else (None, None)
            if nxt[0] == "num":
                self.i += 2
                if nxt[1].denominator != 1:
                    raise ParseError("exponents must be integers")
                return int(nxt[1])
            raise ParseError("expected an integer exponent after '^'")
        return 1

    def parse_basis(self, kind: str) -> List[int]:
        idx = [self.take()[1]]
        while True:
            k, v = self.peek()
            if k == "op" and v == "^":
                nxt = self.toks[self.i + 1] if self.i + 1 < len(self.toks) else (None, None)
                if nxt[0] != kind:
                    raise ParseError("wedge factors must all be of the same kind")
                self.i += 2
                idx.append(nxt[1])
            else:
                return idx

    def done(self):
        if self.i != len(self.toks):
            raise ParseError(f"trailing input near token {self.toks[self.i][1]!r}")


def _mono_mul(a: Dict[int, int], b: Dict[int, int]) -> Dict[int, int]:
    out = dict(a)
    for v, k in b.items():
        out[v] = out.get(v, 0) + k
    return out


def _expand(a: List[_Mono], b: List[_Mono]) -> List[_Mono]:
    return [(ca * cb, _mono_mul(ea, eb)) for ca, ea in a for cb, eb in b]


def _to_poly(monos: List[_Mono], nvars: int) -> Poly:
    terms: Dict[Tuple[int, ...], Fraction] = {}
    for c, e in monos:
        exps = [0] * nvars
        for v, k in e.items():
            if v >= nvars:
                raise ParseError(f"variable z{v} out of range for {nvars} variables")
            exps[v] += k
        key = tuple(exps)
        terms[key] = terms.get(key, Fraction(0)) + c
    return Poly(nvars, terms)


def _parse(text: str, allow_basis: bool):
    if not text.strip():
        raise ParseError("empty expression")
    p = _Parser(text)
    data = p.parse_sum(allow_basis)
    p.done()
    max_index = p.max_var
    for kind, basis in data:
        if basis:
            max_index = max(max_index, max(basis))
    return data, max_index


def _resolve_nvars(nvars: Optional[int], max_index: int) -> int:
    if nvars is None:
        return max(max_index + 1, 1)
    if max_index >= nvars:
        raise ParseError(f"index {max_index} out of range for {nvars} variables")
    return nvars


def parse_poly(text: str, nvars: Optional[int] = None) -> Poly:
    data, max_index = _parse(text, allow_basis=False)
    nvars = _resolve_nvars(nvars, max_index)
    return _to_poly(data.get((None, ()), []), nvars)


def parse_components(text: str, kind: str, nvars: Optional[int] = None, degree: Optional[int] = None):
    """Parse form (``kind='dif'``) or multivector (``kind='vec'``) text.

    Returns ``(nvars, degree, {index tuple: Poly})``.  A bare ``0`` needs an
    explicit ``degree``.
    """
    data, max_index = _parse(text, allow_basis=True)
    nvars = _resolve_nvars(nvars, max_index)
    comps: Dict[Tuple[int, ...], Poly] = {}
    found_degree = None
    for (bkind, basis), monos in data.items():
        poly = _to_poly(monos, nvars)
        if bkind is None:
            # scalar terms: only meaningful for 0-forms or the literal zero
            if poly.is_zero():
                continue
            this_degree = 0
        else:
            if bkind != kind:
                raise ParseError("mixed form and vector-field basis elements")
            this_degree = len(basis)
        if found_degree is None:
            found_degree = this_degree
        elif found_degree != this_degree:
            raise ParseError("terms of different degrees in one expression")
        if not poly.is_zero():
            comps[basis] = comps.get(basis, Poly.zero(nvars)) + poly
    if found_degree is None:
        if degree is None:
            raise ParseError("cannot infer the degree of a zero expression")
        found_degree = degree
    if degree is not None and degree != found_degree:
        raise ParseError(f"expected degree {degree}, found {found_degree}")
    return nvars, found_degree, {k: v for k, v in comps.items() if not v.is_zero()}


# -- printing -----------------------------------------------------------------


def _format_coefficient(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _format_monomial(exps) -> str:
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"z{i}")
        elif e:
            parts.append(f"z{i}^{e}")
    return "*".join(parts)


def format_poly(p: Poly) -> str:
    pieces = []
    for exps, c in p.terms():
        mono = _format_monomial(exps)
        mag = abs(c)
        if not mono:
            body = _format_coefficient(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coefficient(mag)}*{mono}"
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append(("- " if c < 0 else "+ ") + body)
    return " ".join(pieces) if pieces else "0"


def format_components(components, kind: str) -> str:
    """Render sorted components with bases ``dz`` (``kind='dif'``) or ``d/dz``."""
    prefix = "dz" if kind == "dif" else "d/dz"
    pieces = []
    for basis in sorted(components):
        poly = components[basis]
        basis_text = "^".join(f"{prefix}{i}" for i in basis)
        if len(poly) == 1:
            (exps, c), = poly.terms()
            mono = _format_monomial(exps)
            mag = abs(c)
            coef = mono if mag == 1 else (f"{_format_coefficient(mag)}*{mono}" if mono else _format_coefficient(mag))
            neg = c < 0
            if not basis_text:
                body = coef or "1"
            elif coef:
                body = f"{coef} {basis_text}"
            else:
                body = basis_text
        else:
            neg = False
            body = f"({format_poly(poly)})" + (f" {basis_text}" if basis_text else "")
        if not pieces:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append(("- " if neg else "+ ") + body)
    return " ".join(pieces) if pieces else "0"
