"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Poly` lives in ``Q[z0, ..., z_{nvars-1}]``.  Terms are stored as a
map from dense exponent tuples to nonzero :class:`fractions.Fraction`
coefficients, and every public iteration walks them in descending graded
lexicographic order so that printing and serialization are deterministic.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]


class Homogeneity(enum.Enum):
    """Marker returned by :meth:`Poly.homogeneous_degree` for the zero polynomial."""

    ANY = "any"


ANY_DEGREE = Homogeneity.ANY


def grlex_key(exps: Exponent) -> Tuple[int, Exponent]:
    return (sum(exps), exps)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficient must be rational, got {type(c).__name__}")


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q % 2 == 0:
        return q == 2
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


class Poly:
    """Immutable polynomial over the rationals.

    >>> z0, z1 = Poly.var(0, 2), Poly.var(1, 2)
    >>> str((z0 + z1) * (z0 - z1))
    'z0^2 - z1^2'
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        if nvars < 1:
            raise ValueError("a polynomial needs at least one variable")
        clean: Dict[Exponent, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} has length {len(exps)}, expected {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in {exps}")
            c = _as_fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
                if not clean[exps]:
                    del clean[exps]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: Dict[Exponent, Fraction]) -> "Poly":
        # caller guarantees normalized terms
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def constant(cls, c: Scalar, nvars: int) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable z{i} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Scalar = 1) -> "Poly":
        return cls(len(exps), {tuple(exps): c})

    @classmethod
    def parse(cls, text: str, nvars: Optional[int] = None) -> "Poly":
        from flagforge.textfmt import parse_poly

        return parse_poly(text, nvars)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> Iterator[Tuple[Exponent, Fraction]]:
        """Yield ``(exponent, coefficient)`` in descending grlex order."""
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        """Largest total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def homogeneous_degree(self) -> Union[int, None, Homogeneity]:
        """Common total degree of all terms.

        Returns ``None`` for a non-homogeneous polynomial and :data:`ANY_DEGREE`
        for zero.
        """
        degs = {sum(e) for e in self._terms}
        if not degs:
            return ANY_DEGREE
        if len(degs) > 1:
            return None
        return degs.pop()

    def homogeneous_parts(self) -> Dict[int, "Poly"]:
        parts: Dict[int, Dict[Exponent, Fraction]] = {}
        for exps, c in self._terms.items():
            parts.setdefault(sum(exps), {})[exps] = c
        return {d: Poly._raw(self.nvars, t) for d, t in parts.items()}

    def variables(self) -> Tuple[int, ...]:
        """Indices of the variables that actually occur."""
        used = set()
        for exps in self._terms:
            used.update(i for i, e in enumerate(exps) if e)
        return tuple(sorted(used))

    def leading_coefficient(self) -> Fraction:
        for _, c in self.terms():
            return c
        return Fraction(0)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> Optional["Poly"]:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(other, self.nvars)
        return None

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for exps, c in other._terms.items():
            s = out.get(exps, 0) + c
            if s:
                out[exps] = s
            else:
                out.pop(exps, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c: Scalar) -> "Poly":
        c = _as_fraction(c)
        if not c:
            return Poly._raw(self.nvars, {})
        return Poly._raw(self.nvars, {e: v * c for e, v in self._terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return Poly._raw(self.nvars, out)

    def __rmul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.constant(other, self.nvars)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -------------------------------------------

    def partial(self, i: int) -> "Poly":
        return partial_derivative(self, i)

    def evaluate(self, point: Sequence[Scalar]) -> Fraction:
        return evaluate(self, point)

    def substitute_var(self, i: int, value: Scalar) -> "Poly":
        """Set ``z_i = value``; the variable count is unchanged."""
        value = _as_fraction(value)
        out: Dict[Exponent, Fraction] = {}
        for exps, c in self._terms.items():
            e = list(exps)
            k = e[i]
            e[i] = 0
            key = tuple(e)
            s = out.get(key, 0) + c * value**k
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Poly._raw(self.nvars, out)

    def __str__(self) -> str:
        from flagforge.textfmt import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {str(self)!r})"


def poly_arith(a: Poly, b: Optional[Poly], op: str, scalar: Scalar = 1) -> Poly:
    """Dispatch one of ``add``, ``sub``, ``mul``, ``negate`` or ``scale``."""
    if op == "negate":
        return -a
    if op == "scale":
        return a.scale(scalar)
    if b is None:
        raise ValueError(f"operation {op!r} needs two operands")
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def partial_derivative(p: Poly, i: int) -> Poly:
    if not 0 <= i < p.nvars:
        raise IndexError(f"coordinate index {i} out of range for {p.nvars} variables")
    out: Dict[Exponent, Fraction] = {}
    for exps, c in p._terms.items():
        k = exps[i]
        if k:
            e = exps[:i] + (k - 1,) + exps[i + 1:]
            out[e] = c * k
    return Poly._raw(p.nvars, out)


def evaluate(p: Poly, point: Sequence[Scalar]) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {p.nvars}")
    xs = [_as_fraction(x) for x in point]
    total = Fraction(0)
    for exps, c in p._terms.items():
        v = c
        for x, e in zip(xs, exps):
            if e:
                v *= x**e
                if not v:
                    break
        total += v
    return total


def homogeneous_degree(p: Poly) -> Union[int, None, Homogeneity]:
    return p.homogeneous_degree()


class ModPoly:
    """Image of a :class:`Poly` in ``F_q[z0, ..., z_{nvars-1}]``."""

    __slots__ = ("nvars", "prime", "_terms")

    def __init__(self, nvars: int, prime: int, terms: Mapping[Exponent, int]):
        self.nvars = nvars
        self.prime = prime
        self._terms = {e: c % prime for e, c in terms.items() if c % prime}

    def terms(self) -> Iterator[Tuple[Exponent, int]]:
        for exps in sorted(self._terms, key=grlex_key, reverse=True):
            yield exps, self._terms[exps]

    def is_zero(self) -> bool:
        return not self._terms

    def evaluate(self, point: Sequence[int]) -> int:
        q = self.prime
        total = 0
        for exps, c in self._terms.items():
            v = c
            for x, e in zip(point, exps):
                if e:
                    v = v * pow(x, e, q) % q
                    if not v:
                        break
            total += v
        return total % q

    def scale(self, c: int) -> "ModPoly":
        return ModPoly(self.nvars, self.prime, {e: v * c for e, v in self._terms.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModPoly):
            return NotImplemented
        return (self.nvars, self.prime, self._terms) == (other.nvars, other.prime, other._terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{e}" for e, c in self.terms()) or "0"
        return f"ModPoly(mod {self.prime}: {body})"


def reduce_mod_p(p: Poly, prime: int) -> ModPoly:
    """Reduce coefficients modulo ``prime``; fails if a denominator is divisible by it."""
    if not is_prime(prime):
        raise ValueError(f"modulus {prime} is not prime")
    out = {}
    for exps, c in p._terms.items():
        if c.denominator % prime == 0:
            raise ValueError(f"coefficient {c} has a denominator divisible by {prime}")
        out[exps] = c.numerator * pow(c.denominator, -1, prime)
    return ModPoly(p.nvars, prime, out)


def variables(nvars: int) -> Tuple[Poly, ...]:
    """Convenience: the coordinate functions ``z0, ..., z_{nvars-1}``."""
    return tuple(Poly.var(i, nvars) for i in range(nvars))


def poly_sum(polys: Iterable[Poly], nvars: int) -> Poly:
    total = Poly.zero(nvars)
    for p in polys:
        total = total + p
    return total
