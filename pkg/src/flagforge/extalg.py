"""Polynomial differential forms and multivector fields on C^{n+1}.

Both :class:`PForm` and :class:`MultiVector` store a map from strictly
increasing index tuples to nonzero :class:`~flagforge.polyring.Poly`
coefficients.  Signs coming from reordering a wedge of basis elements are
computed once, by sorting and counting transpositions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Type, TypeVar, Union

from flagforge.polyring import ANY_DEGREE, Homogeneity, Poly, partial_derivative

Index = Tuple[int, ...]
T = TypeVar("T", bound="Alternating")


def sort_with_sign(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sort ``idx`` and return ``(sign, sorted)``; sign is 0 on a repeated index."""
    idx = list(idx)
    if len(set(idx)) < len(idx):
        return 0, ()
    sign = 1
    # insertion sort, counting swaps
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


class Alternating:
    """Common storage for forms and multivectors; not used directly."""

    _kind = ""
    __slots__ = ("nvars", "degree", "_comps", "_hash")

    def __init__(self, nvars: int, degree: int, components: Optional[Mapping[Sequence[int], Poly]] = None):
        if not 0 <= degree <= nvars:
            raise ValueError(f"degree {degree} out of range for {nvars} variables")
        comps: Dict[Index, Poly] = {}
        for idx, poly in (components or {}).items():
            if not isinstance(poly, Poly):
                poly = Poly.constant(poly, nvars)
            if poly.nvars != nvars:
                raise ValueError(f"coefficient has {poly.nvars} variables, expected {nvars}")
            if len(idx) != degree:
                raise ValueError(f"index {tuple(idx)} does not have length {degree}")
            if any(not 0 <= i < nvars for i in idx):
                raise ValueError(f"index {tuple(idx)} out of range")
            sign, key = sort_with_sign(idx)
            if not sign or poly.is_zero():
                continue
            total = comps.get(key, Poly.zero(nvars)) + (poly if sign > 0 else -poly)
            if total.is_zero():
                comps.pop(key, None)
            else:
                comps[key] = total
        self.nvars = nvars
        self.degree = degree
        self._comps = comps
        self._hash = None

    @classmethod
    def _raw(cls: Type[T], nvars: int, degree: int, comps: Dict[Index, Poly]) -> T:
        obj = object.__new__(cls)
        obj.nvars = nvars
        obj.degree = degree
        obj._comps = {k: v for k, v in comps.items() if not v.is_zero()}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls: Type[T], nvars: int, degree: int) -> T:
        return cls(nvars, degree)

    @classmethod
    def parse(cls: Type[T], text: str, nvars: Optional[int] = None, degree: Optional[int] = None) -> T:
        from flagforge.textfmt import parse_components

        nvars, degree, comps = parse_components(text, cls._kind, nvars, degree)
        return cls(nvars, degree, comps)

    # -- inspection ---------------------------------------------------------

    def components(self) -> Iterator[Tuple[Index, Poly]]:
        for idx in sorted(self._comps):
            yield idx, self._comps[idx]

    def __getitem__(self, idx: Sequence[int]) -> Poly:
        sign, key = sort_with_sign(idx)
        c = self._comps.get(key)
        if c is None or not sign:
            return Poly.zero(self.nvars)
        return c if sign > 0 else -c

    def is_zero(self) -> bool:
        return not self._comps

    def __bool__(self) -> bool:
        return bool(self._comps)

    def coefficient_degree(self) -> Union[int, None, Homogeneity]:
        """Common homogeneous degree of all coefficients (see ``Poly.homogeneous_degree``)."""
        degs = set()
        for poly in self._comps.values():
            d = poly.homogeneous_degree()
            if d is None:
                return None
            degs.add(d)
        if not degs:
            return ANY_DEGREE
        return degs.pop() if len(degs) == 1 else None

    # -- linear structure ---------------------------------------------------

    def _check(self, other: "Alternating") -> None:
        if type(self) is not type(other):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self: T, other: T) -> T:
        self._check(other)
        out = dict(self._comps)
        for k, v in other._comps.items():
            out[k] = out[k] + v if k in out else v
        return type(self)._raw(self.nvars, self.degree, out)

    def __neg__(self: T) -> T:
        return type(self)._raw(self.nvars, self.degree, {k: -v for k, v in self._comps.items()})

    def __sub__(self: T, other: T) -> T:
        return self + (-other)

    def scale(self: T, c: Union[int, Fraction, Poly]) -> T:
        return type(self)._raw(self.nvars, self.degree, {k: v * c for k, v in self._comps.items()})

    def __mul__(self: T, c) -> T:
        if isinstance(c, Alternating):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Alternating):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.nvars == other.nvars
            and self.degree == other.degree
            and self._comps == other._comps
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.nvars, self.degree, frozenset(self._comps.items())))
        return self._hash

    def map_coefficients(self: T, fn) -> T:
        return type(self)._raw(self.nvars, self.degree, {k: fn(v) for k, v in self._comps.items()})

    def evaluate(self, point) -> Dict[Index, Fraction]:
        """Numeric coefficients at ``point``; zero entries dropped."""
        out = {}
        for idx, poly in self.components():
            v = poly.evaluate(point)
            if v:
                out[idx] = v
        return out

    def __str__(self) -> str:
        from flagforge.textfmt import format_components

        return format_components(self._comps, self._kind)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.nvars}, {self.degree}, {str(self)!r})"


class PForm(Alternating):
    """Polynomial differential ``degree``-form on C^nvars."""

    _kind = "dif"
    __slots__ = ()

    @classmethod
    def from_poly(cls, f: Poly) -> "PForm":
        return cls(f.nvars, 0, {(): f})

    @classmethod
    def dz(cls, *idx: int, nvars: int) -> "PForm":
        return cls(nvars, len(idx), {idx: Poly.constant(1, nvars)})

    @classmethod
    def one_form(cls, coeffs: Sequence[Poly]) -> "PForm":
        """``sum_i coeffs[i] dz_i``."""
        nvars = coeffs[0].nvars
        return cls(nvars, 1, {(i,): c for i, c in enumerate(coeffs)})

    def as_poly(self) -> Poly:
        if self.degree != 0:
            raise ValueError("only 0-forms convert to polynomials")
        return self._comps.get((), Poly.zero(self.nvars))


class MultiVector(Alternating):
    """Polynomial ``degree``-vector field; degree 1 is an ordinary vector field."""

    _kind = "vec"
    __slots__ = ()

    @classmethod
    def field(cls, coeffs: Sequence[Poly]) -> "MultiVector":
        """Vector field ``sum_i coeffs[i] d/dz_i``."""
        nvars = coeffs[0].nvars
        return cls(nvars, 1, {(i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def partial(cls, i: int, nvars: int) -> "MultiVector":
        return cls(nvars, 1, {(i,): Poly.constant(1, nvars)})

    def coefficients(self) -> List[Poly]:
        """Dense component list of a vector field."""
        if self.degree != 1:
            raise ValueError("dense coefficients only make sense for vector fields")
        return [self[(i,)] for i in range(self.nvars)]

    def apply(self, f: Poly) -> Poly:
        """Derivation ``X(f) = sum_j X_j df/dz_j``."""
        total = Poly.zero(self.nvars)
        for (j,), xj in self.components():
            total = total + xj * partial_derivative(f, j)
        return total


# -- operations -------------------------------------------------------------------


def wedge(a: T, b: T) -> T:
    """Exterior product; works for two forms or two multivectors."""
    if type(a) is not type(b):
        raise TypeError(f"cannot wedge {type(a).__name__} with {type(b).__name__}")
    if a.nvars != b.nvars:
        raise ValueError(f"variable-count mismatch: {a.nvars} vs {b.nvars}")
    deg = a.degree + b.degree
    if deg > a.nvars:
        return _overflow(a, deg)
    out: Dict[Index, Poly] = {}
    for ia, pa in a._comps.items():
        for ib, pb in b._comps.items():
            sign, key = sort_with_sign(ia + ib)
            if not sign:
                continue
            term = pa * pb
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return type(a)._raw(a.nvars, deg, out)


def _overflow(a: T, deg: int) -> T:
    # a wedge beyond top degree is zero; keep the requested degree recorded
    obj = object.__new__(type(a))
    obj.nvars = a.nvars
    obj.degree = deg
    obj._comps = {}
    obj._hash = None
    return obj


def wedge_all(items: Sequence[T]) -> T:
    result = items[0]
    for item in items[1:]:
        result = wedge(result, item)
    return result


def _contract_vector(v: MultiVector, a: PForm) -> PForm:
    out: Dict[Index, Poly] = {}
    for idx, coef in a._comps.items():
        for pos, j in enumerate(idx):
            xj = v._comps.get((j,))
            if xj is None:
                continue
            rest = idx[:pos] + idx[pos + 1:]
            term = xj * coef
            if pos % 2:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return PForm._raw(a.nvars, a.degree - 1, out)


def contract(v: MultiVector, a: PForm) -> PForm:
    """Interior product ``i_v a``.

    For a vector field this is the usual antiderivation.  A basis q-vector
    ``d/dz_{i1}^...^d/dz_{iq}`` acts as ``i_{i1} o ... o i_{iq}``: the last
    factor is applied first.
    """
    if not isinstance(v, MultiVector) or not isinstance(a, PForm):
        raise TypeError("contract takes a MultiVector and a PForm")
    if v.nvars != a.nvars:
        raise ValueError(f"variable-count mismatch: {v.nvars} vs {a.nvars}")
    if v.degree > a.degree:
        return PForm._raw(a.nvars, 0, {})
    if v.degree == 1:
        return _contract_vector(v, a)
    result = PForm.zero(a.nvars, a.degree - v.degree)
    for idx, coef in v._comps.items():
        part = a
        for j in reversed(idx):
            part = _contract_vector(MultiVector.partial(j, a.nvars), part)
        result = result + part.scale(coef)
    return result


def contract_chain(fields: Sequence[MultiVector], a: PForm) -> PForm:
    """``i_{X1} o i_{X2} o ... o i_{Xk} (a)``: the last field is contracted first."""
    for x in reversed(fields):
        a = contract(x, a)
    return a


def exterior_derivative(a: PForm) -> PForm:
    if a.degree >= a.nvars:
        return _overflow(a, a.degree + 1)
    out: Dict[Index, Poly] = {}
    for idx, coef in a._comps.items():
        for j in coef.variables():
            if j in idx:
                continue
            sign, key = sort_with_sign((j,) + idx)
            term = partial_derivative(coef, j)
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return PForm._raw(a.nvars, a.degree + 1, out)


def differential(f: Poly) -> PForm:
    return exterior_derivative(PForm.from_poly(f))


def lie_bracket(x: MultiVector, y: MultiVector) -> MultiVector:
    """``[X, Y]_i = sum_j X_j dY_i/dz_j - Y_j dX_i/dz_j``."""
    if x.degree != 1 or y.degree != 1:
        raise ValueError("the Lie bracket is defined here for vector fields only")
    if x.nvars != y.nvars:
        raise ValueError(f"variable-count mismatch: {x.nvars} vs {y.nvars}")
    comps = {}
    for i in range(x.nvars):
        comps[(i,)] = x.apply(y[(i,)]) - y.apply(x[(i,)])
    return MultiVector(x.nvars, 1, comps)


def radial_field(nvars: int) -> MultiVector:
    if nvars < 1:
        raise ValueError("nvars must be positive")
    return MultiVector(nvars, 1, {(i,): Poly.var(i, nvars) for i in range(nvars)})


def volume_form(nvars: int) -> PForm:
    if nvars < 1:
        raise ValueError("nvars must be positive")
    return PForm(nvars, nvars, {tuple(range(nvars)): Poly.constant(1, nvars)})


def basis_indices(nvars: int, degree: int) -> Iterable[Index]:
    return combinations(range(nvars), degree)
