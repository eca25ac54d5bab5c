"""Distributions on P^n presented by homogeneous polynomial data on C^{n+1}.

A codimension-q distribution of degree d is a q-form whose coefficients are
homogeneous of degree d+1 and which is killed by the radial field; its line
bundle is O(d+q+1).  The tangent presentation is a list of homogeneous vector
fields, with degree equal to the sum of the field degrees.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple, Union

from flagforge.extalg import MultiVector, PForm, contract, radial_field, wedge_all
from flagforge.polyring import ANY_DEGREE, Poly

log = logging.getLogger(__name__)


class DistributionError(ValueError):
    """Input does not describe a distribution on projective space."""


class NotHomogeneous(DistributionError):
    pass


class EulerRelationFails(DistributionError):
    """``i_theta(omega)`` is not zero; the residue is attached."""

    def __init__(self, residue: PForm):
        super().__init__(f"contraction with the radial field is nonzero: {residue}")
        self.residue = residue


class ZeroForm(DistributionError):
    pass


class RadialMultiple(DistributionError):
    pass


class TooManyFields(DistributionError):
    pass


@dataclass(frozen=True)
class ProjDistribution:
    n: int
    codim: int
    omega: PForm
    degree: int

    @property
    def twist(self) -> int:
        return self.degree + self.codim + 1

    @property
    def dim(self) -> int:
        return self.n - self.codim


@dataclass(frozen=True)
class FieldsDistribution:
    n: int
    generators: Tuple[MultiVector, ...]
    degrees: Tuple[int, ...] = field(default=())

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    @property
    def dim(self) -> int:
        return len(self.generators)


def descend_form(omega: PForm, n: int) -> ProjDistribution:
    if omega.nvars != n + 1:
        raise DistributionError(f"form lives on C^{omega.nvars}, expected C^{n + 1}")
    if not 1 <= omega.degree <= n - 1:
        raise DistributionError(f"codimension {omega.degree} outside 1..{n - 1}")
    if omega.is_zero():
        raise ZeroForm("the zero form defines no distribution")
    e = omega.coefficient_degree()
    if e is None:
        raise NotHomogeneous("coefficients are not homogeneous of a common degree")
    residue = contract(radial_field(n + 1), omega)
    if not residue.is_zero():
        raise EulerRelationFails(residue)
    # e >= 1 here: a nonzero constant-coefficient form never passes the Euler check
    return ProjDistribution(n=n, codim=omega.degree, omega=omega, degree=e - 1)


def field_degree(x: MultiVector) -> int:
    e = x.coefficient_degree()
    if e is None:
        raise NotHomogeneous(f"field {x} does not have homogeneous components of one degree")
    if e is ANY_DEGREE:
        raise RadialMultiple("the zero field is 0 times the radial field")
    return e


def is_radial_multiple(x: MultiVector) -> bool:
    """``X = p(z) * theta`` for some polynomial p, which happens iff X ^ theta = 0."""
    return wedge_all([x, radial_field(x.nvars)]).is_zero()


def fields_distribution(fields: Sequence[MultiVector], n: int) -> FieldsDistribution:
    fields = tuple(fields)
    if len(fields) >= n:
        raise TooManyFields(f"{len(fields)} fields on P^{n}; need fewer than {n}")
    degrees = []
    for x in fields:
        if x.nvars != n + 1 or x.degree != 1:
            raise DistributionError(f"expected vector fields on C^{n + 1}")
        degrees.append(field_degree(x))
        if is_radial_multiple(x):
            raise RadialMultiple(f"field {x} is a multiple of the radial field")
    return FieldsDistribution(n=n, generators=fields, degrees=tuple(degrees))


def det_tangent_twist(k: int, d: int) -> int:
    """Twist of the determinant of the tangent sheaf of a k-dimensional distribution of degree d."""
    return k - d


def kupka_canonical_twist(deg_g: int, dim_f: int) -> int:
    """Twist of the canonical sheaf of a Baum-Kupka component."""
    return deg_g - dim_f - 1


def generic_codim1_singular_count(n: int, k: int) -> int:
    """Number of singular points of a generic codimension-one distribution of degree k on P^n."""
    num = (k + 1) ** (n + 1) - (-1) ** (n + 1)
    if num % (k + 2):
        raise ValueError(f"({k}+1)^{n + 1} - (-1)^{n + 1} is not divisible by {k + 2}")
    return num // (k + 2)


def singular_ideal(dist: Union[ProjDistribution, FieldsDistribution, MultiVector, Sequence[MultiVector]]) -> List[Poly]:
    """Polynomials whose common projective zeros form the singular set.

    For a form these are its coefficients.  For fields X_1..X_k they are the
    components of X_1 ^ ... ^ X_k ^ theta.  Zero generators are dropped, so an
    empty list means the presentation is degenerate.
    """
    if isinstance(dist, ProjDistribution):
        gens = [p for _, p in dist.omega.components()]
    else:
        if isinstance(dist, FieldsDistribution):
            fields = list(dist.generators)
        elif isinstance(dist, MultiVector):
            fields = [dist]
        else:
            fields = list(dist)
        nvars = fields[0].nvars
        top = wedge_all(fields + [radial_field(nvars)])
        gens = [p for _, p in top.components()]
    if not gens:
        log.warning("degenerate presentation: every singular-ideal generator vanishes")
    return gens
