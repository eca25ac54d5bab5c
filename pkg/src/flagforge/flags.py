"""Flag verification: tangency, integrability, the contraction chain, division
of forms, and the degree inequalities between members of a flag."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple, Union

from flagforge.bott import theorem1_audit
from flagforge.extalg import (
    MultiVector,
    PForm,
    contract,
    contract_chain,
    exterior_derivative,
    lie_bracket,
    radial_field,
    sort_with_sign,
    volume_form,
    wedge,
    wedge_all,
)
from flagforge.linsolve import solve_exact
from flagforge.polyring import Poly, grlex_key
from flagforge.projective import FieldsDistribution, ProjDistribution

HOLDS = "holds"
SHARP = "sharp"
VIOLATED = "violated"
NOT_APPLICABLE = "n/a"


class DegreeBoundViolation(ValueError):
    """Division would need a form of negative coefficient degree."""


def contraction_chain(fields: Sequence[MultiVector], n: int) -> PForm:
    """``i_{X1} ... i_{Xk} i_theta dV`` on C^{n+1}, an (n-k)-form."""
    fields = list(fields)
    if len(fields) >= n:
        raise ValueError(f"{len(fields)} fields on P^{n}; need fewer than {n}")
    for x in fields:
        if x.nvars != n + 1:
            raise ValueError(f"field on C^{x.nvars}, expected C^{n + 1}")
    base = contract(radial_field(n + 1), volume_form(n + 1))
    return contract_chain(fields, base)


def monomials(nvars: int, degree: int) -> List[Tuple[int, ...]]:
    """Exponent vectors of total ``degree``, in descending grlex order."""
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        exps = [0] * nvars
        for i in combo:
            exps[i] += 1
        out.append(tuple(exps))
    out.sort(key=grlex_key, reverse=True)
    return out


def divide_by_form(theta: PForm, omega: PForm) -> Optional[PForm]:
    """Find eta with ``omega ^ eta == theta``, or ``None`` if there is none.

    The unknown coefficients of eta range over all monomials of degree
    ``deg(theta) - deg(omega)``; the resulting linear system is solved exactly
    and one particular solution is returned.
    """
    if theta.nvars != omega.nvars:
        raise ValueError(f"variable-count mismatch: {theta.nvars} vs {omega.nvars}")
    if theta.degree < omega.degree:
        raise ValueError("theta must have form degree at least that of omega")
    if omega.is_zero():
        raise ValueError("cannot divide by the zero form")
    nvars = theta.nvars
    p_eta = theta.degree - omega.degree
    if theta.is_zero():
        return PForm.zero(nvars, p_eta)
    deg_theta = theta.coefficient_degree()
    deg_omega = omega.coefficient_degree()
    if deg_theta is None or deg_omega is None:
        raise ValueError("both forms must have homogeneous coefficients")
    e = deg_theta - deg_omega
    if e < 0:
        raise DegreeBoundViolation(
            f"eta would need coefficient degree {e}: deg(theta)={deg_theta} < deg(omega)={deg_omega}"
        )

    columns = [(idx, mono) for idx in combinations(range(nvars), p_eta) for mono in monomials(nvars, e)]
    row_of: Dict[Tuple, int] = {}
    rows: List[Dict[int, Fraction]] = []

    def row(key) -> Dict[int, Fraction]:
        if key not in row_of:
            row_of[key] = len(rows)
            rows.append({})
        return rows[row_of[key]]

    for col, (idx, mono) in enumerate(columns):
        for oidx, opoly in omega.components():
            sign, key = sort_with_sign(oidx + idx)
            if not sign:
                continue
            for exps, c in opoly.terms():
                target = tuple(a + b for a, b in zip(exps, mono))
                r = row((key, target))
                r[col] = r.get(col, 0) + sign * c
    rhs = [Fraction(0)] * len(rows)
    for tidx, tpoly in theta.components():
        for exps, c in tpoly.terms():
            key = (tidx, exps)
            if key not in row_of:
                # theta has a term that no omega ^ eta can produce
                return None
            rhs[row_of[key]] = c

    solution = solve_exact(rows, rhs, len(columns))
    if solution is None:
        return None
    comps: Dict[Tuple[int, ...], Dict[Tuple[int, ...], Fraction]] = {}
    for (idx, mono), value in zip(columns, solution):
        if value:
            comps.setdefault(idx, {})[mono] = value
    eta = PForm(nvars, p_eta, {idx: Poly(nvars, terms) for idx, terms in comps.items()})
    if wedge(omega, eta) != theta:
        raise AssertionError("exact solve returned a non-solution")
    return eta


# -- flag verification ---------------------------------------------------------------


def integrable_codim1(omega: PForm) -> bool:
    """Frobenius condition ``omega ^ d(omega) = 0`` for a 1-form."""
    return wedge(omega, exterior_derivative(omega)).is_zero()


def bracket_closed(fields: Sequence[MultiVector]) -> bool:
    """Every ``[X_i, X_j]`` lies in the span of the fields and the radial field."""
    fields = list(fields)
    if len(fields) < 2:
        return True
    top = fields + [radial_field(fields[0].nvars)]
    for i, j in combinations(range(len(fields)), 2):
        if not wedge_all([lie_bracket(fields[i], fields[j])] + top).is_zero():
            return False
    return True


def _bound_verdict(lhs: int, rhs: int) -> str:
    if lhs < rhs:
        return HOLDS
    if lhs == rhs:
        return SHARP
    return VIOLATED


@dataclass(frozen=True)
class FlagSpec:
    """A tangent pair (lower fields, upper codimension-one form)."""

    n: int
    lower: FieldsDistribution
    upper: ProjDistribution
    certificates: Tuple[Poly, ...]

    @classmethod
    def build(cls, lower: FieldsDistribution, upper: ProjDistribution) -> "FlagSpec":
        residues = tuple(contract(x, upper.omega).as_poly() for x in lower.generators)
        if any(not r.is_zero() for r in residues):
            raise ValueError("lower distribution is not tangent to the upper one")
        if lower.dim >= upper.dim:
            raise ValueError("a flag needs dim(lower) < dim(upper)")
        return cls(n=lower.n, lower=lower, upper=upper, certificates=residues)


@dataclass(frozen=True)
class FlagReport:
    n: int
    dims: Tuple[int, int]
    degrees: Tuple[int, int]
    generator_degrees: Tuple[int, ...]
    tangency: bool
    tangency_residues: Tuple[Poly, ...]
    contraction_chain_zero: bool
    integrability_lower: bool
    integrability_upper: bool
    inequality_verdicts: Dict[str, str]
    unverified: Tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return (
            self.tangency
            and self.contraction_chain_zero
            and VIOLATED not in self.inequality_verdicts.values()
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_F": self.dims[0],
            "dim_G": self.dims[1],
            "deg_F": self.degrees[0],
            "deg_G": self.degrees[1],
            "generator_degrees": list(self.generator_degrees),
            "tangency": self.tangency,
            "tangency_residues": [str(r) for r in self.tangency_residues],
            "contraction_chain_zero": self.contraction_chain_zero,
            "integrability_lower": self.integrability_lower,
            "integrability_upper": self.integrability_upper,
            "inequality_verdicts": dict(sorted(self.inequality_verdicts.items())),
            "unverified": list(self.unverified),
            "ok": self.ok,
        }


def _verdicts(n: int, dim_f: int, dim_g: int, deg_f: int, deg_g: int, tangent: bool, integrable: bool) -> Dict[str, str]:
    verdicts = {"theorem1": NOT_APPLICABLE, "theorem2": NOT_APPLICABLE, "theorem3": NOT_APPLICABLE}
    if not tangent:
        return verdicts
    if dim_f == 1 and dim_g == n - 1 and n >= 3:
        v = _bound_verdict(deg_g, deg_f - 1)
        if v == VIOLATED and not theorem1_audit(n, deg_f, deg_g).bound_asserted:
            v = NOT_APPLICABLE
        verdicts["theorem1"] = v
    if dim_g == n - 1 and dim_f < dim_g:
        verdicts["theorem2"] = _bound_verdict(deg_g, deg_f)
    if n >= 3 and dim_f == dim_g - 1 and integrable:
        verdicts["theorem3"] = _bound_verdict(deg_g, deg_f)
    return verdicts


def verify_flag(lower: FieldsDistribution, upper: ProjDistribution) -> FlagReport:
    if lower.n != upper.n:
        raise ValueError(f"dimension mismatch: P^{lower.n} vs P^{upper.n}")
    if upper.codim != 1:
        raise ValueError("the upper member must have codimension one")
    n = lower.n
    omega = upper.omega
    residues = tuple(contract(x, omega).as_poly() for x in lower.generators)
    tangent = all(r.is_zero() for r in residues)
    theta = contraction_chain(lower.generators, n)
    chain_zero = wedge(theta, omega).is_zero()
    int_upper = integrable_codim1(omega)
    int_lower = bracket_closed(lower.generators)
    dims = (lower.dim, upper.dim)
    degrees = (lower.total_degree, upper.degree)
    verdicts = _verdicts(n, dims[0], dims[1], degrees[0], degrees[1], tangent, int_lower and int_upper)
    unverified = [
        "reducedness of both members",
        "lower member saturated (deg(F) taken as the sum of generator degrees)",
    ]
    if verdicts["theorem1"] != NOT_APPLICABLE:
        unverified.append("theorem1: Sing(G) isolated")
    if verdicts["theorem2"] != NOT_APPLICABLE:
        unverified.append(f"theorem2: codim Sing(G) >= {n - dims[0] + 1}")
    if verdicts["theorem3"] != NOT_APPLICABLE:
        unverified.append("theorem3: Sing(G) has a Baum-Kupka component")
    return FlagReport(
        n=n,
        dims=dims,
        degrees=degrees,
        generator_degrees=tuple(lower.degrees),
        tangency=tangent,
        tangency_residues=residues,
        contraction_chain_zero=chain_zero,
        integrability_lower=int_lower,
        integrability_upper=int_upper,
        inequality_verdicts=verdicts,
        unverified=tuple(unverified),
    )


# -- chains of flags ---------------------------------------------------------------------


@dataclass(frozen=True)
class ChainVerdict:
    members: Tuple[Tuple[int, int], ...]  # (dim, degree), dims increasing
    violations: Tuple[Tuple[int, int], ...]  # positions i with deg[i] > deg[i+1]

    @property
    def holds(self) -> bool:
        return not self.violations

    @property
    def strict(self) -> bool:
        degs = [d for _, d in self.members]
        return self.holds and all(a < b for a, b in zip(degs, degs[1:]))

    def to_dict(self) -> dict:
        return {
            "dims": [m[0] for m in self.members],
            "degrees": [m[1] for m in self.members],
            "status": "holds" if self.holds else "violated",
            "strict": self.strict,
            "violations": [list(v) for v in self.violations],
        }


def audit_degree_chain(degrees: Sequence[int], dims: Optional[Sequence[int]] = None) -> ChainVerdict:
    """Check ``deg(F_1) <= deg(F_2) <= ...`` along members of increasing dimension."""
    degrees = list(degrees)
    dims = list(dims) if dims is not None else list(range(1, len(degrees) + 1))
    if len(dims) != len(degrees):
        raise ValueError("dims and degrees differ in length")
    if any(a >= b for a, b in zip(dims, dims[1:])):
        raise ValueError("not a chain: dimensions must strictly increase")
    violations = tuple((i, i + 1) for i in range(len(degrees) - 1) if degrees[i] > degrees[i + 1])
    return ChainVerdict(members=tuple(zip(dims, degrees)), violations=violations)


def audit_inequalities(reports: Sequence[FlagReport]) -> ChainVerdict:
    """Collect the members of several flag reports into one chain and audit it."""
    members: Dict[int, int] = {}
    for rep in reports:
        if not rep.tangency:
            raise ValueError("a report without tangency does not describe a flag")
        for dim, deg in zip(rep.dims, rep.degrees):
            if members.setdefault(dim, deg) != deg:
                raise ValueError(f"not a chain: two members of dimension {dim} with different degrees")
    dims = sorted(members)
    return audit_degree_chain([members[d] for d in dims], dims)


def kupka_pointwise(dist: ProjDistribution, points: Sequence[Sequence[Union[int, Fraction]]]) -> List[bool]:
    """At each point: is it singular for omega while d(omega) does not vanish there?"""
    domega = exterior_derivative(dist.omega)
    out = []
    for pt in points:
        singular = not dist.omega.evaluate(pt)
        out.append(singular and bool(domega.evaluate(pt)))
    return out


__all__ = [
    "ChainVerdict",
    "DegreeBoundViolation",
    "FlagReport",
    "FlagSpec",
    "audit_degree_chain",
    "audit_inequalities",
    "bracket_closed",
    "contraction_chain",
    "divide_by_form",
    "integrable_codim1",
    "kupka_pointwise",
    "monomials",
    "verify_flag",
]
