"""Generators for the two explicit families: a codimension-one distribution
on P^3 built from an antisymmetric matrix, and the Hamiltonian flag on P^{2n}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from flagforge.extalg import MultiVector, PForm, differential, lie_bracket
from flagforge.polyring import ANY_DEGREE, Poly, partial_derivative, variables
from flagforge.projective import ProjDistribution, descend_form

# A sign pattern: entry j (1-based position) is (sign, partial index), meaning
# the j-th component is sign * d f / d z_{partial}.
Pattern = Tuple[Tuple[int, int], ...]


def antisym_matrix(k: int) -> List[List[Poly]]:
    if k < 1:
        raise ValueError("k must be at least 1")
    z0, z1, z2, z3 = variables(4)
    zero = Poly.zero(4)
    return [
        [zero, zero, zero, z3**k],
        [zero, zero, z2**k, z0**k],
        [zero, -(z2**k), zero, zero],
        [-(z3**k), -(z0**k), zero, zero],
    ]


def antisym_example(k: int) -> Tuple[PForm, MultiVector]:
    """The 1-form ``sum A_i dz_i`` with ``A = M z`` and its tangent field of degree k+1."""
    M = antisym_matrix(k)
    z = variables(4)
    coeffs = [sum((M[i][j] * z[j] for j in range(4)), Poly.zero(4)) for i in range(4)]
    omega = PForm.one_form(coeffs)
    z0, z1, z2, z3 = z
    X = MultiVector.field([
        z1 * z2**k,
        z0 * z3**k + z0**k * z1,
        z3 ** (k + 1),
        z2 ** (k + 1) + z0**k * z3,
    ])
    return omega, X


# -- Hamiltonian family -------------------------------------------------------------------


def homogenize(f: Poly, k: int) -> Poly:
    """``F = f_k + z0 f_{k-1} + ... + z0^{k-1} f_1`` for f in z1..z_m (z0 unused)."""
    if f.is_zero():
        raise ValueError("cannot homogenize the zero polynomial")
    if 0 in f.variables():
        raise ValueError("f must not involve z0")
    parts = f.homogeneous_parts()
    if 0 in parts:
        raise ValueError("f has a nonzero constant term")
    if max(parts) != k:
        raise ValueError(f"f has degree {max(parts)}, expected {k}")
    z0 = Poly.var(0, f.nvars)
    total = Poly.zero(f.nvars)
    for j, part in parts.items():
        total = total + z0 ** (k - j) * part
    return total


def kupka_form(f: Poly, k: int, n2: int) -> ProjDistribution:
    """Codimension-one foliation ``z0 dF - k F dz0`` on P^{n2} of degree k-1."""
    if f.nvars != n2 + 1:
        raise ValueError(f"f must live in {n2 + 1} variables (z0 unused)")
    F = homogenize(f, k)
    z0 = Poly.var(0, f.nvars)
    omega = differential(F).scale(z0) - PForm.dz(0, nvars=f.nvars).scale(F * k)
    return descend_form(omega, n2)


def printed_pattern(i: int, n2: int) -> Pattern:
    """Sign pattern of the i-th Hamiltonian field in 2n = n2 variables.

    Odd i reverses the leading block of i+1 positions; even i swaps the two
    halves of the leading block of i+2 positions.  The remaining positions are
    paired (2j-1, 2j).  Signs alternate -, +, -, + by position.  For n2 = 4
    this reproduces the three displayed fields exactly.
    """
    if n2 < 4 or n2 % 2:
        raise ValueError("need an even number of variables, at least 4")
    if not 1 <= i <= n2 - 1:
        raise ValueError(f"field index {i} outside 1..{n2 - 1}")
    block = i + 1 if i % 2 else i + 2
    sigma = {}
    for j in range(1, block + 1):
        if i % 2:
            sigma[j] = block + 1 - j
        else:
            half = block // 2
            sigma[j] = j + half if j <= half else j - half
    for j in range(block + 1, n2 + 1):
        sigma[j] = j + 1 if (j - block) % 2 else j - 1
    return tuple((-1 if j % 2 else 1, sigma[j]) for j in range(1, n2 + 1))


def pattern_field(pattern: Pattern, f: Poly) -> MultiVector:
    """Vector field with component z_j = sign * df/dz_{partial}; no d/dz0 part."""
    comps = {(j,): partial_derivative(f, p).scale(s) for j, (s, p) in enumerate(pattern, start=1)}
    return MultiVector(f.nvars, 1, comps)


def tangency_residue(x: MultiVector, f: Poly) -> Poly:
    """``sum_j X_j df/dz_j``; zero exactly when X is tangent to the levels of f."""
    return x.apply(f)


def _flip(pattern: Pattern, mask: int) -> Pattern:
    return tuple((-s if mask >> j & 1 else s, p) for j, (s, p) in enumerate(pattern))


@dataclass(frozen=True)
class HamiltonianCandidate:
    index: int
    pattern: Pattern
    field: MultiVector
    residue: Poly
    corrected_pattern: Optional[Pattern] = None
    corrected_field: Optional[MultiVector] = None
    flipped_positions: Tuple[int, ...] = ()

    @property
    def valid(self) -> bool:
        return self.residue.is_zero()

    @property
    def usable_field(self) -> Optional[MultiVector]:
        """The printed field if it validates, else the corrected one (or None)."""
        return self.field if self.valid else self.corrected_field

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "pattern": [list(e) for e in self.pattern],
            "field": str(self.field),
            "valid": self.valid,
            "residue": str(self.residue),
            "corrected_pattern": [list(e) for e in self.corrected_pattern] if self.corrected_pattern else None,
            "corrected_field": str(self.corrected_field) if self.corrected_field is not None else None,
            "flipped_positions": list(self.flipped_positions),
        }


def _correct(pattern: Pattern, f: Poly) -> Optional[Tuple[Pattern, Tuple[int, ...]]]:
    n2 = len(pattern)
    # Fewest flips first.  Masks that keep the leading sign (every displayed
    # field starts with a minus) come before those that flip it; ties go to
    # the smaller mask.
    order = sorted(range(1, 1 << n2), key=lambda m: (bin(m).count("1"), m & 1, m))
    for mask in order:
        cand = _flip(pattern, mask)
        if tangency_residue(pattern_field(cand, f), f).is_zero():
            return cand, tuple(j + 1 for j in range(n2) if mask >> j & 1)
    return None


def hamiltonian_fields(f: Poly, n2: int) -> List[HamiltonianCandidate]:
    """Build, validate and if needed repair the fields H_1..H_{n2-1} for f.

    ``f`` lives in ``n2 + 1`` variables with z0 unused.  Validation is exact:
    a candidate is valid iff ``sum_j X_j df/dz_j`` is the zero polynomial.
    """
    if f.nvars != n2 + 1:
        raise ValueError(f"f must live in {n2 + 1} variables (z0 unused)")
    if 0 in f.variables():
        raise ValueError("f must not involve z0")
    out = []
    for i in range(1, n2):
        pattern = printed_pattern(i, n2)
        x = pattern_field(pattern, f)
        residue = tangency_residue(x, f)
        if residue.is_zero():
            out.append(HamiltonianCandidate(i, pattern, x, residue))
            continue
        fix = _correct(pattern, f)
        if fix is None:
            out.append(HamiltonianCandidate(i, pattern, x, residue))
        else:
            cpat, flips = fix
            out.append(HamiltonianCandidate(i, pattern, x, residue, cpat, pattern_field(cpat, f), flips))
    return out


def homogenized_field(pattern: Pattern, f: Poly, k: int) -> MultiVector:
    """The pattern applied to the partials of the homogenization F.

    Equal to ``pattern_field(pattern, f)`` when f is homogeneous; in general it
    is the homogeneous field of degree k-1 on C^{n2+1} tangent to ``z0 dF - kF dz0``.
    """
    return pattern_field(pattern, homogenize(f, k))


def hamiltonian_brackets(candidates: Sequence[HamiltonianCandidate], printed_only: bool = False) -> Dict[Tuple[int, int], MultiVector]:
    """Lie brackets of every pair of usable fields, keyed by field indices."""
    usable = []
    for c in candidates:
        x = c.field if (printed_only and c.valid) else (None if printed_only else c.usable_field)
        if x is not None:
            usable.append((c.index, x))
    return {(i, j): lie_bracket(x, y) for (i, x), (j, y) in combinations(usable, 2)}


def polynomial_degree(f: Poly) -> int:
    d = f.total_degree()
    if d < 1 or f.homogeneous_degree() is ANY_DEGREE:
        raise ValueError("f must be a nonconstant polynomial")
    return d
