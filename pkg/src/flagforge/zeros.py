"""Brute-force common zeros on P^n over finite fields.

Point counts across several primes are used as evidence, never proof, that a
zero set is finite: a zero-dimensional set has a bounded, typically constant,
number of F_p-points, while a curve already has on the order of p of them.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from flagforge.polyring import ANY_DEGREE, Poly, is_prime, reduce_mod_p
from flagforge.projective import singular_ideal

Coord = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class ProjPoint:
    """Normalized representative: the first nonzero coordinate is 1.

    ``modulus`` is None for rational points and the prime for F_p points.
    Ordering is by position of the leading 1, then lexicographic.
    """

    lead: int
    coords: Tuple[Coord, ...]
    modulus: Optional[int] = None

    @classmethod
    def rational(cls, coords: Sequence[Coord]) -> "ProjPoint":
        coords = [Fraction(c) for c in coords]
        lead = next((i for i, c in enumerate(coords) if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        s = coords[lead]
        return cls(lead, tuple(c / s for c in coords))

    @classmethod
    def mod_p(cls, coords: Sequence[int], p: int) -> "ProjPoint":
        coords = [c % p for c in coords]
        lead = next((i for i, c in enumerate(coords) if c), None)
        if lead is None:
            raise ValueError("the zero vector is not a projective point")
        inv = pow(coords[lead], -1, p)
        return cls(lead, tuple(c * inv % p for c in coords), p)

    def reduce(self, p: int) -> "ProjPoint":
        """Reduce a rational point modulo p (denominators must be units)."""
        if self.modulus is not None:
            raise ValueError("point is already over a finite field")
        out = []
        for c in self.coords:
            if c.denominator % p == 0:
                raise ValueError(f"coordinate {c} does not reduce modulo {p}")
            out.append(c.numerator * pow(c.denominator, -1, p))
        return ProjPoint.mod_p(out, p)

    def __str__(self) -> str:
        return "(" + ":".join(str(c) for c in self.coords) + ")"


def worker_count() -> int:
    env = os.environ.get("FLAGFORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _block(n: int, p: int, lead: int) -> List[ProjPoint]:
    tail = n - lead
    pts = []
    for rest in product(range(p), repeat=tail):
        coords = (0,) * lead + (1,) + rest
        pts.append(ProjPoint(lead, coords, p))
    return pts


def enumerate_points(n: int, p: int, workers: Optional[int] = None) -> Iterator[ProjPoint]:
    """All (p^{n+1} - 1)/(p - 1) points of P^n(F_p), leading-1 blocks in order."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("n must be at least 1")
    workers = workers or worker_count()
    if workers == 1:
        for lead in range(n + 1):
            yield from _block(n, p, lead)
        return
    with ThreadPoolExecutor(max_workers=workers) as pool:
        # map preserves submission order, so the merge is deterministic
        for block in pool.map(lambda lead: _block(n, p, lead), range(n + 1)):
            yield from block


def point_count(n: int, p: int) -> int:
    return (p ** (n + 1) - 1) // (p - 1)


def _check_homogeneous(polys: Sequence[Poly], n: int) -> List[Poly]:
    kept = []
    for f in polys:
        if f.nvars != n + 1:
            raise ValueError(f"polynomial in {f.nvars} variables, expected {n + 1}")
        deg = f.homogeneous_degree()
        if deg is None:
            raise ValueError(f"{f} is not homogeneous; its zero set is not defined on P^{n}")
        if deg is not ANY_DEGREE:
            kept.append(f)
    return kept


def common_zeros_mod_p(polys: Sequence[Poly], n: int, p: int, workers: Optional[int] = None) -> List[ProjPoint]:
    polys = _check_homogeneous(polys, n)
    reduced = [reduce_mod_p(f, p) for f in polys]
    reduced = [g for g in reduced if not g.is_zero()]
    workers = workers or worker_count()

    def scan(lead: int) -> List[ProjPoint]:
        return [pt for pt in _block(n, p, lead) if all(g.evaluate(pt.coords) == 0 for g in reduced)]

    if workers == 1:
        blocks = [scan(lead) for lead in range(n + 1)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(scan, range(n + 1)))
    return sorted(pt for block in blocks for pt in block)


def bad_reduction(polys: Sequence[Poly], p: int) -> bool:
    """True if p divides a denominator or the leading coefficient of some input."""
    for f in polys:
        for _, c in f.terms():
            if c.denominator % p == 0:
                return True
        lc = f.leading_coefficient()
        if lc and lc.numerator % p == 0:
            return True
    return False


ISOLATED = "evidence-isolated"
POSITIVE_DIMENSIONAL = "evidence-positive-dimensional"
INCONCLUSIVE = "evidence-inconclusive"
DEGENERATE = "degenerate"


@dataclass(frozen=True)
class IsolatednessEvidence:
    n: int
    primes: Tuple[int, ...]
    counts: Tuple[int, ...]
    rejected_primes: Tuple[int, ...]
    growth_exponent: Optional[float]
    verdict: str
    points: Tuple[Tuple[str, ...], ...]  # per prime, only when small
    note: str = "heuristic: point counts over finite fields are evidence, not proof"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "primes": list(self.primes),
            "counts": list(self.counts),
            "rejected_primes": list(self.rejected_primes),
            "growth_exponent": None if self.growth_exponent is None else round(self.growth_exponent, 6),
            "verdict": self.verdict,
            "points": {str(p): list(pts) for p, pts in zip(self.primes, self.points)},
            "note": self.note,
        }


def _growth_exponent(primes: Sequence[int], counts: Sequence[int]) -> Optional[float]:
    """Least-squares slope of log(count) against log(p)."""
    if len(primes) < 2 or any(c == 0 for c in counts):
        return None
    xs = [math.log(p) for p in primes]
    ys = [math.log(c) for c in counts]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    sxx = sum((x - mx) ** 2 for x in xs)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sxx


def isolatedness_evidence(
    polys: Sequence[Poly],
    n: int,
    primes: Sequence[int],
    max_points: int = 20,
    workers: Optional[int] = None,
) -> IsolatednessEvidence:
    """Count common zeros over several F_p and classify the growth.

    Equal counts across primes read as isolated.  A growth exponent of at
    least 1/2 reads as positive-dimensional (a d-dimensional set has about p^d
    points).  Anything else is inconclusive.  Primes of bad reduction are
    skipped and listed.
    """
    primes = sorted(set(primes))
    if len(primes) < 3:
        raise ValueError("at least three primes are needed")
    for p in primes:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
    nonzero = _check_homogeneous(polys, n)
    good = [p for p in primes if not bad_reduction(nonzero, p)]
    rejected = tuple(p for p in primes if p not in good)
    counts, pts = [], []
    for p in good:
        zs = common_zeros_mod_p(nonzero, n, p, workers)
        counts.append(len(zs))
        pts.append(tuple(str(z) for z in zs) if len(zs) <= max_points else ())
    growth = _growth_exponent(good, counts)
    if not nonzero:
        verdict = DEGENERATE
    elif len(good) < 3:
        verdict = INCONCLUSIVE
    elif len(set(counts)) == 1:
        verdict = ISOLATED
    elif growth is not None and growth >= 0.5:
        verdict = POSITIVE_DIMENSIONAL
    else:
        verdict = INCONCLUSIVE
    return IsolatednessEvidence(
        n=n,
        primes=tuple(good),
        counts=tuple(counts),
        rejected_primes=rejected,
        growth_exponent=growth,
        verdict=verdict,
        points=tuple(pts),
    )


def is_singular_point(dist, pt: Union[ProjPoint, Sequence[Coord]]) -> bool:
    """Exact rational test: every singular-ideal generator vanishes at pt."""
    if not isinstance(pt, ProjPoint):
        pt = ProjPoint.rational(pt)
    if pt.modulus is not None:
        raise ValueError("expected a rational point")
    return all(g.evaluate(pt.coords) == 0 for g in singular_ideal(dist))
