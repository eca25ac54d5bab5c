"""Bott's formulae on P^n and the Koszul twist bookkeeping built on them.

``h^q(P^n, Omega^p(k))`` has a four-case closed form; the polyvector sheaves
``wedge^r T(t)`` are handled through their own table, which must agree with
the isomorphism ``wedge^r T(t) = Omega^{n-r}(t+n+1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

FORMS = "forms"
POLYVECTORS = "polyvectors"


def binom(a: int, b: int) -> int:
    """Binomial coefficient, zero when ``b < 0`` or ``a < b``.

    A negative upper argument is never meaningful after the case split in
    Bott's tables, so it is rejected instead of being extended.
    """
    if a < 0:
        raise AssertionError(f"binomial with negative upper argument C({a}, {b})")
    if b < 0 or a < b:
        return 0
    num = 1
    for i in range(b):
        num = num * (a - i) // (i + 1)
    return num


@dataclass(frozen=True)
class BottQuery:
    n: int
    kind: str
    rank: int
    twist: int
    cohom: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind not in (FORMS, POLYVECTORS):
            raise ValueError(f"unknown sheaf kind {self.kind!r}")
        if not 0 <= self.rank <= self.n:
            raise ValueError(f"rank {self.rank} outside [0, {self.n}]")
        if not 0 <= self.cohom <= self.n:
            raise ValueError(f"cohomological degree {self.cohom} outside [0, {self.n}]")


def _single(cases) -> int:
    """Evaluate the one case whose condition holds; 0 when none does."""
    fired = [value for active, value in cases if active]
    if len(fired) > 1:
        raise AssertionError("more than one case of Bott's formula applies")
    return fired[0]() if fired else 0


def h_forms(n: int, p: int, k: int, q: int) -> int:
    """``h^q(P^n, Omega^p(k))``."""
    BottQuery(n, FORMS, p, k, q)
    return _single([
        (q == 0 and k > p, lambda: binom(k + n - p, k) * binom(k - 1, p)),
        (k == 0 and p == q, lambda: 1),
        (q == n and k < p - n, lambda: binom(-k + p, -k) * binom(-k - 1, n - p)),
    ])


def h_polyvectors(n: int, r: int, t: int, s: int) -> int:
    """``h^s(P^n, wedge^r T(t))`` from the dual table.

    The third case uses ``C(-t-1-r, -t-n-1)``; this is what the forms table
    gives under ``wedge^r T(t) = Omega^{n-r}(t+n+1)``.
    """
    BottQuery(n, POLYVECTORS, r, t, s)
    return _single([
        (s == 0 and t + r >= 0, lambda: binom(t + n + 1 + r, t + n + 1) * binom(t + n, n - r)),
        (t == -n - 1 and n - r == s, lambda: 1),
        (s == n and t + n + r + 2 <= 0, lambda: binom(-t - 1 - r, -t - n - 1) * binom(-t - n - 2, r)),
    ])


def bott_dim(query: BottQuery) -> int:
    if query.kind == FORMS:
        return h_forms(query.n, query.rank, query.twist, query.cohom)
    return h_polyvectors(query.n, query.rank, query.twist, query.cohom)


# -- Koszul schedule and the vanishing analysis ------------------------------------


def koszul_twists(n: int, d: int, m: int) -> List[int]:
    """``t_r = -r(m+2) + d + m + 1`` for r = 1..n."""
    return [-r * (m + 2) + d + m + 1 for r in range(1, n + 1)]


def exceptional_condition(n: int, d: int, m: int) -> Optional[str]:
    """Which of the two excluded degree relations holds, if any."""
    if n % 2 == 0 and 2 * d == n * m:
        return "i"
    if n % 2 == 1 and 2 * (d + 1) == (n - 1) * m:
        return "ii"
    return None


@dataclass(frozen=True)
class VanishingRow:
    r: int
    twist: int
    h_low: int   # h^{r-2}(wedge^r T(t_r))
    h_high: int  # h^{r-1}(wedge^r T(t_r))
    required: Tuple[str, ...]

    @property
    def ok(self) -> bool:
        return all(getattr(self, name) == 0 for name in self.required)


@dataclass(frozen=True)
class VanishingReport:
    n: int
    d: int
    m: int
    twists: Tuple[int, ...]
    rows: Tuple[VanishingRow, ...]
    chain_holds: bool
    exceptional: Optional[str]

    @property
    def per_r(self):
        return {row.r: (row.h_low, row.h_high) for row in self.rows}

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "twists": list(self.twists),
            "rows": [
                {
                    "r": row.r,
                    "t_r": row.twist,
                    "h^{r-2}": row.h_low,
                    "h^{r-1}": row.h_high,
                    "required_zero": list(row.required),
                    "ok": row.ok,
                }
                for row in self.rows
            ],
            "chain_holds": self.chain_holds,
            "exceptional": self.exceptional,
        }


def vanishing_report(n: int, d: int, m: int) -> VanishingReport:
    """Tabulate the Bott dimensions that decide whether ``H^1(K_2) = 0``.

    Rows 3..n-1 need both ``h^{r-2}`` and ``h^{r-1}`` of ``wedge^r T(t_r)`` to
    vanish; row n needs ``h^{n-2}``.  For n = 3 this leaves the single
    condition ``h^1(wedge^3 T(t_3)) = 0`` since there K_2 is wedge^3 T(t_3).
    Row 2 is informational: its ``h^0`` is the space the tangent field lifts to.
    """
    if n < 3 or d < 0 or m < 0:
        raise ValueError("need n >= 3, d >= 0, m >= 0")
    twists = koszul_twists(n, d, m)
    rows = []
    for r in range(2, n + 1):
        t = twists[r - 1]
        if 3 <= r <= n - 1:
            required: Tuple[str, ...] = ("h_low", "h_high")
        elif r == n:
            required = ("h_low",)
        else:
            required = ()
        rows.append(VanishingRow(
            r=r,
            twist=t,
            h_low=h_polyvectors(n, r, t, r - 2),
            h_high=h_polyvectors(n, r, t, r - 1),
            required=required,
        ))
    return VanishingReport(
        n=n,
        d=d,
        m=m,
        twists=tuple(twists),
        rows=tuple(rows),
        chain_holds=all(row.ok for row in rows),
        exceptional=exceptional_condition(n, d, m),
    )


@dataclass(frozen=True)
class Theorem1Audit:
    n: int
    d: int
    m: int
    in_scope: bool
    hypothesis_i: bool
    hypothesis_ii: bool
    bound_asserted: bool
    bound_holds: bool
    remark_holds: bool
    lift_space_nonzero: bool
    notes: Tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "m": self.m,
            "in_scope": self.in_scope,
            "hypothesis_i": self.hypothesis_i,
            "hypothesis_ii": self.hypothesis_ii,
            "bound_asserted": self.bound_asserted,
            "bound_holds": self.bound_holds,
            "remark_holds": self.remark_holds,
            "lift_space_nonzero": self.lift_space_nonzero,
            "notes": list(self.notes),
        }


def theorem1_audit(n: int, d: int, m: int) -> Theorem1Audit:
    """Arithmetic side of the degree bound for a tangent line field (degree d)
    inside a codimension-one distribution (degree m) on P^n.

    ``bound_asserted`` is set when the degree hypotheses hold; the bound is
    ``m <= d - 1``.  Isolatedness of the singular set is not checked here.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    notes = ["isolated singular set assumed, not verified"]
    in_scope = m >= 2
    if not in_scope:
        notes.append("deg(G) < 2: outside the scope of the theorem")
    hyp_i = not (n % 2 == 0 and 2 * d == n * m)
    hyp_ii = not (n % 2 == 1 and 2 * (d + 1) == (n - 1) * m)
    if n % 2 == 0:
        remark = Fraction(n, 2) * m != m + 1
    else:
        remark = Fraction(n - 1, 2) * m != m + 1
    t2 = koszul_twists(n, d, m)[1]
    return Theorem1Audit(
        n=n,
        d=d,
        m=m,
        in_scope=in_scope,
        hypothesis_i=hyp_i,
        hypothesis_ii=hyp_ii,
        bound_asserted=in_scope and hyp_i and hyp_ii,
        bound_holds=m <= d - 1,
        remark_holds=remark if in_scope else True,
        lift_space_nonzero=h_polyvectors(n, 2, t2, 0) > 0,
        notes=tuple(notes),
    )
