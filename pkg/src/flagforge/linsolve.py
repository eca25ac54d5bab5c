"""Exact sparse Gaussian elimination over the rationals."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence


def solve_exact(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction], ncols: int) -> Optional[List[Fraction]]:
    """Solve ``A x = b`` for one solution, or return ``None`` if inconsistent.

    ``rows[i]`` maps column index to the nonzero entry ``A[i][col]``.  Pivots
    are taken in increasing column order and free variables are set to zero,
    so the returned solution depends only on the column numbering.
    """
    if len(rows) != len(rhs):
        raise ValueError("row count and right-hand side length differ")
    pending: List[Dict[int, Fraction]] = []
    b: List[Fraction] = []
    for row, val in zip(rows, rhs):
        r = {c: Fraction(v) for c, v in row.items() if v}
        if any(not 0 <= c < ncols for c in r):
            raise ValueError("column index out of range")
        pending.append(r)
        b.append(Fraction(val))

    pivots: Dict[int, int] = {}  # column -> pivot row
    used = set()
    for col in range(ncols):
        candidates = [i for i, r in enumerate(pending) if col in r and i not in used]
        if not candidates:
            continue
        # sparsest row keeps fill-in small; ties broken by index for determinism
        p = min(candidates, key=lambda i: (len(pending[i]), i))
        prow = pending[p]
        inv = 1 / prow[col]
        for c in prow:
            prow[c] *= inv
        b[p] *= inv
        for i, r in enumerate(pending):
            if i == p or col not in r:
                continue
            factor = r[col]
            for c, v in prow.items():
                nv = r.get(c, 0) - factor * v
                if nv:
                    r[c] = nv
                else:
                    r.pop(c, None)
            b[i] -= factor * b[p]
        pivots[col] = p
        used.add(p)

    for i, r in enumerate(pending):
        if i not in used and not r and b[i]:
            return None

    x = [Fraction(0)] * ncols
    for col, p in pivots.items():
        # fully reduced: other pivot columns are absent, free columns are zero
        x[col] = b[p]
    return x
