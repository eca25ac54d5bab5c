from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from flagforge.linsolve import solve_exact


def dense(rows, ncols):
    return [[row.get(c, Fraction(0)) for c in range(ncols)] for row in rows]


def test_unique_solution():
    rows = [{0: 2, 1: 1}, {0: 1, 1: -1}]
    assert solve_exact(rows, [3, 0], 2) == [1, 1]


def test_inconsistent():
    rows = [{0: 1, 1: 1}, {0: 2, 1: 2}]
    assert solve_exact(rows, [1, 3], 2) is None


def test_free_variables_set_to_zero():
    assert solve_exact([{0: 1, 1: 1}], [5], 2) == [5, 0]


def test_zero_rows_and_validation():
    assert solve_exact([{}, {0: 1}], [0, 2], 1) == [2]
    assert solve_exact([{}], [1], 1) is None
    with pytest.raises(ValueError):
        solve_exact([{2: 1}], [0], 2)
    with pytest.raises(ValueError):
        solve_exact([{0: 1}], [], 1)


small = st.integers(-3, 3)


@given(st.integers(1, 5), st.integers(1, 5), st.data())
@settings(max_examples=80)
def test_against_sympy(nrows, ncols, data):
    rows = [{c: Fraction(data.draw(small)) for c in range(ncols) if data.draw(st.booleans())} for _ in range(nrows)]
    rhs = [Fraction(data.draw(small)) for _ in range(nrows)]
    A = sp.Matrix(dense(rows, ncols))
    b = sp.Matrix(rhs)
    consistent = A.rank() == A.row_join(b).rank()
    x = solve_exact(rows, rhs, ncols)
    assert (x is not None) == consistent
    if x is not None:
        assert A * sp.Matrix(x) == b
