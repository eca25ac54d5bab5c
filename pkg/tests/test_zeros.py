import os

import pytest
from hypothesis import given, settings, strategies as st

from flagforge.examples import antisym_example
from flagforge.polyring import Poly
from flagforge.projective import descend_form, singular_ideal
from flagforge.zeros import (
    DEGENERATE,
    ISOLATED,
    POSITIVE_DIMENSIONAL,
    ProjPoint,
    common_zeros_mod_p,
    enumerate_points,
    is_singular_point,
    isolatedness_evidence,
    point_count,
)


def disti_ideal(k):
    omega, _ = antisym_example(k)
    return singular_ideal(descend_form(omega, 3))


def coords(points):
    return [pt.coords for pt in points]


def test_enumeration_examples():
    assert coords(enumerate_points(1, 3)) == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert len(list(enumerate_points(2, 2))) == 7
    assert len(list(enumerate_points(3, 5))) == 156


def test_enumeration_counts_and_distinct():
    for n in (1, 2, 3):
        for p in (2, 3, 5, 7):
            pts = list(enumerate_points(n, p))
            assert len(pts) == point_count(n, p) == (p ** (n + 1) - 1) // (p - 1)
            assert len(set(pts)) == len(pts)
            assert pts == sorted(pts)


def test_enumeration_rejects_composite_and_bad_n():
    with pytest.raises(ValueError):
        list(enumerate_points(2, 4))
    with pytest.raises(ValueError):
        list(enumerate_points(0, 5))


def test_threaded_enumeration_is_identical(monkeypatch):
    serial = list(enumerate_points(3, 5, workers=1))
    assert list(enumerate_points(3, 5, workers=4)) == serial
    monkeypatch.setenv("FLAGFORGE_THREADS", "3")
    assert list(enumerate_points(3, 5)) == serial
    ideal = disti_ideal(1)
    assert common_zeros_mod_p(ideal, 3, 7) == common_zeros_mod_p(ideal, 3, 7, workers=1)


def test_disti_zeros():
    for p in (5, 7, 11, 13):
        assert coords(common_zeros_mod_p(disti_ideal(1), 3, p)) == [(1, 0, 0, 0), (0, 1, 0, 0)]


def test_hyperplane_zeros():
    z0 = Poly.parse("z0", 2)
    assert coords(common_zeros_mod_p([z0], 1, 5)) == [(0, 1)]


def test_zero_polys_ignored_and_nonhomogeneous_rejected():
    z0 = Poly.parse("z0", 2)
    assert coords(common_zeros_mod_p([z0, Poly.zero(2)], 1, 3)) == [(0, 1)]
    with pytest.raises(ValueError):
        common_zeros_mod_p([Poly.parse("z0 + z1^2", 2)], 1, 3)
    with pytest.raises(ValueError):
        common_zeros_mod_p([Poly.parse("z0", 3)], 1, 3)


@given(st.integers(1, 6), st.sampled_from([5, 7]))
@settings(max_examples=12)
def test_unit_rescaling_invariance(unit, p):
    ideal = disti_ideal(1)
    if unit % p == 0:
        return
    scaled = [g.scale(unit) for g in ideal]
    assert common_zeros_mod_p(scaled, 3, p) == common_zeros_mod_p(ideal, 3, p)


def test_isolatedness_examples():
    ev = isolatedness_evidence(disti_ideal(1), 3, [5, 7, 11])
    assert ev.counts == (2, 2, 2) and ev.verdict == ISOLATED
    assert "evidence" in ev.verdict and "heuristic" in ev.note
    line = isolatedness_evidence([Poly.parse("z0", 3)], 2, [5, 7, 11])
    assert line.counts == (6, 8, 12) and line.verdict == POSITIVE_DIMENSIONAL
    empty = isolatedness_evidence([], 2, [2, 3, 5])
    assert empty.counts == (7, 13, 31) and empty.verdict == DEGENERATE


def test_isolatedness_input_checks():
    with pytest.raises(ValueError):
        isolatedness_evidence(disti_ideal(1), 3, [5, 7])
    with pytest.raises(ValueError):
        isolatedness_evidence(disti_ideal(1), 3, [5, 7, 9])


def test_bad_reduction_primes_rejected():
    g = Poly.parse("1/7*z0^2 + z1*z2", 3)
    ev = isolatedness_evidence([g, Poly.parse("5*z1", 3)], 2, [3, 5, 7, 11])
    assert ev.rejected_primes == (5, 7)
    assert ev.primes == (3, 11)
    assert ev.to_dict()["rejected_primes"] == [5, 7]


def test_singular_points_exact():
    for k in range(1, 6):
        omega, _ = antisym_example(k)
        dist = descend_form(omega, 3)
        assert is_singular_point(dist, (1, 0, 0, 0))
        assert is_singular_point(dist, ProjPoint.rational((0, 3, 0, 0)))
        assert not is_singular_point(dist, (0, 0, 1, 0))
    with pytest.raises(ValueError):
        is_singular_point(dist, (0, 0, 0, 0))
    with pytest.raises(ValueError):
        is_singular_point(dist, ProjPoint.mod_p((1, 0, 0, 0), 5))


def test_rational_points_reduce_into_finite_field_zeros():
    for k in (1, 2, 3):
        omega, _ = antisym_example(k)
        dist = descend_form(omega, 3)
        candidates = [(1, 0, 0, 0), (0, 1, 0, 0), (2, -3, 0, 0), (0, 0, 1, 0), (1, 1, 1, 1)]
        singular = [ProjPoint.rational(c) for c in candidates if is_singular_point(dist, c)]
        for p in (5, 7, 11):
            zeros = set(common_zeros_mod_p(singular_ideal(dist), 3, p))
            for pt in singular:
                assert pt.reduce(p) in zeros


def test_point_normalization():
    pt = ProjPoint.rational((0, 2, 4))
    assert pt.coords == (0, 1, 2) and pt.lead == 1
    assert ProjPoint.mod_p((0, 3, 1), 5).coords == (0, 1, 2)
    assert str(ProjPoint.mod_p((2, 4), 5)) == "(1:2)"
    with pytest.raises(ValueError):
        ProjPoint.rational((0, 0))
    with pytest.raises(ValueError):
        ProjPoint.rational((1, 0)).reduce(5).reduce(5)
