from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ghostslopes import (ModuleSpec, NewtonPolygon, UnconfirmedRangeError, WStarProfile,
                         confirmed_prefix, ghost_polygon, h_values, merge, merge_all, np_equal_upto,
                         np_from_points, np_from_values, stretch)
from ghostslopes.newton import truncated_polygon

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def envelope(values):
    """O(N^2) lower envelope: min over chords through x of the interpolated ordinate."""
    n = len(values)
    out = []
    for x in range(n):
        best = values[x]
        for i in range(x + 1):
            for j in range(x, n):
                if i < j:
                    best = min(best, values[i] + (values[j] - values[i]) * (x - i) / (j - i))
        out.append(best)
    return out


def test_hull_examples():
    P = np_from_points([(0, 0), (1, 2), (2, 2), (3, 5)])
    assert P.vertices == [(0, 0), (2, 2), (3, 5)]
    assert P.slopes == (1, 1, 3)
    Q = np_from_values([0, Fraction(3, 2), 4])
    assert Q.vertices == [(0, 0), (1, Fraction(3, 2)), (2, 4)]
    assert Q.slopes == (Fraction(3, 2), Fraction(5, 2))
    assert np_from_points([(0, 0)]).slopes == ()
    with pytest.raises(ValueError):
        np_from_points([])
    with pytest.raises(ValueError):
        np_from_points([(0, 0), (2, 1)])


@settings(max_examples=150, deadline=None)
@given(st.lists(rationals, min_size=1, max_size=25))
def test_hull_matches_envelope(values):
    P = np_from_values(values)
    assert h_values(P, len(values) - 1) == envelope(values)
    xs = [x for x, _ in P.vertices]
    assert all(values[x] == y for x, y in P.vertices)
    assert xs == sorted(set(xs))
    assert list(P.slopes) == sorted(P.slopes)


def test_merge_and_stretch_examples():
    A = NewtonPolygon(0, (1, 3))
    B = NewtonPolygon(0, (2, 2))
    assert merge(A, B).slopes == (1, 2, 2, 3)
    assert merge(A, NewtonPolygon(5)).slopes == A.slopes and merge(A, NewtonPolygon(5)).base == 5
    assert stretch(A, 2).slopes == (1, 1, 3, 3)
    assert stretch(A, 1) == A
    with pytest.raises(ValueError):
        stretch(A, 0)
    with pytest.raises(ValueError):
        merge_all([])


def test_h_values():
    P = NewtonPolygon(0, (Fraction(3, 2), Fraction(5, 2)))
    assert h_values(P, 2) == [0, Fraction(3, 2), 4]
    assert h_values(NewtonPolygon(7, (0, 0)), 2) == [7, 7, 7]
    with pytest.raises(IndexError):
        h_values(P, 3)


@given(st.lists(st.lists(rationals, min_size=1, max_size=10), min_size=2, max_size=4),
       st.integers(1, 3))
def test_merge_laws(vals, m):
    polys = [np_from_values(v) for v in vals]
    A, B = polys[0], polys[1]
    assert merge(A, B) == merge(B, A)
    assert merge_all(polys) == merge_all(polys[::-1])
    assert stretch(merge(A, B), m) == merge(stretch(A, m), stretch(B, m))
    assert merge(A, A) == stretch(A, 2)
    assert merge(A, B).length == A.length + B.length
    assert sorted(stretch(A, m).slope_multiset()) == [(s, c * m) for s, c in sorted(A.slope_multiset())]


def test_vertex_slope_consistency():
    P = NewtonPolygon(1, (0, 0, Fraction(1, 2), 2, 2))
    assert P.vertices == [(0, 1), (2, 1), (3, Fraction(3, 2)), (5, Fraction(11, 2))]
    assert P.slope_multiset() == [(0, 2), (Fraction(1, 2), 1), (2, 2)]
    with pytest.raises(ValueError):
        NewtonPolygon(0, (2, 1))


def test_compare():
    A = NewtonPolygon(0, (1, 2))
    assert np_equal_upto(A, A, 2)
    res = np_equal_upto(A, NewtonPolygon(0, (1, 3)), 2)
    assert not res and res.diverges_at == 2
    assert np_equal_upto(A, NewtonPolygon(1, (1, 2)), 2).diverges_at == 0
    T = NewtonPolygon(0, (1, 2), confirmed_upto=1, truncated=True)
    with pytest.raises(UnconfirmedRangeError):
        np_equal_upto(A, T, 2)


def test_confirmation_by_doubling():
    vals = [0, 5, 9, 10, 10, 10, 10]
    P = truncated_polygon(vals, 3)
    # at truncation 3 the last vertex is (3, 10); the full data has a different hull there
    assert P.confirmed_upto <= 3
    assert P.truncated
    Q = truncated_polygon([0, 1, 2, 4, 8, 16, 32], 3)
    assert Q.confirmed_upto == 3


def test_merge_confirmation_is_conservative():
    A = NewtonPolygon(0, (1, 2, 5), confirmed_upto=2, truncated=True)
    B = NewtonPolygon(0, (3, 4))
    M = merge(A, B)
    # slopes above 2 from A may be missing, so only {1, 2} are certain
    assert M.slopes == (1, 2, 3, 4, 5) and M.confirmed_upto == 2
    assert merge(B, B).confirmed_upto == 4
    assert merge(NewtonPolygon(0, (1,), 0, True), B).confirmed_upto == 0


def test_ghost_polygon_examples(eps74):
    spec = ModuleSpec.of(eps74, [3])
    w = WStarProfile(eps74, None, Fraction(1, 2))
    P = ghost_polygon(spec, w, 10)
    assert P.slopes[:2] == (Fraction(3, 2), Fraction(5, 2))
    assert P.confirmed_upto >= 8
    assert confirmed_prefix(spec, w, 10) == P.confirmed_upto
    assert confirmed_prefix(spec, w, 2) >= 0
    with pytest.raises(ValueError):
        confirmed_prefix(spec, w, 1)
    assert ghost_polygon(spec, w, 10) == P


def test_polygon_json(eps74):
    P = NewtonPolygon(0, (1, 1, 3), confirmed_upto=2, truncated=True)
    assert P.to_json() == {"base": "0/1", "vertices": [[0, "0/1"], [2, "2/1"], [3, "5/1"]],
                           "slopes": ["1/1", "1/1", "3/1"], "confirmed_upto": 2}
