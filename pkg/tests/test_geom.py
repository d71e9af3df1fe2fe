from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from edgeorder.geom import (
    COORD_LIMIT,
    GeneralPositionError,
    GeometryError,
    Orientation,
    Point,
    check_point,
    hulls,
    orient,
    segments_cross,
    slope_less,
    smaller_side,
    validate_point_set,
)

P = Point
coord = st.integers(-1000, 1000)
points = st.builds(Point, coord, coord)


def parabola(n):
    return [P(i, i * i) for i in range(n)]


def test_orient_examples():
    assert orient(P(0, 0), P(1, 0), P(0, 1)) is Orientation.CCW
    assert orient(P(0, 0), P(1, 1), P(2, 2)) is Orientation.COLLINEAR
    assert orient(P(0, 0), P(0, 1), P(1, 0)) is Orientation.CW


def test_orient_overflow_is_loud():
    big = 1 << 40
    with pytest.raises(OverflowError):
        orient(P(-big, -big), P(big, -big), P(0, big))


def test_check_point_limits():
    assert check_point((COORD_LIMIT, -COORD_LIMIT)) == P(COORD_LIMIT, -COORD_LIMIT)
    with pytest.raises(OverflowError):
        check_point((COORD_LIMIT + 1, 0))
    with pytest.raises(GeometryError):
        check_point((0.5, 1))


@given(points, points, points)
def test_orient_antisymmetric(p, q, r):
    o = orient(p, q, r)
    assert orient(q, p, r) == -o
    assert orient(p, r, q) == -o
    assert orient(r, q, p) == -o


def test_slope_less_examples():
    assert slope_less((P(0, 0), P(1, 1)), (P(0, 0), P(1, 2)))
    assert not slope_less((P(0, 0), P(1, 1)), (P(0, 0), P(1, 1)))
    assert not slope_less((P(0, 0), P(0, 1)), (P(0, 0), P(1, 5)))
    assert slope_less((P(0, 0), P(1, 5)), (P(0, 0), P(0, 1)))


def _slope(seg):
    (ax, ay), (bx, by) = seg
    return None if ax == bx else Fraction(by - ay, bx - ax)


@given(points, points, points, points)
def test_slope_less_matches_fractions(a, b, c, d):
    if a == b or c == d:
        return
    se, sf = _slope((a, b)), _slope((c, d))
    if se is None or sf is None:
        return
    assert slope_less((a, b), (c, d)) == (se < sf)
    assert slope_less((b, a), (c, d)) == slope_less((a, b), (c, d))
    # Exactly one of <, >, = holds.
    assert [slope_less((a, b), (c, d)), slope_less((c, d), (a, b)), se == sf].count(True) == 1


def test_segments_cross_examples():
    assert segments_cross((P(0, 0), P(2, 2)), (P(0, 2), P(2, 0)))
    assert not segments_cross((P(0, 0), P(1, 1)), (P(1, 1), P(2, 0)))
    assert not segments_cross((P(0, 0), P(1, 0)), (P(0, 1), P(1, 1)))


@given(points, points, points, points)
def test_segments_cross_symmetric(a, b, c, d):
    if a == b or c == d:
        return
    assert segments_cross((a, b), (c, d)) == segments_cross((c, d), (a, b))
    assert segments_cross((a, b), (c, d)) == segments_cross((b, a), (d, c))


def test_convex_quadrilateral_diagonals_cross_sides_do_not():
    quad = [P(0, 0), P(5, 1), P(4, 6), P(-1, 4)]
    assert segments_cross((quad[0], quad[2]), (quad[1], quad[3]))
    sides = [(quad[k], quad[(k + 1) % 4]) for k in range(4)]
    for s, t in combinations(sides, 2):
        assert not segments_cross(s, t)


def test_hulls_parabola():
    h = hulls(parabola(5))
    assert h.lower == (0, 1, 2, 3, 4)
    assert h.upper == (0, 4)
    assert h.hull == (0, 1, 2, 3, 4)


def test_hulls_square_and_triangle():
    sq = [P(0, 0), P(1, 1), P(1, 0), P(0, 1)]
    assert hulls(sq).hull == (0, 2, 1, 3)
    tri = [P(0, 0), P(6, 0), P(0, 6), P(2, 2)]
    assert sorted(hulls(tri).hull) == [0, 1, 2]
    with pytest.raises(GeometryError):
        hulls([P(0, 0)])


def _sides_oracle(pts, i, j):
    a, b = pts[i], pts[j]
    det = lambda p: (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    left = {k for k, p in enumerate(pts) if k not in (i, j) and det(p) > 0}
    right = {k for k, p in enumerate(pts) if k not in (i, j) and det(p) < 0}
    return left, right


@pytest.mark.parametrize("edge,expected", [((0, 4), set()), ((1, 3), {2}), ((0, 2), {1})])
def test_smaller_side_parabola5(edge, expected):
    pts = parabola(5)
    left, right = _sides_oracle(pts, *edge)
    assert expected in (left, right) and len(expected) == min(len(left), len(right))
    assert smaller_side(pts, edge) == expected


def test_smaller_side_tie_takes_lexicographic_smallest():
    pts = parabola(6)
    # Edge (1, 4): vertex 0 on one side with 5, vertices 2, 3 on the other.
    assert smaller_side(pts, (1, 4)) == {0, 5}


def test_smaller_side_rejects_collinear():
    with pytest.raises(GeneralPositionError):
        smaller_side([P(0, 0), P(1, 1), P(2, 2), P(0, 1)], (0, 2))


def test_smaller_side_invariants():
    pts = [P(0, 0), P(9, 1), P(13, 7), P(11, 14), P(4, 16), P(-3, 10), P(-4, 3)]
    n = len(pts)
    hull_edges = {tuple(sorted((hulls(pts).hull[k], hulls(pts).hull[(k + 1) % n]))) for k in range(n)}
    for i, j in combinations(range(n), 2):
        s = smaller_side(pts, (i, j))
        assert len(s) <= (n - 2) / 2
        if (i, j) in hull_edges:
            assert s == frozenset()
        for a, b in combinations(sorted(s), 2):
            assert len(smaller_side(pts, (a, b))) <= len(s) - 2


def test_validate_point_set():
    assert validate_point_set(parabola(6), "convex") is None
    bad = validate_point_set([P(0, 0), P(1, 1), P(2, 2), P(5, 0)], "general")
    assert bad.kind == "collinear" and bad.indices == (0, 1, 2)
    bad = validate_point_set([P(0, 0), P(6, 0), P(0, 6), P(2, 2)], "convex")
    assert bad.kind == "not_convex" and bad.indices == (3,)
    assert validate_point_set([P(0, 0), P(6, 0), P(0, 6), P(2, 2)], "general") is None
    assert validate_point_set([P(0, 0), P(0, 0)], "general").kind == "duplicate"
