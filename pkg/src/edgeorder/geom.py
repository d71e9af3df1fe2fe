"""Exact planar predicates on integer points.

All predicates work on Python integers, so every determinant is exact.
Coordinates are still held to ``COORD_LIMIT`` in magnitude so the same
arithmetic would fit a checked 64-bit implementation.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from enum import IntEnum
from itertools import combinations
from typing import NamedTuple, Sequence

COORD_LIMIT = 1 << 20


class GeometryError(ValueError):
    """Input violates a geometric precondition."""


class GeneralPositionError(GeometryError):
    def __init__(self, message: str, indices: tuple[int, ...] = ()):
        super().__init__(message)
        self.indices = indices


class Point(NamedTuple):
    x: int
    y: int


Segment = tuple[Point, Point]


class Orientation(IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


def check_point(p) -> Point:
    x, y = p
    if isinstance(x, (bool, float)) or isinstance(y, (bool, float)):
        raise GeometryError(f"coordinates must be integers, got {p!r}")
    try:
        x, y = operator.index(x), operator.index(y)
    except TypeError:
        raise GeometryError(f"coordinates must be integers, got {p!r}") from None
    if abs(x) > COORD_LIMIT or abs(y) > COORD_LIMIT:
        raise OverflowError(f"point {p!r} exceeds coordinate limit 2^20")
    return Point(int(x), int(y))


def as_points(points) -> tuple[Point, ...]:
    return tuple(check_point(p) for p in points)


def cross(p: Point, q: Point, r: Point) -> int:
    """Twice the signed area of triangle pqr."""
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


DET_LIMIT = 1 << 62


def orient(p: Point, q: Point, r: Point) -> Orientation:
    d = cross(p, q, r)
    if abs(d) >= DET_LIMIT:
        raise OverflowError(f"determinant of {p}, {q}, {r} exceeds 64-bit range")
    if d > 0:
        return Orientation.CCW
    if d < 0:
        return Orientation.CW
    return Orientation.COLLINEAR


def _direction(seg: Segment) -> tuple[int, int]:
    # Normalised so dx >= 0; vertical segments point up.
    (ax, ay), (bx, by) = seg
    dx, dy = bx - ax, by - ay
    if dx < 0 or (dx == 0 and dy < 0):
        dx, dy = -dx, -dy
    return dx, dy


def slope_cmp(e: Segment, f: Segment) -> int:
    """Three-way slope comparison; vertical segments are steepest."""
    dxe, dye = _direction(e)
    dxf, dyf = _direction(f)
    if dxe == 0 or dxf == 0:
        return (dxe == 0) - (dxf == 0)
    lhs, rhs = dye * dxf, dyf * dxe
    return (lhs > rhs) - (lhs < rhs)


def slope_less(e: Segment, f: Segment) -> bool:
    return slope_cmp(e, f) < 0


def segments_cross(e: Segment, f: Segment) -> bool:
    """True iff e and f meet at a point interior to both.

    Segments sharing an endpoint never cross.
    """
    a, b = e
    c, d = f
    if a == c or a == d or b == c or b == d:
        return False
    o1 = cross(a, b, c)
    o2 = cross(a, b, d)
    if (o1 > 0 and o2 > 0) or (o1 < 0 and o2 < 0) or o1 == 0 or o2 == 0:
        return False
    o3 = cross(c, d, a)
    o4 = cross(c, d, b)
    return (o3 > 0) != (o4 > 0) and o3 != 0 and o4 != 0


@dataclass(frozen=True)
class Hulls:
    hull: tuple[int, ...]
    lower: tuple[int, ...]
    upper: tuple[int, ...]


def hulls(points: Sequence[Point]) -> Hulls:
    """Convex hull by monotone chain, as indices into ``points``.

    ``hull`` runs counterclockwise from the lexicographically smallest
    point; ``lower`` and ``upper`` both run left to right.  Collinear
    boundary points are dropped.
    """
    if len(points) < 2:
        raise GeometryError("hull needs at least 2 points")
    order = sorted(range(len(points)), key=lambda i: points[i])

    def chain(idx):
        out: list[int] = []
        for i in idx:
            while len(out) >= 2 and cross(points[out[-2]], points[out[-1]], points[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper_rev = chain(reversed(order))
    hull = lower[:-1] + upper_rev[:-1]
    if len(hull) == 0:
        hull = [order[0]]
    return Hulls(tuple(hull), tuple(lower), tuple(reversed(upper_rev)))


def side_sets(points: Sequence[Point], e: tuple[int, int]) -> tuple[frozenset, frozenset]:
    """Split the other points by the supporting line of edge ``e``.

    Returns (left, right) relative to the direction e[0] -> e[1].
    """
    i, j = e
    a, b = points[i], points[j]
    left, right = [], []
    for k, p in enumerate(points):
        if k == i or k == j:
            continue
        d = cross(a, b, p)
        if d == 0:
            raise GeneralPositionError(f"points {i}, {j}, {k} are collinear", (i, j, k))
        (left if d > 0 else right).append(k)
    return frozenset(left), frozenset(right)


def smaller_side(points: Sequence[Point], e: tuple[int, int]) -> frozenset:
    """The smaller of the two point sets cut off by the line through e.

    Equal halves go to the side holding the lexicographically smallest
    point.
    """
    left, right = side_sets(points, e)
    if len(left) != len(right):
        return left if len(left) < len(right) else right
    if not left:
        return left
    smallest = min(left | right, key=lambda k: points[k])
    return left if smallest in left else right


@dataclass(frozen=True)
class PointSetViolation:
    kind: str  # "duplicate" | "collinear" | "not_convex"
    indices: tuple[int, ...]

    def __str__(self):
        return f"{self.kind} at {self.indices}"


def validate_point_set(points: Sequence[Point], mode: str = "general") -> PointSetViolation | None:
    """Return the first violation found, or None if the set is acceptable."""
    if mode not in ("general", "convex"):
        raise ValueError(f"unknown mode {mode!r}")
    seen: dict[Point, int] = {}
    for k, p in enumerate(points):
        if p in seen:
            return PointSetViolation("duplicate", (seen[p], k))
        seen[p] = k
    for i, j, k in combinations(range(len(points)), 3):
        if cross(points[i], points[j], points[k]) == 0:
            return PointSetViolation("collinear", (i, j, k))
    if mode == "convex" and len(points) >= 3:
        on_hull = set(hulls(points).hull)
        for k in range(len(points)):
            if k not in on_hull:
                return PointSetViolation("not_convex", (k,))
    return None


def require_point_set(points: Sequence[Point], mode: str = "general") -> None:
    bad = validate_point_set(points, mode)
    if bad is not None:
        raise GeneralPositionError(f"point set fails {mode} check: {bad}", bad.indices)


def in_convex_position(points: Sequence[Point]) -> bool:
    if len(points) <= 3:
        return validate_point_set(points, "general") is None
    return len(hulls(points).hull) == len(points)
