"""Adversarial and baseline edge orderings for convex complete graphs."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import cmp_to_key
from typing import Sequence

from .egraph import EdgeOrdering, GeometricGraph, OrderingError, ordering_from_sequence
from .geom import GeometryError, hulls, slope_cmp, smaller_side, validate_point_set

KINDS = ("slope_divide", "side_count", "side_count_reversed", "block", "random", "lex")


@dataclass(frozen=True)
class OrderingSpec:
    kind: str
    groups: int | None = None
    group_sizes: tuple[int, ...] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise OrderingError(f"unknown ordering kind {self.kind!r}; expected one of {KINDS}")
        if self.group_sizes is not None:
            object.__setattr__(self, "group_sizes", tuple(self.group_sizes))

    @classmethod
    def from_dict(cls, d: dict) -> "OrderingSpec":
        params = d.get("params", {})
        sizes = params.get("group_sizes", d.get("group_sizes"))
        return cls(
            kind=d["kind"],
            groups=params.get("groups", d.get("groups")),
            group_sizes=tuple(sizes) if sizes is not None else None,
            seed=d.get("seed", params.get("seed", 0)),
        )

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.groups is not None:
            out["groups"] = self.groups
        if self.group_sizes is not None:
            out["group_sizes"] = list(self.group_sizes)
        if self.kind == "random":
            out["seed"] = self.seed
        return out


def _require_convex(graph: GeometricGraph) -> None:
    bad = validate_point_set(graph.points, "convex")
    if bad is not None:
        raise GeometryError(f"ordering needs points in convex position: {bad}")


def _slope_sorted(graph: GeometricGraph, edges: Sequence[int]) -> list[int]:
    def cmp(e, f):
        c = slope_cmp(graph.segment(e), graph.segment(f))
        return c if c else (e > f) - (e < f)

    return sorted(edges, key=cmp_to_key(cmp))


def lex_ordering(graph: GeometricGraph) -> EdgeOrdering:
    return EdgeOrdering(tuple(range(1, graph.m + 1)))


def random_ordering(graph: GeometricGraph, seed: int) -> EdgeOrdering:
    """Uniform permutation drawn with ``random.Random(seed)`` (MT19937)."""
    seq = list(range(graph.m))
    random.Random(seed).shuffle(seq)
    return ordering_from_sequence(graph, seq)


def slope_divide_ordering(graph: GeometricGraph) -> EdgeOrdering:
    """Recursive vertical split; cross edges above both halves, by slope.

    Vertices are split in (x, y) order, first half of size floor(k/2).
    The left half's internal edges come first, then the right half's,
    then the cross edges.
    """
    _require_convex(graph)
    order = sorted(range(graph.n), key=lambda v: graph.points[v])

    def build(vs: list[int]) -> list[int]:
        if len(vs) < 2:
            return []
        half = len(vs) // 2
        left, right = vs[:half], vs[half:]
        cross = [graph.edge_index(u, w) for u in left for w in right]
        return build(left) + build(right) + _slope_sorted(graph, cross)

    return ordering_from_sequence(graph, build(order))


def side_counts(graph: GeometricGraph, vertices: Sequence[int] | None = None) -> dict[int, int]:
    """|smaller_side(e)| for every edge inside ``vertices`` (default: all)."""
    if vertices is None:
        vertices = range(graph.n)
    vertices = list(vertices)
    pts = [graph.points[v] for v in vertices]
    out = {}
    for a in range(len(vertices)):
        for b in range(a + 1, len(vertices)):
            e = graph.edge_index(vertices[a], vertices[b])
            out[e] = len(smaller_side(pts, (a, b)))
    return out


def _side_count_sequence(graph: GeometricGraph, vertices, reversed_: bool) -> list[int]:
    counts = side_counts(graph, vertices)
    sign = -1 if reversed_ else 1
    return sorted(counts, key=lambda e: (sign * counts[e], e))


def side_count_ordering(graph: GeometricGraph, reversed: bool = False) -> EdgeOrdering:
    """Rank edges by the size of their smaller side, ties by edge index.

    The plain variant rules out large ascending trees, the reversed one
    large descending trees.
    """
    _require_convex(graph)
    return ordering_from_sequence(graph, _side_count_sequence(graph, None, reversed))


def default_block_groups(n: int) -> int:
    log_n = max(1.0, math.log2(n)) if n > 0 else 1.0
    return max(1, math.ceil(math.sqrt(n / log_n)))


def max_block_group_size(n: int) -> int:
    log_n = max(1.0, math.log2(n)) if n > 0 else 1.0
    return math.ceil(math.sqrt(n * log_n))


def block_group_sizes(n: int, spec: OrderingSpec | None = None) -> tuple[int, ...]:
    if spec is not None and spec.group_sizes is not None:
        sizes = spec.group_sizes
        if sum(sizes) != n or any(s < 1 for s in sizes):
            raise OrderingError(f"group sizes {sizes} do not partition {n} vertices")
        return tuple(sizes)
    groups = spec.groups if spec is not None and spec.groups is not None else default_block_groups(n)
    if not 1 <= groups <= n:
        raise OrderingError(f"cannot split {n} vertices into {groups} groups")
    base, extra = divmod(n, groups)
    sizes = tuple(base + 1 if k < extra else base for k in range(groups))
    overridden = spec is not None and spec.groups is not None
    if not overridden and max(sizes) > max_block_group_size(n):
        raise OrderingError(f"group size {max(sizes)} exceeds {max_block_group_size(n)}")
    return sizes


def ccw_vertex_order(graph: GeometricGraph) -> list[int]:
    """Counterclockwise hull order rotated to start at vertex 0."""
    cyc = list(hulls(graph.points).hull)
    k = cyc.index(0)
    return cyc[k:] + cyc[:k]


def block_groups(graph: GeometricGraph, spec: OrderingSpec | None = None) -> list[list[int]]:
    order = ccw_vertex_order(graph)
    groups, start = [], 0
    for size in block_group_sizes(graph.n, spec):
        groups.append(order[start:start + size])
        start += size
    return groups


def block_ordering(graph: GeometricGraph, spec: OrderingSpec | None = None) -> EdgeOrdering:
    """Red (within-group) edges below blue (between-group) edges.

    Red edges go group by group, each group ordered by the reversed
    side-count rule on its own vertices.  Blue edges follow by slope.
    """
    _require_convex(graph)
    if graph.n < 2:
        return EdgeOrdering(())
    groups = block_groups(graph, spec)
    group_of = {v: g for g, vs in enumerate(groups) for v in vs}
    seq: list[int] = []
    for vs in groups:
        seq.extend(_side_count_sequence(graph, sorted(vs), True))
    blue = [e for e, (i, j) in enumerate(graph.edges) if group_of[i] != group_of[j]]
    seq.extend(_slope_sorted(graph, blue))
    return ordering_from_sequence(graph, seq)


def edge_colors(graph: GeometricGraph, spec: OrderingSpec | None = None) -> list[str]:
    """'red' or 'blue' per edge under the block partition."""
    group_of = {v: g for g, vs in enumerate(block_groups(graph, spec)) for v in vs}
    return ["red" if group_of[i] == group_of[j] else "blue" for i, j in graph.edges]


def make_ordering(graph: GeometricGraph, spec: OrderingSpec) -> EdgeOrdering:
    if spec.kind == "slope_divide":
        return slope_divide_ordering(graph)
    if spec.kind == "side_count":
        return side_count_ordering(graph, reversed=False)
    if spec.kind == "side_count_reversed":
        return side_count_ordering(graph, reversed=True)
    if spec.kind == "block":
        return block_ordering(graph, spec)
    if spec.kind == "random":
        return random_ordering(graph, spec.seed)
    return lex_ordering(graph)
