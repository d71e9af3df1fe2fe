"""Edge-ordered geometric graphs, monotone witnesses and their validation."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Any, Sequence, Union

from .geom import GeometryError, Point, as_points, require_point_set, segments_cross


class Direction(str, Enum):
    """Sense of a monotone structure.

    ASCENDING means edge ranks strictly increase along the traversal
    (away from the root for trees), DESCENDING that they strictly decrease.
    """

    ASCENDING = "ascending"
    DESCENDING = "descending"

    def flipped(self) -> "Direction":
        return Direction.DESCENDING if self is Direction.ASCENDING else Direction.ASCENDING


class OrderingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GeometricGraph:
    """Complete straight-line graph on points in general position.

    Edge ``e`` is the e-th pair (i, j), i < j, in lexicographic order.
    """

    points: tuple[Point, ...]
    edges: tuple[tuple[int, int], ...]
    complete: bool = True

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _index(self) -> dict[tuple[int, int], int]:
        return {e: k for k, e in enumerate(self.edges)}

    def edge_index(self, u: int, v: int) -> int:
        if u > v:
            u, v = v, u
        try:
            return self._index[(u, v)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def segment(self, e: int):
        i, j = self.edges[e]
        return self.points[i], self.points[j]

    def __eq__(self, other):
        return isinstance(other, GeometricGraph) and self.points == other.points and self.edges == other.edges

    def __hash__(self):
        return hash((self.points, self.edges))


def complete_edges(n: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def build_complete_graph(points) -> GeometricGraph:
    pts = as_points(points)
    require_point_set(pts, "general")
    return GeometricGraph(pts, complete_edges(len(pts)), True)


@dataclass(frozen=True)
class EdgeOrdering:
    """ranks[e] is the rank (1..m) of edge e; rank 1 is the smallest edge."""

    ranks: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.ranks)

    def reversed(self) -> "EdgeOrdering":
        m = len(self.ranks)
        return EdgeOrdering(tuple(m + 1 - r for r in self.ranks))

    def edges_by_rank(self) -> list[int]:
        out = [0] * len(self.ranks)
        for e, r in enumerate(self.ranks):
            out[r - 1] = e
        return out


def make_edge_ordering(graph: GeometricGraph, ranks: Sequence[int]) -> EdgeOrdering:
    ranks = tuple(ranks)
    if len(ranks) != graph.m:
        raise OrderingError(f"expected {graph.m} ranks, got {len(ranks)}")
    seen: set[int] = set()
    for e, r in enumerate(ranks):
        if isinstance(r, bool) or not isinstance(r, int):
            raise OrderingError(f"rank {r!r} of edge {e} is not an integer")
        if not 1 <= r <= graph.m:
            raise OrderingError(f"rank {r} of edge {e} is out of range 1..{graph.m}")
        if r in seen:
            raise OrderingError(f"duplicate rank {r} at edge {e}")
        seen.add(r)
    return EdgeOrdering(ranks)


def ordering_from_sequence(graph: GeometricGraph, edge_sequence: Sequence[int]) -> EdgeOrdering:
    """Ordering whose k-th smallest edge is ``edge_sequence[k]``."""
    ranks = [0] * graph.m
    for r, e in enumerate(edge_sequence, start=1):
        ranks[e] = r
    return make_edge_ordering(graph, ranks)


def rank_matrix(graph: GeometricGraph, ordering: EdgeOrdering) -> list[list[int]]:
    """n x n table of ranks, 0 on the diagonal."""
    n = graph.n
    R = [[0] * n for _ in range(n)]
    for (i, j), r in zip(graph.edges, ordering.ranks):
        R[i][j] = R[j][i] = r
    return R


def induced(graph: GeometricGraph, ordering: EdgeOrdering | None, vertices: Sequence[int]):
    """Complete sub-drawing on ``vertices`` with the induced relative order.

    Vertex k of the subgraph is ``vertices[k]`` of the original.
    """
    sub = GeometricGraph(tuple(graph.points[v] for v in vertices), complete_edges(len(vertices)), True)
    if ordering is None:
        return sub, None
    orig = [ordering.ranks[graph.edge_index(vertices[i], vertices[j])] for i, j in sub.edges]
    by_rank = sorted(range(len(orig)), key=orig.__getitem__)
    ranks = [0] * len(orig)
    for r, e in enumerate(by_rank, start=1):
        ranks[e] = r
    return sub, EdgeOrdering(tuple(ranks))


@dataclass(frozen=True)
class PathWitness:
    vertices: tuple[int, ...]
    direction: Direction = Direction.ASCENDING

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "direction", Direction(self.direction))

    @property
    def length(self) -> int:
        return max(len(self.vertices) - 1, 0)

    def edge_pairs(self) -> list[tuple[int, int]]:
        v = self.vertices
        return list(zip(v, v[1:]))

    def reversed(self) -> "PathWitness":
        return PathWitness(tuple(reversed(self.vertices)), self.direction.flipped())


@dataclass(frozen=True)
class TreeWitness:
    """Complete binary tree; ``nodes`` lists vertices in level order.

    Node k has children 2k+1 and 2k+2.
    """

    height: int
    nodes: tuple[int, ...]
    direction: Direction = Direction.ASCENDING

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "direction", Direction(self.direction))
        if self.height < 0 or len(self.nodes) != 2 ** (self.height + 1) - 1:
            raise ValueError(f"height {self.height} needs {2 ** (self.height + 1) - 1} nodes, got {len(self.nodes)}")

    @property
    def size(self) -> int:
        return len(self.nodes)

    def edge_pairs(self) -> list[tuple[int, int]]:
        """(parent, child) pairs in level order of the child."""
        return [(self.nodes[(k - 1) // 2], self.nodes[k]) for k in range(1, len(self.nodes))]

    def root_to_leaf_paths(self) -> list[tuple[int, ...]]:
        first_leaf = 2**self.height - 1
        out = []
        for leaf in range(first_leaf, len(self.nodes)):
            path = []
            k = leaf
            while True:
                path.append(self.nodes[k])
                if k == 0:
                    break
                k = (k - 1) // 2
            out.append(tuple(reversed(path)))
        return out


Witness = Union[PathWitness, TreeWitness]


@dataclass(frozen=True)
class WitnessViolation:
    kind: str  # "repeated_vertex" | "not_an_edge" | "not_monotone" | "crossing"
    detail: tuple = field(default=())

    def __str__(self):
        return f"{self.kind}: {self.detail}"


def _monotone_ok(ranks: Sequence[int], direction: Direction) -> int | None:
    """Index of the first offending step, or None."""
    for k in range(len(ranks) - 1):
        if direction is Direction.ASCENDING and not ranks[k] < ranks[k + 1]:
            return k
        if direction is Direction.DESCENDING and not ranks[k] > ranks[k + 1]:
            return k
    return None


def validate_witness(graph: GeometricGraph, ordering: EdgeOrdering, witness: Witness) -> WitnessViolation | None:
    """Check a path or tree against ``graph`` and ``ordering``.

    Returns None when the witness is a valid monotone non-crossing
    structure in its stated direction, otherwise the first violation.
    """
    verts = witness.vertices if isinstance(witness, PathWitness) else witness.nodes
    for v in verts:
        if not 0 <= v < graph.n:
            raise IndexError(f"vertex {v} out of range for n={graph.n}")
    if len(set(verts)) != len(verts):
        dup = next(v for v in verts if verts.count(v) > 1)
        return WitnessViolation("repeated_vertex", (dup,))

    pairs = witness.edge_pairs()
    for u, v in pairs:
        if (min(u, v), max(u, v)) not in graph._index:
            return WitnessViolation("not_an_edge", ((u, v),))

    def rank(u, v):
        return ordering.ranks[graph.edge_index(u, v)]

    if isinstance(witness, PathWitness):
        chains = [verts]
    else:
        chains = witness.root_to_leaf_paths()
    for chain in chains:
        steps = list(zip(chain, chain[1:]))
        bad = _monotone_ok([rank(u, v) for u, v in steps], witness.direction)
        if bad is not None:
            return WitnessViolation("not_monotone", (steps[bad], steps[bad + 1]))

    segs = [(graph.points[u], graph.points[v]) for u, v in pairs]
    for a in range(len(pairs)):
        for b in range(a + 1, len(pairs)):
            if segments_cross(segs[a], segs[b]):
                return WitnessViolation("crossing", (pairs[a], pairs[b]))
    return None


# ---------------------------------------------------------------------------
# Codec.  Documents are JSON objects written one top-level key per line with
# sorted keys, which makes the encoding canonical.


class CodecError(ValueError):
    pass


@dataclass(frozen=True)
class GraphDocument:
    graph: GeometricGraph
    ordering: EdgeOrdering | None = None
    meta: dict | None = None


def dumps_canonical(doc: dict[str, Any]) -> str:
    lines = [f"  {json.dumps(k)}: {json.dumps(doc[k], sort_keys=True, separators=(', ', ': '))}" for k in sorted(doc)]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def _load_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CodecError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise CodecError("line 1: document must be a JSON object")
    return obj


def _int_list(obj: dict, key: str) -> list[int]:
    val = obj[key]
    if not isinstance(val, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in val):
        raise CodecError(f"field {key!r}: expected an array of integers")
    return val


def _parse_points(obj: dict) -> tuple[Point, ...]:
    if "points" not in obj:
        raise CodecError("field 'points': missing")
    raw = obj["points"]
    if not isinstance(raw, list):
        raise CodecError("field 'points': expected an array of [x, y] pairs")
    pts = []
    for k, p in enumerate(raw):
        if not (isinstance(p, list) and len(p) == 2):
            raise CodecError(f"field 'points'[{k}]: expected [x, y], got {p!r}")
        try:
            pts.append(as_points([p])[0])
        except (GeometryError, OverflowError) as exc:
            raise CodecError(f"field 'points'[{k}]: {exc}") from None
    return tuple(pts)


def graph_to_dict(graph: GeometricGraph, ordering: EdgeOrdering | None = None, meta: dict | None = None) -> dict:
    doc: dict[str, Any] = {"points": [[p.x, p.y] for p in graph.points]}
    if ordering is not None:
        doc["ranks"] = list(ordering.ranks)
    if meta is not None:
        doc["meta"] = meta
    return doc


def encode(graph: GeometricGraph, ordering: EdgeOrdering | None = None, meta: dict | None = None) -> str:
    return dumps_canonical(graph_to_dict(graph, ordering, meta))


def graph_from_dict(obj: dict) -> GraphDocument:
    pts = _parse_points(obj)
    try:
        graph = build_complete_graph(pts)
    except GeometryError as exc:
        raise CodecError(f"field 'points': {exc}") from None
    ordering = None
    if "ranks" in obj:
        ranks = _int_list(obj, "ranks")
        try:
            ordering = make_edge_ordering(graph, ranks)
        except OrderingError as exc:
            raise CodecError(f"field 'ranks': {exc}") from None
    meta = obj.get("meta")
    if meta is not None and not isinstance(meta, dict):
        raise CodecError("field 'meta': expected an object")
    return GraphDocument(graph, ordering, meta)


def decode(text: str) -> GraphDocument:
    return graph_from_dict(_load_json(text))


def witness_to_dict(witness: Witness) -> dict:
    if isinstance(witness, PathWitness):
        return {"kind": "path", "direction": witness.direction.value, "vertices": list(witness.vertices)}
    return {
        "kind": "tree",
        "direction": witness.direction.value,
        "height": witness.height,
        "nodes": list(witness.nodes),
    }


def witness_from_dict(obj: dict) -> Witness:
    kind = obj.get("kind")
    try:
        direction = Direction(obj.get("direction"))
    except ValueError:
        raise CodecError(f"field 'direction': expected ascending|descending, got {obj.get('direction')!r}") from None
    if kind == "path":
        if "vertices" not in obj:
            raise CodecError("field 'vertices': missing")
        return PathWitness(tuple(_int_list(obj, "vertices")), direction)
    if kind == "tree":
        if "nodes" not in obj or "height" not in obj:
            raise CodecError("fields 'height' and 'nodes' are required for trees")
        height = obj["height"]
        if isinstance(height, bool) or not isinstance(height, int):
            raise CodecError("field 'height': expected an integer")
        try:
            return TreeWitness(height, tuple(_int_list(obj, "nodes")), direction)
        except ValueError as exc:
            raise CodecError(f"field 'nodes': {exc}") from None
    raise CodecError(f"field 'kind': expected path|tree, got {kind!r}")


def encode_witness(
    witness: Witness,
    graph: GeometricGraph | None = None,
    ordering: EdgeOrdering | None = None,
    meta: dict | None = None,
) -> str:
    """Witness document; embedding the graph makes it self-validating."""
    doc = witness_to_dict(witness)
    if graph is not None:
        doc.update(graph_to_dict(graph, ordering, meta))
    elif meta is not None:
        doc["meta"] = meta
    return dumps_canonical(doc)


def decode_witness(text: str) -> tuple[Witness, GraphDocument | None]:
    obj = _load_json(text)
    witness = witness_from_dict(obj)
    graph_doc = graph_from_dict(obj) if "points" in obj else None
    return witness, graph_doc
