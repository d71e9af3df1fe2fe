"""Exact searches for monotone non-crossing paths and complete binary trees.

The pruned searches share a precomputed :class:`SearchContext` (rank
table, crossing bitmasks, relaxed monotone bounds).  The ``enumerate_*``
functions are plain backtracking references with no bounds and no
symmetry breaking; they check validity with the geometric predicates
directly and exist to cross-check the pruned code.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import islice, permutations
from typing import Sequence

import numpy as np

from .egraph import (
    Direction,
    EdgeOrdering,
    GeometricGraph,
    PathWitness,
    TreeWitness,
    rank_matrix,
)
from .geom import GeometryError, Point, cross, in_convex_position, segments_cross, slope_cmp


@dataclass(frozen=True)
class SearchBudget:
    max_nodes: int | None = None
    max_seconds: float | None = None
    target: int | None = None


UNLIMITED = SearchBudget()


class _BudgetExceeded(Exception):
    pass


class _Meter:
    __slots__ = ("budget", "nodes", "start", "exhausted")

    def __init__(self, budget: SearchBudget):
        self.budget = budget
        self.nodes = 0
        self.start = time.monotonic()
        self.exhausted = False

    def tick(self):
        self.nodes += 1
        b = self.budget
        if b.max_nodes is not None and self.nodes > b.max_nodes:
            self.exhausted = True
            raise _BudgetExceeded
        if b.max_seconds is not None and self.nodes & 1023 == 0:
            if time.monotonic() - self.start > b.max_seconds:
                self.exhausted = True
                raise _BudgetExceeded


@dataclass(frozen=True)
class PathResult:
    witness: PathWitness
    exact: bool
    nodes: int

    @property
    def length(self) -> int:
        return self.witness.length


@dataclass(frozen=True)
class TreeResult:
    witness: TreeWitness
    exact: bool
    nodes: int

    @property
    def height(self) -> int:
        return self.witness.height

    @property
    def size(self) -> int:
        return self.witness.size


class SearchContext:
    """Per (graph, ordering) tables shared by the searches."""

    def __init__(self, graph: GeometricGraph, ordering: EdgeOrdering):
        self.graph = graph
        self.n = n = graph.n
        self.R = rank_matrix(graph, ordering)
        self.E = [[-1] * n for _ in range(n)]
        for e, (i, j) in enumerate(graph.edges):
            self.E[i][j] = self.E[j][i] = e
        segs = [graph.segment(e) for e in range(graph.m)]
        masks = [0] * graph.m
        for e in range(graph.m):
            se = segs[e]
            for f in range(e + 1, graph.m):
                if segments_cross(se, segs[f]):
                    masks[e] |= 1 << f
                    masks[f] |= 1 << e
        self.crossmask = masks

    def reversed_ranks(self) -> list[list[int]]:
        top = self.graph.m + 1
        return [[top - r if r else 0 for r in row] for row in self.R]


# ---------------------------------------------------------------------------
# Paths


def _walk_bounds(n: int, R: list[list[int]]) -> list[list[int]]:
    """W[u][v]: edges in the longest rank-increasing walk starting u -> v."""
    edges = sorted(((R[u][v], u, v) for u in range(n) for v in range(u + 1, n)), reverse=True)
    out = [0] * n
    W = [[0] * n for _ in range(n)]
    for _, u, v in edges:
        fwd, back = 1 + out[v], 1 + out[u]
        W[u][v], W[v][u] = fwd, back
        out[u] = max(out[u], fwd)
        out[v] = max(out[v], back)
    return W


def longest_monotone_noncrossing_path(
    graph: GeometricGraph,
    ordering: EdgeOrdering,
    budget: SearchBudget = UNLIMITED,
    context: SearchContext | None = None,
) -> PathResult:
    """Longest monotone non-crossing path by branch and bound.

    Only ascending paths are searched; a descending path is an ascending
    one read backwards.  The witness is the lexicographically smallest
    vertex sequence among maximum ascending paths.
    """
    n = graph.n
    if n == 0:
        return PathResult(PathWitness(()), True, 0)
    if n == 1:
        return PathResult(PathWitness((0,)), True, 0)
    ctx = context or SearchContext(graph, ordering)
    R, E, X = ctx.R, ctx.E, ctx.crossmask
    W = _walk_bounds(n, R)
    nbrs = [[w for w in range(n) if w != v] for v in range(n)]
    meter = _Meter(budget)
    best_len = 0
    best_path: list[int] = [0]
    path: list[int] = []
    target = budget.target

    def dfs(v: int, r: int, vmask: int, emask: int):
        nonlocal best_len, best_path
        meter.tick()
        length = len(path) - 1
        if length > best_len:
            best_len = length
            best_path = list(path)
            if target is not None and best_len >= target:
                raise _BudgetExceeded
        Rv, Wv, Ev = R[v], W[v], E[v]
        for w in nbrs[v]:
            rw = Rv[w]
            if rw <= r or vmask >> w & 1 or length + Wv[w] <= best_len:
                continue
            e = Ev[w]
            if X[e] & emask:
                continue
            path.append(w)
            dfs(w, rw, vmask | 1 << w, emask | 1 << e)
            path.pop()

    exact = True
    try:
        for u in range(n):
            path.append(u)
            dfs(u, 0, 1 << u, 0)
            path.pop()
    except _BudgetExceeded:
        exact = False
    return PathResult(PathWitness(tuple(best_path), Direction.ASCENDING), exact, meter.nodes)


def enumerate_longest_path(graph: GeometricGraph, ordering: EdgeOrdering) -> PathWitness:
    """Reference: every simple ascending non-crossing path, no bounds.

    Returns the lexicographically smallest longest one.
    """
    n = graph.n
    if n <= 1:
        return PathWitness(tuple(range(n)))
    pts = graph.points

    def rank(u, v):
        return ordering.ranks[graph.edge_index(u, v)]

    best: list[int] = [0]

    def grow(path: list[int], segs: list):
        nonlocal best
        if len(path) > len(best):
            best = list(path)
        v = path[-1]
        for w in range(n):
            if w in path:
                continue
            if len(path) >= 2 and not rank(path[-2], v) < rank(v, w):
                continue
            seg = (pts[v], pts[w])
            if any(segments_cross(seg, s) for s in segs):
                continue
            path.append(w)
            segs.append(seg)
            grow(path, segs)
            segs.pop()
            path.pop()

    for u in range(n):
        grow([u], [])
    return PathWitness(tuple(best), Direction.ASCENDING)


# ---------------------------------------------------------------------------
# Trees


def _tree_bounds(n: int, R: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Relaxed heights ignoring crossings and repeated vertices.

    G[u][v]: tallest ascending complete tree hanging below edge u -> v,
    rooted at v.  top[v]: tallest rooted at v with no incoming edge.
    """
    edges = sorted(((R[u][v], u, v) for u in range(n) for v in range(u + 1, n)), reverse=True)
    best2 = [[-1, -1] for _ in range(n)]  # two largest child heights seen at each vertex

    def height_at(v):
        a, b = best2[v]
        return b + 1 if b >= 0 else 0

    def push(v, h):
        a, b = best2[v]
        if h > a:
            best2[v] = [h, a]
        elif h > b:
            best2[v] = [a, h]

    G = [[0] * n for _ in range(n)]
    for _, u, v in edges:
        gv, gu = height_at(v), height_at(u)
        G[u][v], G[v][u] = gv, gu
        push(u, gv)
        push(v, gu)
    return G, [height_at(v) for v in range(n)]


def _find_tree(n, R, X, E, height: int, meter: _Meter) -> list[int] | None:
    """Level-order vertex list of an ascending tree of ``height`` or None."""
    size = 2 ** (height + 1) - 1
    internal = 2**height - 1
    if size > n:
        return None
    G, top = _tree_bounds(n, R)
    depth = [(k + 1).bit_length() - 1 for k in range(size)]
    nodes = [-1] * size
    in_rank = [0] * size

    def place(k: int, used: int, emask: int) -> bool:
        meter.tick()
        if k == internal:
            return True
        v = nodes[k]
        need = height - depth[k] - 1
        r0 = in_rank[k]
        Rv, Gv, Ev = R[v], G[v], E[v]
        cands = [
            w for w in range(n)
            if not used >> w & 1 and Rv[w] > r0 and Gv[w] >= need and not X[Ev[w]] & emask
        ]
        for ia in range(len(cands)):
            a = cands[ia]
            ea = Ev[a]
            for ib in range(ia + 1, len(cands)):
                b = cands[ib]
                eb = Ev[b]
                if X[eb] & (1 << ea):
                    continue
                c1, c2 = 2 * k + 1, 2 * k + 2
                nodes[c1], nodes[c2] = a, b
                in_rank[c1], in_rank[c2] = Rv[a], Rv[b]
                if place(k + 1, used | 1 << a | 1 << b, emask | 1 << ea | 1 << eb):
                    return True
        nodes[2 * k + 1] = nodes[2 * k + 2] = -1
        return False

    for root in range(n):
        if top[root] < height:
            continue
        nodes[0] = root
        if place(0, 1 << root, 0):
            return list(nodes)
    return None


def _largest_tree_one_direction(ctx: SearchContext, R, meter: _Meter, target: int | None):
    n = ctx.n
    best = [0] if n else []
    best_h = 0
    h = 1
    while 2 ** (h + 1) - 1 <= n:
        found = _find_tree(n, R, ctx.crossmask, ctx.E, h, meter)
        if found is None:
            break
        best, best_h = found, h
        if target is not None and len(best) >= target:
            raise _TargetReached(best_h, best)
        h += 1
    return best_h, best


class _TargetReached(Exception):
    def __init__(self, height, nodes):
        self.height, self.nodes = height, nodes


def largest_monotone_noncrossing_complete_tree(
    graph: GeometricGraph,
    ordering: EdgeOrdering,
    direction: str | Direction = "either",
    budget: SearchBudget = UNLIMITED,
    context: SearchContext | None = None,
) -> TreeResult:
    """Largest monotone non-crossing complete binary tree.

    ``direction`` is ``ascending``, ``descending`` or ``either``; ties
    under ``either`` go to ascending.  Heights are tried upward until one
    fails, which is exact since dropping the leaves of a tree of height
    h + 1 leaves a valid tree of height h.
    """
    direction = direction.value if isinstance(direction, Direction) else direction
    if direction not in ("ascending", "descending", "either"):
        raise ValueError(f"unknown direction {direction!r}")
    if graph.n == 0:
        raise ValueError("empty graph")
    ctx = context or SearchContext(graph, ordering)
    meter = _Meter(budget)
    dirs = [Direction.ASCENDING, Direction.DESCENDING] if direction == "either" else [Direction(direction)]
    results: list[tuple[int, list[int], Direction]] = []
    exact = True
    for d in dirs:
        R = ctx.R if d is Direction.ASCENDING else ctx.reversed_ranks()
        try:
            h, nodes = _largest_tree_one_direction(ctx, R, meter, budget.target)
        except _TargetReached as hit:
            results.append((hit.height, hit.nodes, d))
            exact = False
            break
        except _BudgetExceeded:
            exact = False
            break
        results.append((h, nodes, d))
    if not results:
        results.append((0, [0], dirs[0]))
    h, nodes, d = max(results, key=lambda t: t[0])  # first maximum wins
    return TreeResult(TreeWitness(h, tuple(nodes), d), exact, meter.nodes)


def enumerate_largest_tree(graph: GeometricGraph, ordering: EdgeOrdering, direction: str = "ascending") -> TreeWitness:
    """Reference: plain backtracking over ordered child assignments."""
    n = graph.n
    d = Direction(direction)
    pts = graph.points

    def rank(u, v):
        r = ordering.ranks[graph.edge_index(u, v)]
        return r if d is Direction.ASCENDING else -r

    def exists(height: int):
        size = 2 ** (height + 1) - 1
        nodes = [-1] * size

        def fill(k, segs):
            if k == size:
                return True
            parent = nodes[(k - 1) // 2]
            for w in range(n):
                if w in nodes[:k]:
                    continue
                if k >= 3:
                    grand = nodes[((k - 1) // 2 - 1) // 2]
                    if not rank(grand, parent) < rank(parent, w):
                        continue
                seg = (pts[parent], pts[w])
                if any(segments_cross(seg, s) for s in segs):
                    continue
                nodes[k] = w
                if fill(k + 1, segs + [seg]):
                    return True
            nodes[k] = -1
            return False

        for root in range(n):
            nodes[0] = root
            if size == 1 or fill(1, []):
                return list(nodes)
        return None

    best = TreeWitness(0, (0,), d)
    h = 1
    while 2 ** (h + 1) - 1 <= n:
        found = exists(h)
        if found is None:
            break
        best = TreeWitness(h, tuple(found), d)
        h += 1
    return best


# ---------------------------------------------------------------------------
# Alternating slope chains


def linearly_separated(U: Sequence[Point], V: Sequence[Point]) -> bool:
    """Strict linear separability for point sets in general position.

    Separable sets admit a critical support line through one point of
    each set with the rest of U strictly on one side and the rest of V
    strictly on the other.
    """
    if not U or not V:
        return True
    for u in U:
        for v in V:
            su = {(cross(u, v, p) > 0) - (cross(u, v, p) < 0) for p in U if p != u}
            sv = {(cross(u, v, p) > 0) - (cross(u, v, p) < 0) for p in V if p != v}
            if 0 in su or 0 in sv:
                continue
            if len(su) <= 1 and len(sv) <= 1 and (not su or not sv or su != sv):
                return True
    return False


def max_alternating_slope_chain(U: Sequence[Point], V: Sequence[Point]) -> list[Point]:
    """Longest non-crossing chain alternating between U and V whose edge
    slopes strictly increase along the chain.
    """
    U, V = [Point(*p) for p in U], [Point(*p) for p in V]
    if not U or not V:
        raise GeometryError("both sides must be nonempty")
    if not in_convex_position(U + V):
        raise GeometryError("U and V together must be in convex position")
    if not linearly_separated(U, V):
        raise GeometryError("U and V are not separated by a line")
    side = {p: 0 for p in U} | {p: 1 for p in V}
    best: list[Point] = []

    def grow(chain: list[Point], segs: list):
        nonlocal best
        if len(chain) > len(best):
            best = list(chain)
        last = chain[-1]
        for q in (V if side[last] == 0 else U):
            if q in chain:
                continue
            seg = (last, q)
            if segs and slope_cmp(segs[-1], seg) >= 0:
                continue
            if any(segments_cross(seg, s) for s in segs):
                continue
            chain.append(q)
            segs.append(seg)
            grow(chain, segs)
            segs.pop()
            chain.pop()

    for start in U + V:
        grow([start], [])
    return best


# ---------------------------------------------------------------------------
# Minimax over all orderings


def noncrossing_paths(graph: GeometricGraph) -> list[tuple[int, ...]]:
    """Edge-index sequences of all simple non-crossing paths, one per
    undirected path (first vertex < last vertex)."""
    n = graph.n
    out = []

    def grow(verts, edges, segs):
        if len(verts) >= 2 and verts[0] < verts[-1]:
            out.append(tuple(edges))
        v = verts[-1]
        for w in range(n):
            if w in verts:
                continue
            seg = (graph.points[v], graph.points[w])
            if any(segments_cross(seg, s) for s in segs):
                continue
            grow(verts + [w], edges + [graph.edge_index(v, w)], segs + [seg])

    for u in range(n):
        grow([u], [], [])
    return out


def noncrossing_trees(graph: GeometricGraph, height: int) -> list[list[tuple[int, ...]]]:
    """Root-to-leaf edge chains of every non-crossing complete tree of
    ``height`` (canonical child order)."""
    n = graph.n
    size = 2 ** (height + 1) - 1
    out = []
    nodes = [-1] * size

    def fill(k, segs):
        if k == size:
            chains = []
            for leaf in range(2**height - 1, size):
                path, j = [], leaf
                while j:
                    path.append(graph.edge_index(nodes[(j - 1) // 2], nodes[j]))
                    j = (j - 1) // 2
                chains.append(tuple(reversed(path)))
            out.append(chains)
            return
        parent = nodes[(k - 1) // 2]
        for w in range(n):
            if w in nodes[:k]:
                continue
            if k % 2 == 0 and w < nodes[k - 1]:
                continue
            seg = (graph.points[parent], graph.points[w])
            if any(segments_cross(seg, s) for s in segs):
                continue
            nodes[k] = w
            fill(k + 1, segs + [seg])
        nodes[k] = -1

    for root in range(n):
        nodes[0] = root
        fill(1, [])
    return out


@dataclass(frozen=True)
class MinimaxResult:
    value: int
    ordering: EdgeOrdering
    orderings_checked: int


MINIMAX_STATISTICS = ("path", "tree_either", "tree_ascending")
MAX_MINIMAX_EDGES = 10


def _monotone_rows(P: np.ndarray, chain: tuple[int, ...], ascending_only: bool) -> np.ndarray:
    cols = P[:, list(chain)]
    d = np.diff(cols, axis=1)
    asc = np.all(d > 0, axis=1)
    if ascending_only:
        return asc
    return asc | np.all(d < 0, axis=1)


def statistic_values(graph: GeometricGraph, statistic: str, P: np.ndarray) -> np.ndarray:
    """Statistic for every row of the rank matrix ``P`` (rows = orderings)."""
    rows = P.shape[0]
    if statistic == "path":
        val = np.full(rows, 1 if graph.m else 0, dtype=np.int16)
        for seq in noncrossing_paths(graph):
            if len(seq) < 2:
                continue
            ok = _monotone_rows(P, seq, False)
            np.maximum(val, np.where(ok, len(seq), 0).astype(np.int16), out=val)
        return val
    if statistic in ("tree_either", "tree_ascending"):
        val = np.ones(rows, dtype=np.int16)
        h = 1
        while 2 ** (h + 1) - 1 <= graph.n:
            size = 2 ** (h + 1) - 1
            for chains in noncrossing_trees(graph, h):
                asc = np.ones(rows, dtype=bool)
                desc = np.ones(rows, dtype=bool)
                for ch in chains:
                    if len(ch) < 2:
                        continue
                    d = np.diff(P[:, list(ch)], axis=1)
                    asc &= np.all(d > 0, axis=1)
                    desc &= np.all(d < 0, axis=1)
                ok = asc if statistic == "tree_ascending" else asc | desc
                np.maximum(val, np.where(ok, size, 0).astype(np.int16), out=val)
            h += 1
        return val
    raise ValueError(f"unknown statistic {statistic!r}")


def minimax_over_orderings(graph: GeometricGraph, statistic: str = "path", chunk: int = 1 << 18) -> MinimaxResult:
    """Minimum of the statistic over all m! edge orderings.

    Orderings are enumerated as rank tuples in lexicographic order; the
    reported ordering is the first one attaining the minimum.  Path values
    are lengths (edges), tree values are sizes (vertices).
    """
    if statistic not in MINIMAX_STATISTICS:
        raise ValueError(f"unknown statistic {statistic!r}")
    m = graph.m
    if m > MAX_MINIMAX_EDGES:
        raise ValueError(f"{m} edges is too many for full enumeration (max {MAX_MINIMAX_EDGES})")
    perms = permutations(range(1, m + 1))
    best_val, best_ranks, total = None, None, 0
    while True:
        block = list(islice(perms, chunk))
        if not block:
            break
        P = np.array(block, dtype=np.int8).reshape(len(block), m)
        vals = statistic_values(graph, statistic, P)
        k = int(np.argmin(vals))
        if best_val is None or vals[k] < best_val:
            best_val, best_ranks = int(vals[k]), tuple(int(x) for x in P[k])
        total += len(block)
    return MinimaxResult(best_val, EdgeOrdering(best_ranks), total)


# ---------------------------------------------------------------------------
# Block ordering structure


def block_structure_violations(
    graph: GeometricGraph,
    ordering: EdgeOrdering,
    groups: Sequence[Sequence[int]],
    witness: TreeWitness,
) -> list[str]:
    """Structural checks on a descending tree under a block ordering.

    Along every root-to-leaf path the blue (between-group) edges must all
    come before the red (within-group) ones, and for every pair of groups
    the blue tree edges between them must form at most one component.
    Returns human-readable violations; empty means all checks pass.
    """
    group_of = {v: g for g, vs in enumerate(groups) for v in vs}
    out = []
    for path in witness.root_to_leaf_paths():
        colors = ["red" if group_of[a] == group_of[b] else "blue" for a, b in zip(path, path[1:])]
        seen_red = False
        for a, b, c in zip(path, path[1:], colors):
            if c == "red":
                seen_red = True
            elif seen_red:
                out.append(f"blue edge {(a, b)} below a red edge on path {path}")
                break
    pair_edges: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for a, b in witness.edge_pairs():
        ga, gb = group_of[a], group_of[b]
        if ga != gb:
            pair_edges.setdefault((min(ga, gb), max(ga, gb)), []).append((a, b))
    for key, edges in sorted(pair_edges.items()):
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                x = parent[x]
            return x

        for a, b in edges:
            parent[find(a)] = find(b)
        comps = {find(v) for e in edges for v in e}
        if len(comps) > 1:
            out.append(f"groups {key}: blue edges form {len(comps)} components")
    return out
