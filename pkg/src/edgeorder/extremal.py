"""Constructive lower bounds: Ramsey extraction, convex subsets, tree embedding."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Sequence

from .egraph import (
    Direction,
    EdgeOrdering,
    GeometricGraph,
    PathWitness,
    TreeWitness,
    induced,
    rank_matrix,
    validate_witness,
)
from .geom import GeometryError, Point, cross, hulls


class Color(str, Enum):
    BLUE = "blue"
    RED = "red"


@dataclass(frozen=True)
class TripleColoring:
    """Two-coloring of all triples i < j < k of positions 0..n-1.

    ``vertices[p]`` is the graph vertex at position p (x-sorted) when the
    coloring comes from an edge ordering; otherwise it is the identity.
    """

    vertices: tuple[int, ...]
    colors: dict

    @property
    def n(self) -> int:
        return len(self.vertices)

    def color(self, i: int, j: int, k: int) -> Color:
        return self.colors[(i, j, k)]

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int, int], Color]) -> "TripleColoring":
        return cls(tuple(range(n)), {t: fn(*t) for t in combinations(range(n), 3)})

    @classmethod
    def random(cls, n: int, seed: int) -> "TripleColoring":
        rng = random.Random(seed)
        return cls(tuple(range(n)), {t: rng.choice((Color.BLUE, Color.RED)) for t in combinations(range(n), 3)})


def x_order(graph: GeometricGraph) -> list[int]:
    return sorted(range(graph.n), key=lambda v: graph.points[v])


def triple_coloring_from_ordering(graph: GeometricGraph, ordering: EdgeOrdering) -> TripleColoring:
    """Blue iff rank(v_i v_j) < rank(v_j v_k) for x-sorted v_i, v_j, v_k."""
    order = x_order(graph)
    R = rank_matrix(graph, ordering)
    colors = {}
    for i, j, k in combinations(range(len(order)), 3):
        a, b, c = order[i], order[j], order[k]
        colors[(i, j, k)] = Color.BLUE if R[a][b] < R[b][c] else Color.RED
    return TripleColoring(tuple(order), colors)


# ---------------------------------------------------------------------------
# Ramsey extraction


def phase1_length_bound(n: int) -> int:
    """Largest p with 2^(p(p-1)/2) * p <= n (at least 1)."""
    p = 1
    while 2 ** ((p + 1) * p // 2) * (p + 1) <= n:
        p += 1
    return p


def ramsey_guarantee(n: int) -> int:
    """Documented lower bound on the size of the extracted monochromatic set."""
    if n < 3:
        return n
    p = phase1_length_bound(n)
    return max(3, int(math.log2(max(2, p))) // 2 + 1)


@dataclass(frozen=True)
class PrehomogeneousSequence:
    """Positions s_0 < s_1 < ... with color(s_i, s_j, s_k) = pair_color[(i, j)].

    The pair colors for the last element are undefined and absent.
    """

    positions: tuple[int, ...]
    pair_color: dict
    candidate_sizes: tuple[int, ...]


@dataclass(frozen=True)
class MonochromaticSet:
    positions: tuple[int, ...]
    color: Color
    sequence: PrehomogeneousSequence


def prehomogeneous_sequence(coloring: TripleColoring) -> PrehomogeneousSequence:
    """Greedy construction of a prehomogeneous sequence.

    Repeatedly take the smallest remaining candidate and keep the largest
    class of remaining candidates that agree on all new pair colors.
    Ties between classes go to the class with the smallest color vector
    (blue before red).
    """
    cands = list(range(coloring.n))
    chosen: list[int] = []
    pair_color: dict = {}
    sizes = [len(cands)]
    while cands:
        s = cands.pop(0)
        k = len(chosen)
        before = len(cands)
        if chosen and cands:
            classes: dict[tuple, list[int]] = {}
            for x in cands:
                key = tuple(coloring.color(c, s, x) == Color.RED for c in chosen)
                classes.setdefault(key, []).append(x)
            key = min(classes, key=lambda c: (-len(classes[c]), c))
            cands = classes[key]
            for i, red in enumerate(key):
                pair_color[(i, k)] = Color.RED if red else Color.BLUE
            if len(cands) * 2**k < before:
                raise AssertionError(f"candidate shrinkage violated at step {k}: {before} -> {len(cands)}")
        chosen.append(s)
        sizes.append(len(cands))
    return PrehomogeneousSequence(tuple(chosen), pair_color, tuple(sizes))


def is_monochromatic(coloring: TripleColoring, positions: Sequence[int]) -> Color | None:
    """Exhaustive triple scan; the common color or None."""
    seen = None
    for t in combinations(sorted(positions), 3):
        c = coloring.color(*t)
        if seen is None:
            seen = c
        elif c != seen:
            return None
    return seen if seen is not None else Color.BLUE


def ramsey_monochromatic_subset(coloring: TripleColoring) -> MonochromaticSet:
    """Large set of positions whose triples all share one color.

    Phase 1 builds a prehomogeneous sequence; phase 2 runs the greedy
    majority argument on its induced pair coloring.  The result is checked
    by a full triple scan before it is returned.
    """
    n = coloring.n
    if n < 3:
        raise ValueError("need at least 3 elements")
    seq = prehomogeneous_sequence(coloring)
    p = len(seq.positions)
    if p < phase1_length_bound(n):
        raise AssertionError(f"phase 1 produced {p} < {phase1_length_bound(n)} elements")

    # Phase 2 over sequence indices 0..p-2; index p-1 has no pair colors
    # and can always be appended.
    remaining = list(range(p - 1))
    tagged: list[tuple[int, Color | None]] = []
    while remaining:
        v = remaining.pop(0)
        if not remaining:
            tagged.append((v, None))
            break
        blue = [x for x in remaining if seq.pair_color[(v, x)] == Color.BLUE]
        red = [x for x in remaining if seq.pair_color[(v, x)] == Color.RED]
        if len(blue) >= len(red):
            tagged.append((v, Color.BLUE))
            remaining = blue
        else:
            tagged.append((v, Color.RED))
            remaining = red
    n_blue = sum(1 for _, c in tagged if c == Color.BLUE)
    n_red = sum(1 for _, c in tagged if c == Color.RED)
    color = Color.BLUE if n_blue >= n_red else Color.RED
    picked = [v for v, c in tagged if c in (color, None)] + [p - 1]
    positions = tuple(seq.positions[i] for i in picked)

    got = is_monochromatic(coloring, positions)
    if got is None:
        raise AssertionError("extracted set is not monochromatic")
    if len(positions) >= 3:
        color = got
    if len(positions) < ramsey_guarantee(n):
        raise AssertionError(f"extracted {len(positions)} < guarantee {ramsey_guarantee(n)}")
    return MonochromaticSet(positions, color, seq)


def _direction_of(color: Color) -> Direction:
    # Blue: ranks grow left to right.
    return Direction.ASCENDING if color == Color.BLUE else Direction.DESCENDING


def extract_xmonotone_path(graph: GeometricGraph, ordering: EdgeOrdering) -> PathWitness:
    if graph.n < 3:
        return PathWitness(tuple(x_order(graph)), Direction.ASCENDING)
    coloring = triple_coloring_from_ordering(graph, ordering)
    mono = ramsey_monochromatic_subset(coloring)
    verts = tuple(coloring.vertices[p] for p in mono.positions)
    witness = PathWitness(verts, _direction_of(mono.color))
    bad = validate_witness(graph, ordering, witness)
    if bad is not None:
        raise AssertionError(f"extracted path invalid: {bad}")
    return witness


# ---------------------------------------------------------------------------
# Largest convex subset


def _better(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """(size, mask) comparison: larger, then lexicographically smaller set."""
    if a[0] != b[0]:
        return a[0] > b[0]
    diff = a[1] ^ b[1]
    return bool(diff) and bool(a[1] & diff & -diff)


def largest_convex_subset(points: Sequence[Point]) -> tuple[int, ...]:
    """Maximum subset in convex position, as sorted indices.

    Dynamic programming over convex chains anchored at the polygon's
    bottom-most vertex.  Among maximum subsets the lexicographically
    smallest index tuple is returned.
    """
    n = len(points)
    if n < 3:
        raise GeometryError("need at least 3 points")
    best = (0, 0)
    for a in range(n):
        pa = points[a]
        above = [q for q in range(n) if (points[q][1], points[q][0]) > (pa[1], pa[0])]
        m = len(above)
        if m < 2 or m + 1 <= best[0] - 1:
            continue
        # Counterclockwise angular order around the anchor.
        above.sort(key=lambda q: _AngleKey(pa, points[q]))
        pts = [points[q] for q in above]
        bits = [1 << q for q in above]
        anchor_bit = 1 << a
        # dp[i][j]: best (size, mask) of a convex chain anchor -> ... -> i -> j.
        dp = [[None] * m for _ in range(m)]
        for j in range(m):
            pj = pts[j]
            for i in range(j):
                pi = pts[i]
                cand = (3, anchor_bit | bits[i] | bits[j])
                row = dp[i]
                for k in range(i):
                    prev = row[k]
                    if prev is None or prev[0] + 1 < cand[0]:
                        continue
                    if cross(pts[k], pi, pj) > 0:
                        c = (prev[0] + 1, prev[1] | bits[j])
                        if _better(c, cand):
                            cand = c
                dp[j][i] = cand
                if _better(cand, best):
                    best = cand
    # dp is stored transposed (dp[j][i] = chain ending i -> j) so that
    # row access in the inner loop walks the predecessors of i.
    mask = best[1]
    return tuple(q for q in range(n) if mask >> q & 1)


class _AngleKey:
    __slots__ = ("o", "p")

    def __init__(self, o, p):
        self.o, self.p = o, p

    def __lt__(self, other):
        return cross(self.o, self.p, other.p) > 0


def brute_force_largest_convex_subset(points: Sequence[Point]) -> tuple[int, ...]:
    """Subset enumeration from the largest size down; first hit is lex-smallest."""
    from .geom import in_convex_position

    n = len(points)
    for k in range(n, 2, -1):
        for combo in combinations(range(n), k):
            if in_convex_position([points[i] for i in combo]):
                return combo
    raise GeometryError("no 3 points in general position")


# ---------------------------------------------------------------------------
# Trees


def complete_tree_on_sequence(seq: Sequence[int]) -> list[int]:
    """Level-order node list of the recursive tree over ``seq``.

    The root is seq[0]; the left subtree uses the next (len-1)/2 entries
    and the right subtree the rest.  ``len(seq)`` must be 2^(h+1) - 1.
    """
    size = len(seq)
    height = size.bit_length() - 1
    nodes = [0] * size

    def place(slot: int, lo: int, hi: int):
        nodes[slot] = seq[lo]
        if hi - lo == 1:
            return
        half = (hi - lo - 1) // 2
        place(2 * slot + 1, lo + 1, lo + 1 + half)
        place(2 * slot + 2, lo + 1 + half, hi)

    if size != 2 ** (height + 1) - 1:
        raise ValueError(f"sequence length {size} is not of the form 2^(h+1)-1")
    place(0, 0, size)
    return nodes


def _fallback_tree(verts: Sequence[int], direction: Direction) -> TreeWitness:
    if len(verts) >= 3:
        return TreeWitness(1, tuple(verts[:3]), direction)
    return TreeWitness(0, tuple(verts[:1]), direction)


def embed_convex_monotone_tree(graph: GeometricGraph, ordering: EdgeOrdering) -> TreeWitness:
    """Monotone non-crossing complete tree on the lower or upper hull side
    of a monochromatic x-monotone vertex set.
    """
    if graph.n < 3:
        return _fallback_tree(x_order(graph), Direction.ASCENDING)
    coloring = triple_coloring_from_ordering(graph, ordering)
    mono = ramsey_monochromatic_subset(coloring)
    K = [coloring.vertices[p] for p in mono.positions]
    direction = _direction_of(mono.color)
    h = hulls(graph.points)
    lower, upper = set(h.lower), set(h.upper)
    on_lower = [v for v in K if v in lower]
    on_upper = [v for v in K if v in upper]
    side = on_lower if len(on_lower) >= len(on_upper) else on_upper
    m = len(side)
    if m < 3:
        witness = _fallback_tree(K, direction)
    else:
        height = (m + 1).bit_length() - 2
        m_trunc = 2 ** (height + 1) - 1
        witness = TreeWitness(height, tuple(complete_tree_on_sequence(side[:m_trunc])), direction)
    bad = validate_witness(graph, ordering, witness)
    if bad is not None:
        raise AssertionError(f"embedded tree invalid: {bad}")
    return witness


def extract_monotone_tree_general(graph: GeometricGraph, ordering: EdgeOrdering) -> TreeWitness:
    if graph.n < 3:
        return _fallback_tree(x_order(graph), Direction.ASCENDING)
    subset = largest_convex_subset(graph.points)
    sub, sub_order = induced(graph, ordering, subset)
    t = embed_convex_monotone_tree(sub, sub_order)
    witness = TreeWitness(t.height, tuple(subset[v] for v in t.nodes), t.direction)
    bad = validate_witness(graph, ordering, witness)
    if bad is not None:
        raise AssertionError(f"lifted tree invalid: {bad}")
    return witness
