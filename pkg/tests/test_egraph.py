import json

import pytest
from hypothesis import given, settings, strategies as st

from edgeorder.egraph import (
    CodecError,
    Direction,
    EdgeOrdering,
    OrderingError,
    PathWitness,
    TreeWitness,
    build_complete_graph,
    decode,
    decode_witness,
    encode,
    encode_witness,
    induced,
    make_edge_ordering,
    validate_witness,
)
from edgeorder.geom import GeneralPositionError, Point
from edgeorder.orderings import random_ordering
from edgeorder.search import largest_monotone_noncrossing_complete_tree, longest_monotone_noncrossing_path

PARABOLA5 = [(i, i * i) for i in range(5)]
QUAD = [(0, 0), (4, 0), (5, 4), (1, 5)]  # convex, counterclockwise


def test_build_complete_graph():
    g = build_complete_graph([(0, 0), (1, 0), (0, 1)])
    assert g.m == 3
    g = build_complete_graph(PARABOLA5)
    assert g.m == 10 and g.edges[0] == (0, 1)
    assert build_complete_graph(PARABOLA5) == g
    with pytest.raises(GeneralPositionError):
        build_complete_graph([(0, 0), (1, 1), (2, 2)])


def test_edge_index_bijective():
    g = build_complete_graph(PARABOLA5)
    for e, (i, j) in enumerate(g.edges):
        assert g.edge_index(i, j) == g.edge_index(j, i) == e
    with pytest.raises(KeyError):
        g.edge_index(2, 2)


def test_make_edge_ordering():
    g = build_complete_graph([(0, 0), (1, 0), (0, 1)])
    assert make_edge_ordering(g, [1, 2, 3]).ranks == (1, 2, 3)
    with pytest.raises(OrderingError, match="duplicate rank 1"):
        make_edge_ordering(g, [1, 1, 3])
    with pytest.raises(OrderingError, match="expected 3 ranks"):
        make_edge_ordering(g, [1, 2])
    with pytest.raises(OrderingError, match="rank 4"):
        make_edge_ordering(g, [1, 2, 4])


def test_two_edge_path_valid_in_exactly_one_direction():
    g = build_complete_graph([(0, 0), (1, 0), (0, 1)])
    for ranks in ([1, 2, 3], [3, 1, 2], [2, 3, 1]):
        o = make_edge_ordering(g, ranks)
        ok = [validate_witness(g, o, PathWitness((0, 1, 2), d)) is None for d in Direction]
        assert ok.count(True) == 1


def test_path_violations():
    g = build_complete_graph(QUAD)
    o = EdgeOrdering(tuple(range(1, 7)))
    assert validate_witness(g, o, PathWitness((0, 1, 0))).kind == "repeated_vertex"
    # 0-2 and 1-3 are the diagonals.
    bad = validate_witness(g, o, PathWitness((0, 2, 1, 3), Direction.DESCENDING))
    assert bad is not None
    assert validate_witness(g, make_edge_ordering(g, [4, 1, 5, 2, 3, 6]), PathWitness((0, 2, 1, 3))).kind == "crossing"
    with pytest.raises(IndexError):
        validate_witness(g, o, PathWitness((0, 9)))


def test_tree_witness_shape():
    with pytest.raises(ValueError):
        TreeWitness(1, (0, 1))
    t = TreeWitness(2, tuple(range(7)))
    assert t.size == 7
    assert t.root_to_leaf_paths() == [(0, 1, 3), (0, 1, 4), (0, 2, 5), (0, 2, 6)]


def test_height_one_tree_always_valid():
    g = build_complete_graph(QUAD)
    o = random_ordering(g, 4)
    for d in Direction:
        assert validate_witness(g, o, TreeWitness(1, (0, 1, 3), d)) is None
    assert validate_witness(g, o, TreeWitness(0, (2,))) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10_000), st.integers(3, 7))
def test_reversal_duality_of_witnesses(seed, n):
    g = build_complete_graph([(i, i * i) for i in range(n)])
    o = random_ordering(g, seed)
    p = longest_monotone_noncrossing_path(g, o).witness
    assert validate_witness(g, o, p) is None
    assert validate_witness(g, o, p.reversed()) is None
    assert p.reversed().direction is not p.direction
    rev = o.reversed()
    flipped = PathWitness(p.vertices, p.direction.flipped())
    assert validate_witness(g, rev, flipped) is None
    t = largest_monotone_noncrossing_complete_tree(g, o, "either").witness
    assert validate_witness(g, rev, TreeWitness(t.height, t.nodes, t.direction.flipped())) is None


def test_induced_keeps_relative_order():
    g = build_complete_graph(PARABOLA5)
    o = random_ordering(g, 11)
    sub, so = induced(g, o, [1, 3, 4])
    assert sub.n == 3
    pairs = [(1, 3), (1, 4), (3, 4)]
    orig = [o.ranks[g.edge_index(*p)] for p in pairs]
    assert sorted(range(3), key=lambda k: orig[k]) == sorted(range(3), key=lambda k: so.ranks[k])


def test_codec_round_trip():
    g = build_complete_graph(PARABOLA5)
    o = random_ordering(g, 3)
    text = encode(g, o, {"generator": "parabola", "seed": 3})
    doc = decode(text)
    assert doc.graph == g and doc.ordering == o and doc.meta == {"generator": "parabola", "seed": 3}
    assert encode(doc.graph, doc.ordering, doc.meta) == text
    json.loads(text)


def test_codec_graph_only_and_errors():
    doc = decode('{"points": [[0, 0], [1, 0], [0, 1]]}')
    assert doc.ordering is None and doc.graph.m == 3
    with pytest.raises(CodecError, match="ranks"):
        decode('{"points": [[0, 0], [1, 0], [0, 1]], "ranks": [1, 2]}')
    with pytest.raises(CodecError, match="line 2"):
        decode('{"points": [[0, 0]],\n "ranks": [1,, 2]}')
    with pytest.raises(CodecError, match="points"):
        decode('{"points": [[0, 0], [1, 1], [2, 2]]}')
    with pytest.raises(CodecError, match=r"'points'\[1\]"):
        decode('{"points": [[0, 0], [1]]}')


def test_witness_codec_round_trip():
    g = build_complete_graph(QUAD)
    o = random_ordering(g, 1)
    for w in (PathWitness((0, 1, 2), Direction.DESCENDING), TreeWitness(1, (0, 1, 3), Direction.ASCENDING)):
        text = encode_witness(w, g, o, {"note": "x"})
        back, doc = decode_witness(text)
        assert back == w and doc.graph == g and doc.ordering == o
        assert encode_witness(back, doc.graph, doc.ordering, doc.meta) == text
    back, doc = decode_witness(encode_witness(PathWitness((2, 3))))
    assert back == PathWitness((2, 3)) and doc is None
    with pytest.raises(CodecError, match="kind"):
        decode_witness('{"kind": "cycle", "direction": "ascending"}')


def test_points_are_point_instances():
    g = build_complete_graph([(0, 0), (3, 1), (1, 3)])
    assert all(isinstance(p, Point) for p in g.points)
