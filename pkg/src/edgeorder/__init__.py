"""Monotone non-crossing paths and trees in edge-ordered geometric graphs."""

from .egraph import (
    Direction,
    EdgeOrdering,
    GeometricGraph,
    PathWitness,
    TreeWitness,
    build_complete_graph,
    make_edge_ordering,
    validate_witness,
)
from .geom import Point

__all__ = [
    "Direction",
    "EdgeOrdering",
    "GeometricGraph",
    "PathWitness",
    "Point",
    "TreeWitness",
    "build_complete_graph",
    "make_edge_ordering",
    "validate_witness",
]
__version__ = "0.1.0"
