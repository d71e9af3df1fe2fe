"""Bound calculators that experiments are checked against."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .extremal import ramsey_guarantee

# Frozen calibration for the block-ordering tree size bound: the largest
# measured size / sqrt(n log2 n) over n in {8, 12, 16}, rounded up to one
# decimal.  See tests/fixtures/block_calibration.json.
BLOCK_CONSTANT = 1.9

SATURATION = (1 << 63) - 1


@dataclass(frozen=True)
class VBounds:
    base: int
    recurrence_lb: int
    closed_lb: int
    saturated: bool = False


class _Saturated(Exception):
    pass


@lru_cache(maxsize=None)
def _recurrence(s: int, h: int) -> int:
    if h == 1:
        v = 2 * s + 4
    else:
        inner = _recurrence(s, h - 1)
        v = _recurrence(inner - 1, h - 1) + s + 1
    if v > SATURATION:
        raise _Saturated
    return v


def v_bounds(s: int, h: int) -> VBounds:
    """Vertex-count bounds for embedding a one-child root over a height-h tree.

    ``recurrence_lb`` iterates V(s, h) >= V(V(s, h-1) - 1, h-1) + s + 1
    from V(s, 1) = 2s + 4; ``closed_lb`` is (s + 1) 2^(2^(h-1)).  Values
    past 2^63 - 1 are clamped and flagged.
    """
    if s < 0 or h < 1:
        raise ValueError("need s >= 0 and h >= 1")
    saturated = False
    try:
        rec = _recurrence(s, h)
    except (_Saturated, RecursionError):
        rec, saturated = SATURATION, True
    exponent = 1 << (h - 1) if h <= 7 else 64
    closed = (s + 1) << exponent if exponent < 64 else SATURATION + 1
    if closed > SATURATION:
        closed, saturated = SATURATION, True
    return VBounds(2 * s + 4, rec, closed, saturated)


def _log2(n: int) -> float:
    return math.log2(n) if n > 0 else 0.0


def path_upper(n: int) -> int:
    """2 ceil(log2 n): unrolled T(n) <= 2 + T(n/2) with T(2) = 1, T(1) = 0."""
    return 2 * math.ceil(_log2(n)) if n >= 2 else 0


def tree_height_upper(n: int) -> int:
    """ceil(log2 log2 n) + 2: the side-count ordering's ascending height bound."""
    if n < 2:
        return 0
    ll = _log2(_log2(n)) if n > 2 else 0.0
    return max(0, math.ceil(ll)) + 2


def block_upper(n: int, constant: float = BLOCK_CONSTANT) -> float:
    if n < 2:
        return float(n)
    return constant * math.sqrt(n * max(1.0, _log2(n)))


def es_guarantee(n: int) -> int:
    """Points in convex position guaranteed among n in general position.

    floor(log2(n) / 2) + 1, raised to min(n, 3) since any 3 points in
    general position are in convex position.
    """
    if n <= 0:
        return 0
    return max(min(n, 3), int(_log2(n) / 2) + 1)


@dataclass
class BoundsReport:
    n: int
    path_upper: int
    tree_height_upper: int
    block_upper: float
    es_guarantee: int
    ramsey_guarantee: int
    measured: dict = field(default_factory=dict)


def theorem_bounds(n: int) -> BoundsReport:
    if n < 2:
        raise ValueError("n must be at least 2")
    return BoundsReport(
        n=n,
        path_upper=path_upper(n),
        tree_height_upper=tree_height_upper(n),
        block_upper=block_upper(n),
        es_guarantee=es_guarantee(n),
        ramsey_guarantee=ramsey_guarantee(n),
    )
