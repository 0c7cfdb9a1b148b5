"""Decide whether a removal set keeps all pairwise distances within bounds.

Two bound families are supported: a purely additive slack ``d + t`` and the
affine form ``alpha * d + beta`` with exact rational coefficients.  Pairs
that are already disconnected in the original graph are exempt.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from .graph import (
    INF,
    EdgeMask,
    Graph,
    all_pairs_dist,
    check_mask,
    dist_row_bitset,
    neighbor_bitmasks,
)


@dataclass(frozen=True)
class Additive:
    """Bound ``dist_H(u, v) <= dist_G(u, v) + t``."""

    t: int

    def __post_init__(self) -> None:
        if self.t < 0:
            raise ValueError("additive slack must be non-negative")


@dataclass(frozen=True)
class AlphaBeta:
    """Bound ``dist_H(u, v) <= alpha * dist_G(u, v) + beta``.

    Coefficients are held as exact rationals so floor computations at
    boundaries like ``alpha + beta == 2`` are bit-exact.
    """

    alpha: Fraction
    beta: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        if self.alpha < 1:
            raise ValueError("alpha must be at least 1")
        if self.beta < 0:
            raise ValueError("beta must be non-negative")

    def derived_t(self) -> int:
        """Additive slack the affine problem reduces to: floor(alpha+beta) - 1."""
        return floor(self.alpha + self.beta) - 1


SpannerParams = Additive | AlphaBeta


@dataclass(frozen=True)
class Violation:
    """Witness pair whose distance grew beyond the allowed bound."""

    u: int
    v: int
    dist_g: int
    dist_h: int | float

    def __str__(self) -> str:  # pragma: no cover - debugging aid
        return f"pair ({self.u}, {self.v}): {self.dist_g} -> {self.dist_h}"


def allowed_distance(params: SpannerParams, dist_g: int) -> int | Fraction:
    if isinstance(params, Additive):
        return dist_g + params.t
    return params.alpha * dist_g + params.beta


# Graphs up to this size use the bitset BFS rows; larger sparse graphs are
# faster with the plain queue-based BFS.
_BITSET_LIMIT = 512


def _h_rows(g: Graph, removed: EdgeMask):
    if g.n <= _BITSET_LIMIT:
        nbr = neighbor_bitmasks(g, removed)
        for s in range(g.n):
            yield dist_row_bitset(nbr, s, g.n)
    else:
        from .graph import bfs_dist

        for s in range(g.n):
            yield bfs_dist(g, s, removed)


def verify(
    g: Graph,
    removed: EdgeMask,
    params: SpannerParams,
    base_dist: list[list[int | float]] | None = None,
) -> Violation | None:
    """Return None when the removal keeps every bound, else the
    lexicographically smallest violating pair.

    ``base_dist`` may carry precomputed distances of the unmasked graph;
    passing it is a pure optimization for enumeration loops.  Distances in
    the masked graph are recomputed from scratch (one BFS per vertex), with
    an early exit as soon as a violation appears.
    """
    check_mask(g, removed)
    if removed == 0:
        return None
    if base_dist is None:
        base_dist = all_pairs_dist(g)
    for s, row_h in enumerate(_h_rows(g, removed)):
        row_g = base_dist[s]
        for y in range(s + 1, g.n):
            d = row_g[y]
            if d == INF:
                continue
            if row_h[y] > allowed_distance(params, d):
                return Violation(s, y, d, row_h[y])
    return None


def max_additive_stretch(g: Graph, removed: EdgeMask) -> int | float:
    """Largest ``dist_H - dist_G`` over pairs connected in G.

    Returns INF when the removal disconnects a component of G, and 0 for an
    empty graph or empty mask.  This is the smallest t for which ``verify``
    passes with an additive bound.
    """
    check_mask(g, removed)
    if removed == 0:
        return 0
    base = all_pairs_dist(g)
    worst: int | float = 0
    for s, row_h in enumerate(_h_rows(g, removed)):
        row_g = base[s]
        for y in range(s + 1, g.n):
            d = row_g[y]
            if d == INF:
                continue
            h = row_h[y]
            if h == INF:
                return INF
            if h - d > worst:
                worst = h - d
    return worst
