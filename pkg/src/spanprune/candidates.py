"""Candidate edges and short cycles: the raw material of every solver branch.

An edge can belong to a feasible removal set only if it lies on a cycle of
length at most ``t + 2`` -- equivalently, if its endpoints stay within
distance ``t + 1`` after the edge itself is removed.  The set of such edges
is the candidate set; the cycles themselves feed the constructive chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import EdgeMask, Graph, mask_edges


@dataclass(frozen=True)
class CandidateSet:
    """Edges lying on a short cycle, as a bitset, plus the slack they were
    computed for."""

    mask: EdgeMask
    t: int

    @property
    def count(self) -> int:
        return self.mask.bit_count()

    @property
    def edge_indices(self) -> tuple[int, ...]:
        return mask_edges(self.mask)

    def __contains__(self, edge: int) -> bool:
        return bool(self.mask >> edge & 1)


@dataclass(frozen=True)
class Cycle:
    """A simple cycle in canonical orientation.

    ``vertices`` starts at the smallest vertex and proceeds toward its
    smaller neighbor, closing implicitly; ``edge_indices`` is the derived
    edge set.
    """

    vertices: tuple[int, ...]
    edge_indices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)


def _canonical_rotation(vertices: Sequence[int]) -> tuple[int, ...]:
    pivot = min(range(len(vertices)), key=vertices.__getitem__)
    forward = tuple(vertices[pivot:]) + tuple(vertices[:pivot])
    backward = (forward[0],) + tuple(reversed(forward[1:]))
    return min(forward, backward)


def make_cycle(g: Graph, vertices: Sequence[int]) -> Cycle:
    """Canonicalize and validate a vertex sequence as a cycle of ``g``."""
    if len(vertices) < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    if len(set(vertices)) != len(vertices):
        raise ValueError("cycle vertices must be distinct")
    canon = _canonical_rotation(vertices)
    edges = []
    for i, u in enumerate(canon):
        v = canon[(i + 1) % len(canon)]
        edges.append(g.edge_index(u, v))  # KeyError when the edge is absent
    return Cycle(vertices=canon, edge_indices=frozenset(edges))


def _reaches_within(g: Graph, src: int, dst: int, skip_edge: int, cap: int) -> bool:
    """True when dst is within ``cap`` hops of src once ``skip_edge`` is removed."""
    if src == dst:
        return True
    dist = [-1] * g.n
    dist[src] = 0
    frontier = [src]
    d = 0
    while frontier and d < cap:
        d += 1
        nxt = []
        for u in frontier:
            for w, e in g.adj[u]:
                if e == skip_edge or dist[w] >= 0:
                    continue
                if w == dst:
                    return True
                dist[w] = d
                nxt.append(w)
        frontier = nxt
    return False


def candidate_edges(g: Graph, t: int) -> CandidateSet:
    """All edges on a cycle of length at most ``t + 2``.

    Computed by a per-edge truncated BFS: edge (u, v) qualifies iff the
    graph minus that edge still connects u to v within ``t + 1`` hops.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    mask = 0
    for idx, (u, v) in enumerate(g.edges):
        if _reaches_within(g, u, v, idx, t + 1):
            mask |= 1 << idx
    return CandidateSet(mask=mask, t=t)


def enumerate_short_cycles(g: Graph, t: int, cap: int) -> list[Cycle]:
    """Distinct cycles of length at most ``t + 2``, at most ``cap`` of them.

    Each cycle is found exactly once: the DFS roots at the cycle's smallest
    vertex, explores only larger vertices, and keeps the orientation whose
    second vertex is the smaller neighbor of the root.  Output order is the
    DFS emission order, which is deterministic.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if cap <= 0:
        return []
    max_len = t + 2
    out: list[Cycle] = []
    for root in range(g.n):
        # path holds the current simple path from root; all interior
        # vertices are > root so the root is the cycle minimum.
        path = [root]
        on_path = {root}

        def extend() -> bool:
            u = path[-1]
            for w, _ in g.adj[u]:
                if w == root and len(path) >= 3 and path[1] < path[-1]:
                    out.append(make_cycle(g, tuple(path)))
                    if len(out) >= cap:
                        return True
                if w <= root or w in on_path or len(path) >= max_len:
                    continue
                path.append(w)
                on_path.add(w)
                if extend():
                    return True
                on_path.remove(w)
                path.pop()
            return False

        if extend():
            return out
    return out


def cycles_through(cycles: Iterable[Cycle], edge: int) -> list[Cycle]:
    """Subsequence of cycles whose edge set contains ``edge``."""
    return [c for c in cycles if edge in c.edge_indices]


def greedy_edge_disjoint(cycles: Iterable[Cycle], target: int) -> list[Cycle]:
    """Pairwise edge-disjoint subfamily, greedily built in input order.

    Stops once ``target`` cycles are collected or the input is exhausted.
    """
    picked: list[Cycle] = []
    used: set[int] = set()
    for c in cycles:
        if len(picked) >= target:
            break
        if used.isdisjoint(c.edge_indices):
            picked.append(c)
            used.update(c.edge_indices)
    return picked
