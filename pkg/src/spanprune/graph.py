"""Immutable simple undirected graphs with BFS distance machinery.

Vertices are dense integers ``0..n-1``; edges are dense integers ``0..m-1``
whose indices are stable for the lifetime of the graph.  Edge removal is
always expressed as a mask overlay (an ``int`` bitset over edge indices),
never as mutation, so one graph can be shared across many explorations.
All functions here are pure; ``Graph`` instances are safe to share between
concurrent readers.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from .errors import DuplicateEdge, SelfLoop, VertexOutOfRange

#: Distance sentinel for unreachable pairs.  Strictly greater than any
#: achievable hop distance, so comparisons like ``dist <= d + t`` need no
#: case splits.
INF: float = math.inf

#: An EdgeMask is an int bitset over edge indices (bit ``e`` set = edge ``e``
#: removed).  Duplicates are unrepresentable; validation lives in edge_mask().
EdgeMask = int


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph.

    ``adj[v]`` lists ``(neighbor, edge_index)`` pairs sorted ascending, which
    makes every traversal in this package deterministic.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adj: tuple[tuple[tuple[int, int], ...], ...]
    pair_to_index: dict[tuple[int, int], int] = field(compare=False, repr=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_index(self, u: int, v: int) -> int:
        """Index of the edge joining ``u`` and ``v``; KeyError if absent."""
        return self.pair_to_index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.pair_to_index

    def degree(self, v: int) -> int:
        return len(self.adj[v])


def build_graph(n: int, pairs: Iterable[tuple[int, int]]) -> Graph:
    """Construct a normalized simple graph from unordered vertex pairs.

    Self-loops and duplicate pairs are rejected rather than silently
    dropped, so fixtures that contain them fail loudly.
    """
    if n < 0:
        raise ValueError("vertex count must be non-negative")
    edges: list[tuple[int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise DuplicateEdge(f"edge {key} appears more than once")
        seen[key] = len(edges)
        edges.append(key)
    adj_lists: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for idx, (u, v) in enumerate(edges):
        adj_lists[u].append((v, idx))
        adj_lists[v].append((u, idx))
    adj = tuple(tuple(sorted(entries)) for entries in adj_lists)
    return Graph(n=n, edges=tuple(edges), adj=adj, pair_to_index=seen)


def edge_mask(g: Graph, indices: Iterable[int]) -> EdgeMask:
    """Bitset over edge indices; rejects indices outside [0, m)."""
    mask = 0
    for e in indices:
        if not (0 <= e < g.m):
            raise ValueError(f"edge index {e} outside [0, {g.m})")
        mask |= 1 << e
    return mask


def mask_edges(mask: EdgeMask) -> tuple[int, ...]:
    """Edge indices present in the mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def mask_pairs(g: Graph, mask: EdgeMask) -> list[tuple[int, int]]:
    """Vertex pairs of the masked edges, in ascending edge-index order."""
    return [g.edges[e] for e in mask_edges(mask)]


def check_mask(g: Graph, mask: EdgeMask) -> None:
    if mask < 0 or mask >> g.m:
        raise ValueError("mask contains edge indices outside the graph")


def bfs_dist(
    g: Graph,
    source: int,
    removed: EdgeMask = 0,
    depth_cap: int | None = None,
) -> list[int | float]:
    """Exact hop distances from ``source`` in ``(V, E \\ removed)``.

    Entries beyond ``depth_cap`` are left at INF when a cap is given.
    """
    if not (0 <= source < g.n):
        raise VertexOutOfRange(f"source {source} outside [0, {g.n})")
    check_mask(g, removed)
    dist: list[int | float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        d = dist[u]
        if depth_cap is not None and d >= depth_cap:
            continue
        nd = d + 1
        for w, e in adj[u]:
            if removed >> e & 1:
                continue
            if nd < dist[w]:
                dist[w] = nd
                queue.append(w)
    return dist


def all_pairs_dist(g: Graph, removed: EdgeMask = 0) -> list[list[int | float]]:
    """n x n table of hop distances in ``(V, E \\ removed)``; INF when disconnected."""
    return [bfs_dist(g, s, removed) for s in range(g.n)]


def components(g: Graph) -> list[list[int]]:
    """Maximal connected vertex sets, each sorted, ordered by smallest member."""
    seen = [False] * g.n
    out: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        comp = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w, _ in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    if g.n <= 1:
        return True
    return len(components(g)) == 1


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int], list[int]]:
    """Subgraph induced by ``vertices``.

    Returns ``(sub, vertex_map, edge_map)`` where ``vertex_map[new] = old``
    and ``edge_map[new_edge] = old_edge``.
    """
    vmap = sorted(set(vertices))
    index_of = {old: new for new, old in enumerate(vmap)}
    pairs: list[tuple[int, int]] = []
    emap: list[int] = []
    for idx, (u, v) in enumerate(g.edges):
        if u in index_of and v in index_of:
            pairs.append((index_of[u], index_of[v]))
            emap.append(idx)
    return build_graph(len(vmap), pairs), vmap, emap


def neighbor_bitmasks(g: Graph, removed: EdgeMask = 0) -> list[int]:
    """Per-vertex neighbor sets as int bitsets, with masked edges dropped."""
    nbr = [0] * g.n
    for idx, (u, v) in enumerate(g.edges):
        if removed >> idx & 1:
            continue
        nbr[u] |= 1 << v
        nbr[v] |= 1 << u
    return nbr


def dist_row_bitset(nbr: list[int], source: int, n: int) -> list[int | float]:
    """One BFS row computed with set-as-bitmask level expansion.

    Equivalent to ``bfs_dist`` without a cap; faster on small or dense
    graphs because each level is a handful of big-int operations.
    """
    dist: list[int | float] = [INF] * n
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    d = 0
    while frontier:
        d += 1
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= nbr[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            break
        seen |= nxt
        f = nxt
        while f:
            low = f & -f
            dist[low.bit_length() - 1] = d
            f ^= low
        frontier = nxt
    return dist
