"""Constructive subroutines: guaranteed removal sets without enumeration.

The chain goes: a large family of short detours between two vertices yields
edge-disjoint detours (``find_disjoint_paths``); cutting each detour at its
middle edge yields a safe removal set (``middle_edge_removal``).  When no
single edge carries many detours, a large edge-disjoint cycle family can be
ordered so that escape paths of earlier cycles avoid later cycles
(``build_sequence``), and such a sequence yields a safe removal set by a
greedy index-tracking selection (``removal_from_sequence``).

Every routine enforces its exact size threshold and raises
``PreconditionUnmet`` below it; ``best_effort=True`` runs the same machinery
without the existence guarantee, for exercising the code below threshold.
All functions are pure and safe for concurrent callers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence

from .candidates import Cycle
from .errors import InsufficientPaths, InternalAssertionFailed, PreconditionUnmet
from .graph import EdgeMask, Graph, bfs_dist
from .thresholds import f1, f2, f3
from .verify import Additive, verify

Path = tuple[int, ...]


@dataclass(frozen=True)
class PathFamily:
    """A family of simple ``u``-``v`` paths, each of length at most ``bound``."""

    u: int
    v: int
    paths: tuple[Path, ...]
    bound: int


@dataclass(frozen=True)
class DisjointPathsResult:
    """Outcome of disjoint-path extraction.

    ``u`` descends from the family's first endpoint and ``v`` from the
    second.  ``bound`` is the residual length budget
    ``family.bound - dist(family.u, u) - dist(family.v, v)``; when ``ok``
    every returned path respects it and the paths are pairwise
    edge-disjoint.  ``ok`` is False only for best-effort calls that bottomed
    out; ``paths`` then holds whatever partial set the greedy reached.
    """

    ok: bool
    u: int
    v: int
    paths: tuple[Path, ...]
    bound: int


def _path_edges(g: Graph, path: Path) -> tuple[int, ...]:
    try:
        return tuple(g.edge_index(a, b) for a, b in zip(path, path[1:]))
    except KeyError as exc:
        raise ValueError(f"path {path} uses an edge absent from the graph") from exc


def _validate_family(g: Graph, fam: PathFamily) -> None:
    if fam.bound < 1:
        raise ValueError("path length bound must be at least 1")
    if fam.u == fam.v:
        raise ValueError("family endpoints must be distinct")
    for p in fam.paths:
        if p[0] != fam.u or p[-1] != fam.v:
            raise ValueError(f"path {p} does not join {fam.u} and {fam.v}")
        if len(set(p)) != len(p):
            raise ValueError(f"path {p} is not simple")
        if len(p) - 1 > fam.bound:
            raise ValueError(f"path {p} exceeds length bound {fam.bound}")
        _path_edges(g, p)


def _greedy_disjoint(g: Graph, paths: Sequence[Path], k: int) -> list[Path]:
    picked: list[Path] = []
    used: set[int] = set()
    for p in paths:
        if len(picked) >= k:
            break
        edges = _path_edges(g, p)
        if used.isdisjoint(edges):
            picked.append(p)
            used.update(edges)
    return picked


def _splittable(g: Graph, e: int, u: int, v: int) -> bool:
    a, b = g.edges[e]
    return not (a in (u, v) and b in (u, v))


def _search(g: Graph, u: int, v: int, paths: tuple[Path, ...], length: int, k: int):
    """Recursive core: returns (u', v', picked paths, ok).

    Above the f1 threshold exactly one of two cases applies: no edge meets
    the density threshold and a greedy pass finds k disjoint paths, or some
    edge does and splitting there leaves a subfamily that is large enough
    by counting.  Below threshold the same steps run best-effort.
    """
    paths = tuple(dict.fromkeys(paths))
    if not paths:
        return u, v, (), False
    coverage: dict[int, int] = {}
    for p in paths:
        for e in _path_edges(g, p):
            coverage[e] = coverage.get(e, 0) + 1

    density = f1(k, length)
    heavy = None
    for e in sorted(coverage):
        if _splittable(g, e, u, v) and coverage[e] * k * length >= density:
            heavy = e
            break

    if heavy is None:
        picked = _greedy_disjoint(g, paths, k)
        if len(picked) == k:
            return u, v, tuple(picked), True
        # Below-threshold family the greedy cannot serve: fall back to
        # splitting at the most-covered splittable edge, if any.
        candidates = [e for e in sorted(coverage) if _splittable(g, e, u, v)]
        if not candidates:
            return u, v, tuple(picked), False
        heavy = max(candidates, key=lambda e: (coverage[e], -e))

    a, b = g.edges[heavy]
    x = b if a in (u, v) else a

    ux: dict[int, dict[Path, None]] = {}
    xv: dict[int, dict[Path, None]] = {}
    for p in paths:
        if heavy not in _path_edges(g, p):
            continue
        pos = p.index(x)
        ux.setdefault(pos, {})[p[: pos + 1]] = None
        xv.setdefault(len(p) - 1 - pos, {})[p[pos:]] = None

    # Qualified buckets first (guaranteed by induction), then the rest by
    # descending fill ratio relative to their own threshold.
    attempts: list[tuple[int, int]] = []  # (side, length): side 0 = u-x, 1 = x-v
    for i in sorted(ux):
        if len(ux[i]) >= f1(k, i):
            attempts.append((0, i))
    for j in sorted(xv):
        if len(xv[j]) >= f1(k, j):
            attempts.append((1, j))
    remaining = [(0, i) for i in ux] + [(1, j) for j in xv]
    remaining = [sl for sl in remaining if sl not in attempts]
    remaining.sort(
        key=lambda sl: (
            -Fraction(len((ux if sl[0] == 0 else xv)[sl[1]]), f1(k, sl[1])),
            sl[0],
            sl[1],
        )
    )
    attempts.extend(remaining)

    for side, ln in attempts:
        if side == 0:
            res = _search(g, u, x, tuple(ux[ln]), ln, k)
        else:
            res = _search(g, x, v, tuple(xv[ln]), ln, k)
        if res[3]:
            return res

    picked = _greedy_disjoint(g, paths, k)
    return u, v, tuple(picked), len(picked) == k


def find_disjoint_paths(
    g: Graph, fam: PathFamily, k: int, best_effort: bool = False
) -> DisjointPathsResult:
    """Extract ``k`` pairwise edge-disjoint paths between some vertex pair
    descended from the family's endpoints.

    Requires ``len(fam.paths) >= f1(k, fam.bound)`` unless ``best_effort``;
    at or above the threshold success is guaranteed.  The recursion either
    takes ``k`` disjoint paths greedily (when no edge is shared by many
    paths) or splits the family at a heavily shared edge and recurses into
    a subfamily that is large relative to its own threshold.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    _validate_family(g, fam)
    guaranteed = len(fam.paths) >= f1(k, fam.bound)
    if not guaranteed and not best_effort:
        raise InsufficientPaths(
            f"family of {len(fam.paths)} paths is below f1({k}, {fam.bound}) = "
            f"{f1(k, fam.bound)}"
        )
    u2, v2, picked, ok = _search(g, fam.u, fam.v, fam.paths, fam.bound, k)
    if guaranteed and not ok:
        raise InternalAssertionFailed("extraction failed above the f1 threshold")
    bound = fam.bound
    if ok:
        du = bfs_dist(g, fam.u)[u2]
        dv = bfs_dist(g, fam.v)[v2]
        bound = fam.bound - int(du) - int(dv)
        used: set[int] = set()
        for p in picked:
            edges = _path_edges(g, p)
            if not used.isdisjoint(edges):
                raise InternalAssertionFailed("returned paths share an edge")
            used.update(edges)
            if len(p) - 1 > bound:
                raise InternalAssertionFailed(
                    f"path of length {len(p) - 1} exceeds residual bound {bound}"
                )
    return DisjointPathsResult(ok=ok, u=u2, v=v2, paths=picked, bound=bound)


# ---------------------------------------------------------------------------
# Middle-edge removal


def _cycle_minus_edge(g: Graph, cycle: Cycle, edge: int) -> Path:
    """The cycle as a u-v path once ``edge=(u,v)`` is deleted, oriented u -> v."""
    u, v = g.edges[edge]
    verts = cycle.vertices
    size = len(verts)
    for i in range(size):
        a, b = verts[i], verts[(i + 1) % size]
        if {a, b} == {u, v}:
            ordered = verts[(i + 1) % size :] + verts[: (i + 1) % size]
            return ordered if ordered[0] == u else tuple(reversed(ordered))
    raise ValueError(f"cycle {verts} does not contain edge {edge}")


def _lex_shortest_path_edges(g: Graph, a: int, b: int) -> tuple[int, ...]:
    """Edges of a shortest a-b path, walking back from b through the smallest
    eligible predecessor at each level."""
    if a == b:
        return ()
    dist = bfs_dist(g, a)
    if dist[b] == float("inf"):
        raise ValueError(f"{a} and {b} are disconnected")
    edges = []
    cur = b
    while cur != a:
        prev = min(w for w, _ in g.adj[cur] if dist[w] == dist[cur] - 1)
        edges.append(g.edge_index(prev, cur))
        cur = prev
    return tuple(edges)


def _middle_edge(g: Graph, path: Path) -> int:
    """The edge splitting ``path`` into floor((L-1)/2) and ceil((L-1)/2) edges."""
    cut = (len(path) - 2) // 2
    return g.edge_index(path[cut], path[cut + 1])


def middle_edge_removal(
    g: Graph,
    edge: int,
    cycles_through_e: Sequence[Cycle],
    k: int,
    t: int,
    best_effort: bool = False,
) -> EdgeMask:
    """Removal set of size ``k`` built from many short cycles through one edge.

    Needs ``len(cycles_through_e) >= f1(k+t+1, t+1)`` cycles, each of length
    at most ``t + 2`` and containing ``edge``.  The detours ``cycle - edge``
    yield ``k + t + 1`` edge-disjoint paths; after discarding those touching
    the connector paths or the pivot edge itself, the middle edge of each of
    the first ``k`` survivors is removed.  The result is verified before
    return.
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be at least 1")
    u, v = g.edges[edge]
    for c in cycles_through_e:
        if edge not in c.edge_indices:
            raise ValueError("a supplied cycle does not contain the pivot edge")
        if len(c) > t + 2:
            raise ValueError(f"cycle of length {len(c)} exceeds t + 2 = {t + 2}")
    need = f1(k + t + 1, t + 1)
    guaranteed = len(cycles_through_e) >= need
    if not guaranteed and not best_effort:
        raise PreconditionUnmet(
            f"{len(cycles_through_e)} cycles through the edge, need "
            f"f1({k + t + 1}, {t + 1}) = {need}"
        )

    paths = tuple(_cycle_minus_edge(g, c, edge) for c in cycles_through_e)
    fam = PathFamily(u=u, v=v, paths=paths, bound=t + 1)
    res = find_disjoint_paths(g, fam, k + t + 1, best_effort=True)
    if not res.ok:
        if guaranteed:
            raise InternalAssertionFailed("disjoint-path extraction failed above threshold")
        raise PreconditionUnmet("best-effort disjoint-path extraction bottomed out")

    forbidden = set(_lex_shortest_path_edges(g, u, res.u))
    forbidden.update(_lex_shortest_path_edges(g, v, res.v))
    forbidden.add(edge)
    survivors = [p for p in res.paths if forbidden.isdisjoint(_path_edges(g, p))]
    if len(survivors) < k:
        if guaranteed:
            raise InternalAssertionFailed("fewer than k paths avoid the connector edges")
        raise PreconditionUnmet("too few detours avoid the connector edges")

    mask = 0
    for p in survivors[:k]:
        mask |= 1 << _middle_edge(g, p)
    if mask.bit_count() != k:
        raise InternalAssertionFailed("middle edges are not distinct")
    violation = verify(g, mask, Additive(t))
    if violation is not None:
        if guaranteed:
            raise InternalAssertionFailed(
                f"guaranteed removal fails verification: {violation}"
            )
        raise PreconditionUnmet(f"best-effort removal fails verification: {violation}")
    return mask


# ---------------------------------------------------------------------------
# Shortest-path forests and ordered cycle sequences


@dataclass(frozen=True)
class SPForest:
    """Multi-source BFS tree rooted at a cycle's vertex set.

    ``parent_edge[v]`` is the edge toward the cycle (-1 at the roots, -2 for
    unreachable vertices); ``order`` lists vertices in visitation order, so
    a parent always precedes its children.  The chosen escape path of every
    vertex is read off the parent pointers, and the union of all chosen
    paths is exactly ``tree_edges`` -- a forest by construction.
    """

    cycle: Cycle
    dist: tuple[int, ...]
    parent_edge: tuple[int, ...]
    order: tuple[int, ...]
    tree_edges: frozenset[int] = field(compare=False)

    def reached(self, v: int) -> bool:
        return self.parent_edge[v] != -2

    def path_edges(self, g: Graph, v: int) -> tuple[int, ...] | None:
        """Edges of the chosen shortest path from v to the cycle; None when
        unreachable, empty for cycle vertices."""
        if not self.reached(v):
            return None
        out = []
        cur = v
        while (e := self.parent_edge[cur]) != -1:
            out.append(e)
            a, b = g.edges[e]
            cur = a + b - cur
        return tuple(out)

    def path_vertices(self, g: Graph, v: int) -> tuple[int, ...] | None:
        if not self.reached(v):
            return None
        out = [v]
        cur = v
        while (e := self.parent_edge[cur]) != -1:
            a, b = g.edges[e]
            cur = a + b - cur
            out.append(cur)
        return tuple(out)


def sp_forest(g: Graph, cycle: Cycle) -> SPForest:
    """Shortest-path forest toward ``cycle`` via multi-source BFS.

    Sources are seeded in ascending order and adjacency lists are scanned
    ascending, which pins the choice of shortest paths deterministically.
    """
    dist = [-1] * g.n
    parent_edge = [-2] * g.n
    order: list[int] = []
    queue: deque[int] = deque()
    for s in sorted(set(cycle.vertices)):
        dist[s] = 0
        parent_edge[s] = -1
        order.append(s)
        queue.append(s)
    while queue:
        u = queue.popleft()
        for w, e in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent_edge[w] = e
                order.append(w)
                queue.append(w)
    tree = frozenset(e for e in parent_edge if e >= 0)
    return SPForest(
        cycle=cycle,
        dist=tuple(dist),
        parent_edge=tuple(parent_edge),
        order=tuple(order),
        tree_edges=tree,
    )


@dataclass(frozen=True)
class CycleSeq:
    """An ordered family of pairwise edge-disjoint short cycles together
    with the shortest-path forest of each cycle."""

    cycles: tuple[Cycle, ...]
    forests: tuple[SPForest, ...]

    def __len__(self) -> int:
        return len(self.cycles)


def make_cycle_seq(g: Graph, cycles: Sequence[Cycle], t: int | None = None) -> CycleSeq:
    """Bundle cycles with their forests; validates disjointness and, when
    ``t`` is given, the length bound ``t + 2``."""
    used: set[int] = set()
    for c in cycles:
        if not used.isdisjoint(c.edge_indices):
            raise ValueError("cycles are not pairwise edge-disjoint")
        used.update(c.edge_indices)
        if t is not None and len(c) > t + 2:
            raise ValueError(f"cycle of length {len(c)} exceeds t + 2 = {t + 2}")
    forests = tuple(sp_forest(g, c) for c in cycles)
    return CycleSeq(cycles=tuple(cycles), forests=forests)


class OrderingWitness(NamedTuple):
    """Indices ``earlier < mid < later`` and a vertex of the earlier cycle
    whose escape path toward the mid cycle crosses the later cycle."""

    earlier: int
    mid: int
    later: int
    vertex: int


def check_escape_ordering(g: Graph, seq: CycleSeq) -> OrderingWitness | None:
    """Check the sequence's ordering property.

    For every h < i < j and every vertex v of the h-th cycle, the chosen
    escape path from v toward the i-th cycle must avoid all edges of the
    j-th cycle.  Returns the lexicographically smallest witness, or None.
    Vertices unreachable from the mid cycle satisfy the condition vacuously.
    """
    p = len(seq)
    edge_sets = [c.edge_indices for c in seq.cycles]
    for h in range(p):
        vertices = sorted(seq.cycles[h].vertices)
        for i in range(h + 1, p):
            forest = seq.forests[i]
            for j in range(i + 1, p):
                later = edge_sets[j]
                for v in vertices:
                    path = forest.path_edges(g, v)
                    if path is None:
                        continue
                    if not later.isdisjoint(path):
                        return OrderingWitness(h, i, j, v)
    return None


# ---------------------------------------------------------------------------
# Ordered sequence construction


@dataclass
class SequenceSearch:
    """Greedy ordered selection over an edge-disjoint cycle family.

    Membership in the forbidden families is evaluated lazily against their
    density thresholds: a pair (h, i) is forbidden when escape paths from
    the h-th cycle toward the i-th cycle cross at least ``|C| / (3 p^2)``
    distinct cycles of the family; a single cycle is forbidden when it
    forms a forbidden pair with at least ``|C| / (3 p)`` cycles.  ``steps``
    records, after each extension, the running counts ``n2`` (cycles
    forming a forbidden pair with some chosen cycle) and ``n3`` (cycles
    completing a forbidden triple with some chosen pair); both stay below
    the bounds ``q |C| / (3p)`` and ``q^2 |C| / (3 p^2)``, which is what
    keeps the greedy from exhausting the family.
    """

    g: Graph
    cycles: list[Cycle]
    t: int
    p: int
    collect_stats: bool = True
    steps: list[dict[str, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.edge_to_cycle: dict[int, int] = {}
        for idx, c in enumerate(self.cycles):
            for e in c.edge_indices:
                self.edge_to_cycle[e] = idx
        self._forests: dict[int, SPForest] = {}
        self._hits: dict[tuple[int, int], frozenset[int]] = {}

    def forest(self, idx: int) -> SPForest:
        forest = self._forests.get(idx)
        if forest is None:
            forest = sp_forest(self.g, self.cycles[idx])
            self._forests[idx] = forest
        return forest

    def hit_cycles(self, h: int, i: int) -> frozenset[int]:
        """Cycles crossed by escape paths from the h-th cycle toward the i-th."""
        key = (h, i)
        cached = self._hits.get(key)
        if cached is not None:
            return cached
        forest = self.forest(i)
        hits: set[int] = set()
        for v in sorted(self.cycles[h].vertices):
            path = forest.path_edges(self.g, v)
            if path is None:
                continue
            for e in path:
                c = self.edge_to_cycle.get(e)
                if c is not None:
                    hits.add(c)
        result = frozenset(hits)
        self._hits[key] = result
        return result

    def pair_forbidden(self, h: int, i: int) -> bool:
        return len(self.hit_cycles(h, i)) * 3 * self.p * self.p >= len(self.cycles)

    def single_forbidden(self, h: int) -> bool:
        total = len(self.cycles)
        count = 0
        for i in range(total):
            if self.pair_forbidden(h, i):
                count += 1
                if count * 3 * self.p >= total:
                    return True
            if (count + total - 1 - i) * 3 * self.p < total:
                return False
        return count * 3 * self.p >= total

    def run(self) -> list[int]:
        """Pick ``p`` cycle indices greedily, skipping forbidden extensions.

        Raises ``PreconditionUnmet`` when no admissible cycle remains; with
        the family at or above its size threshold this cannot happen.
        """
        chosen: list[int] = []
        chosen_set: set[int] = set()
        total = len(self.cycles)
        for _ in range(self.p):
            found = None
            for cand in range(total):
                if cand in chosen_set:
                    continue
                if any(
                    cand in self.hit_cycles(h, i) for h, i in combinations(chosen, 2)
                ):
                    continue
                if any(self.pair_forbidden(h, cand) for h in chosen):
                    continue
                if self.single_forbidden(cand):
                    continue
                found = cand
                break
            if found is None:
                raise PreconditionUnmet("ordered sequence search exhausted the family")
            chosen.append(found)
            chosen_set.add(found)
            if self.collect_stats:
                record = self._stats(chosen)
                self.steps.append(record)
                q = len(chosen)
                if record["n2"] * 3 * self.p >= q * total:
                    raise InternalAssertionFailed("pair-forbidden count exceeds its bound")
                if q >= 2 and record["n3"] * 3 * self.p * self.p >= q * q * total:
                    raise InternalAssertionFailed(
                        "triple-forbidden count exceeds its bound"
                    )
        return chosen

    def _stats(self, chosen: list[int]) -> dict[str, int]:
        total = len(self.cycles)
        n2 = 0
        n3 = 0
        pairs = list(combinations(chosen, 2))
        for cand in range(total):
            if any(self.pair_forbidden(h, cand) for h in chosen):
                n2 += 1
            if any(cand in self.hit_cycles(h, i) for h, i in pairs):
                n3 += 1
        return {"chosen": chosen[-1], "n2": n2, "n3": n3}


def _distance_route(g: Graph, search: SequenceSearch, t: int, p: int) -> list[int] | None:
    """Spaced-selection route: find an escape path crossing at least
    ``(3t+1) * p`` cycle edges and pick cycle indices along it ``3t+1``
    apart.  Returns None when no such path exists.
    """
    gap = 3 * t + 1
    threshold = gap * p
    for idx in range(len(search.cycles)):
        forest = search.forest(idx)
        overlap = [0] * g.n
        hit: int | None = None
        for v in forest.order:
            e = forest.parent_edge[v]
            if e >= 0:
                a, b = g.edges[e]
                parent = a + b - v
                overlap[v] = overlap[parent] + (1 if e in search.edge_to_cycle else 0)
        for v in range(g.n):
            if forest.reached(v) and overlap[v] >= threshold:
                hit = v
                break
        if hit is None:
            continue
        path = forest.path_edges(g, hit)
        assert path is not None
        picked: list[int] = []
        last_pos: int | None = None
        for pos, e in enumerate(path):
            if e not in search.edge_to_cycle:
                continue
            if last_pos is not None and pos - last_pos < gap:
                continue
            picked.append(search.edge_to_cycle[e])
            last_pos = pos
            if len(picked) == p:
                break
        if len(picked) < p:
            raise InternalAssertionFailed(
                "spaced selection found fewer cycles than the overlap guarantees"
            )
        if len(set(picked)) != p:
            raise InternalAssertionFailed("spaced selection picked a cycle twice")
        return picked
    return None


def build_sequence(
    g: Graph,
    disjoint: Sequence[Cycle],
    t: int,
    p: int,
    best_effort: bool = False,
) -> CycleSeq:
    """Order ``p`` cycles out of a large edge-disjoint family so that the
    escape-ordering property holds.

    Requires ``len(disjoint) >= f2(t, p)`` unless ``best_effort``.  Two
    routes, tried in this order: when some escape path toward a cycle
    crosses at least ``(3t+1) * p`` cycle edges, cycles are picked along
    that path with gaps of at least ``3t+1`` (distance route); otherwise a
    greedy selection avoids the forbidden families (density route).  The
    output always passes ``check_escape_ordering``; a failure raises
    ``InternalAssertionFailed``.
    """
    if t < 1 or p < 1:
        raise ValueError("t and p must be at least 1")
    used: set[int] = set()
    for c in disjoint:
        if len(c) > t + 2:
            raise ValueError(f"cycle of length {len(c)} exceeds t + 2 = {t + 2}")
        if not used.isdisjoint(c.edge_indices):
            raise ValueError("cycles are not pairwise edge-disjoint")
        used.update(c.edge_indices)
    need = f2(t, p)
    if len(disjoint) < need and not best_effort:
        raise PreconditionUnmet(
            f"{len(disjoint)} disjoint cycles, need f2({t}, {p}) = {need}"
        )

    search = SequenceSearch(g=g, cycles=list(disjoint), t=t, p=p)
    picked = _distance_route(g, search, t, p)
    if picked is None:
        picked = search.run()
    seq = CycleSeq(
        cycles=tuple(search.cycles[i] for i in picked),
        forests=tuple(search.forest(i) for i in picked),
    )
    witness = check_escape_ordering(g, seq)
    if witness is not None:
        raise InternalAssertionFailed(
            f"constructed sequence fails the ordering check: {witness}"
        )
    return seq


# ---------------------------------------------------------------------------
# Removal from an ordered sequence


def removal_from_sequence(
    g: Graph,
    seq: CycleSeq,
    t: int,
    k: int,
    trace: list[dict[str, int]] | None = None,
    best_effort: bool = False,
) -> EdgeMask:
    """Select ``k`` removable edges from an ordered cycle sequence.

    Requires ``len(seq) >= f3(t, k)`` and the escape-ordering property.
    Maintains a live index set, always consumes the smallest live index,
    and from that cycle removes the edge absent from the most live forests;
    the invariant ``|live| >= (k - i) * (t+2)^(k-i-1)`` is asserted at every
    iteration.  The result is verified before return.
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be at least 1")
    p = len(seq)
    need = f3(t, k)
    if p < need and not best_effort:
        raise PreconditionUnmet(f"sequence of length {p}, need f3({t}, {k}) = {need}")
    witness = check_escape_ordering(g, seq)
    if witness is not None and not best_effort:
        raise PreconditionUnmet(f"sequence fails the ordering property: {witness}")
    forest_edges = [f.tree_edges for f in seq.forests]

    live = set(range(p))
    mask = 0
    for step in range(1, k + 1):
        if not live:
            if best_effort:
                break
            raise InternalAssertionFailed("live index set emptied early")
        ind = min(live)
        rest = live - {ind}
        best_edge = -1
        best_count = -1
        for e in sorted(seq.cycles[ind].edge_indices):
            count = sum(1 for i in rest if e not in forest_edges[i])
            if count > best_count:
                best_edge = e
                best_count = count
        mask |= 1 << best_edge
        live = {i for i in rest if best_edge not in forest_edges[i]}
        floor_bound = (k - step) * (t + 2) ** (k - step - 1) if step < k else 0
        if trace is not None:
            trace.append(
                {
                    "step": step,
                    "index": ind,
                    "edge": best_edge,
                    "live": len(live),
                    "bound": floor_bound,
                }
            )
        if len(live) < floor_bound and not best_effort:
            raise InternalAssertionFailed(
                f"live set of size {len(live)} below bound {floor_bound} at step {step}"
            )

    if mask.bit_count() != k and not best_effort:
        raise InternalAssertionFailed("selected edges are not distinct")
    violation = verify(g, mask, Additive(t))
    if violation is not None:
        if not best_effort:
            raise InternalAssertionFailed(
                f"guaranteed removal fails verification: {violation}"
            )
        raise PreconditionUnmet(f"best-effort removal fails verification: {violation}")
    return mask
