"""End-to-end solvers for the k-edge removal problem, plus a brute-force oracle.

The main routine computes the candidate set F and branches on its size: a
small F is searched exhaustively (complete, since any solution lies inside
F); a large F guarantees a solution among the edges of a short-cycle family,
found either by enumeration or by the constructive chain.  Verdicts are
always exact: every Feasible mask is re-verified before return, and an
Infeasible verdict is only ever produced by an exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Literal

from .candidates import (
    CandidateSet,
    candidate_edges,
    cycles_through,
    enumerate_short_cycles,
    greedy_edge_disjoint,
)
from .constructive import build_sequence, middle_edge_removal, removal_from_sequence
from .errors import BudgetExceeded, InternalAssertionFailed, PreconditionUnmet
from .graph import (
    EdgeMask,
    Graph,
    all_pairs_dist,
    components,
    induced_subgraph,
    is_connected,
    mask_edges,
)
from .thresholds import ThresholdTable, thresholds
from .verify import Additive, AlphaBeta, SpannerParams, verify

Branch = Literal["small_f", "many_cycles", "constructive", "oracle"]

Mode = Literal["exact", "constructive"]


@dataclass(frozen=True)
class SolveStats:
    candidate_count: int = 0
    cycles_found: int = 0
    subsets_examined: int = 0
    fallback_used: bool = False


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    mask: EdgeMask | None
    branch: Branch
    stats: SolveStats

    @property
    def removed_edges(self) -> tuple[int, ...]:
        return mask_edges(self.mask) if self.mask is not None else ()


def _mask_of(combo: Iterable[int]) -> int:
    mask = 0
    for e in combo:
        mask |= 1 << e
    return mask


def _stays_connected(g: Graph, removed: EdgeMask) -> bool:
    """One BFS connectivity recheck; callers only use it on connected graphs."""
    if g.n <= 1:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        u = stack.pop()
        for w, e in g.adj[u]:
            if removed >> e & 1 or seen[w]:
                continue
            seen[w] = True
            count += 1
            stack.append(w)
    return count == g.n


def _single_violators(
    g: Graph,
    universe: Iterable[int],
    params: SpannerParams,
    base: list[list[int | float]],
) -> int:
    """Edges whose lone removal already violates; any superset mask is then
    infeasible too, because removing more edges never shortens a distance."""
    bad = 0
    for e in universe:
        if verify(g, 1 << e, params, base) is not None:
            bad |= 1 << e
    return bad


def _lex_search(
    g: Graph,
    universe: Iterable[int],
    k: int,
    params: SpannerParams,
    base: list[list[int | float]],
) -> tuple[EdgeMask | None, int]:
    """First feasible k-subset of ``universe`` in lexicographic order.

    Returns (mask, subsets examined).  Both prunes only skip masks that are
    certainly infeasible, so the first surviving feasible mask is also the
    lexicographically smallest one overall.
    """
    universe = sorted(universe)
    bad = _single_violators(g, universe, params, base)
    examined = 0
    for combo in combinations(universe, k):
        examined += 1
        mask = _mask_of(combo)
        if mask & bad:
            continue
        if not _stays_connected(g, mask):
            continue
        if verify(g, mask, params, base) is None:
            return mask, examined
    return None, examined


def _checked(
    g: Graph,
    mask: EdgeMask | None,
    branch: Branch,
    stats: SolveStats,
    params: SpannerParams,
    cand: CandidateSet | None,
) -> SolveResult:
    """Package a verdict; Feasible masks are re-verified and must sit inside
    the candidate set."""
    if mask is None:
        return SolveResult(False, None, branch, stats)
    violation = verify(g, mask, params)
    if violation is not None:
        raise InternalAssertionFailed(f"solver returned a non-solution: {violation}")
    if cand is not None and mask & ~cand.mask:
        raise InternalAssertionFailed("solution uses an edge outside the candidate set")
    return SolveResult(True, mask, branch, stats)


def _constructive_attempt(
    g: Graph, t: int, k: int, cycles, tbl: ThresholdTable
) -> EdgeMask | None:
    """Run the guaranteed chain when its thresholds hold; None otherwise.

    Mirrors the existence argument: either some edge lies on enough short
    cycles for middle-edge removal, or a greedy packing yields enough
    edge-disjoint cycles to order into a sequence and select from.
    """
    if not cycles:
        return None
    counts: dict[int, int] = {}
    for c in cycles:
        for e in c.edge_indices:
            counts[e] = counts.get(e, 0) + 1
    heavy = None
    for e in sorted(counts):
        if counts[e] >= tbl.path_family_threshold:
            heavy = e
            break
    try:
        if heavy is not None:
            return middle_edge_removal(g, heavy, cycles_through(cycles, heavy), k, t)
        disjoint = greedy_edge_disjoint(cycles, tbl.disjoint_target)
        seq = build_sequence(g, disjoint, t, tbl.sequence_length)
        return removal_from_sequence(g, seq, t, k)
    except PreconditionUnmet:
        return None


def solve_additive(
    g: Graph,
    t: int,
    k: int,
    mode: Mode = "exact",
    threshold_cap: int | None = None,
) -> SolveResult:
    """Exact verdict for removing ``k`` edges of a connected graph within
    additive slack ``t``.

    ``threshold_cap`` clamps the branch thresholds; its only use is forcing
    the cycle branch in tests.  In ``constructive`` mode the large branch
    first attempts the guaranteed chain and falls back to enumeration; the
    verdict is identical either way, the mask may differ.
    """
    if t < 1 or k < 1:
        raise ValueError("t and k must be at least 1")
    if not is_connected(g):
        raise ValueError("solve_additive expects a connected graph; use solve()")
    params = Additive(t)
    cand = candidate_edges(g, t)
    tbl = thresholds(t, k, cap=threshold_cap)
    base = all_pairs_dist(g)

    if cand.count <= tbl.candidate_limit:
        mask, examined = _lex_search(g, cand.edge_indices, k, params, base)
        stats = SolveStats(cand.count, 0, examined)
        return _checked(g, mask, "small_f", stats, params, cand)

    cycles = enumerate_short_cycles(g, t, cap=tbl.cycle_budget)
    if mode == "constructive":
        mask = _constructive_attempt(g, t, k, cycles, tbl)
        if mask is not None:
            stats = SolveStats(cand.count, len(cycles), 0)
            return _checked(g, mask, "constructive", stats, params, cand)

    universe = sorted({e for c in cycles for e in c.edge_indices})
    mask, examined = _lex_search(g, universe, k, params, base)
    if mask is not None:
        stats = SolveStats(cand.count, len(cycles), examined)
        return _checked(g, mask, "many_cycles", stats, params, cand)
    if set(universe) >= set(cand.edge_indices):
        # The cycle union covered every candidate edge, so the search was
        # exhaustive after all.
        stats = SolveStats(cand.count, len(cycles), examined)
        return SolveResult(False, None, "many_cycles", stats)
    # Completeness net: with a capped cycle budget the union may miss
    # candidate edges, so finish exhaustively over F.
    mask2, examined2 = _lex_search(g, cand.edge_indices, k, params, base)
    stats = SolveStats(cand.count, len(cycles), examined + examined2, fallback_used=True)
    return _checked(g, mask2, "small_f", stats, params, cand)


def solve_ab(
    g: Graph,
    alpha: Fraction | int,
    beta: Fraction | int,
    k: int,
    mode: Mode = "exact",
    threshold_cap: int | None = None,
) -> SolveResult:
    """Exact verdict for the affine bound ``alpha * d + beta``.

    Reduces to the additive problem with ``t = floor(alpha + beta) - 1``:
    the candidate set is computed at that t, the small branch verifies the
    affine bound directly in exact rational arithmetic, and the large
    branch searches for an additive-t solution (always an affine solution
    too).  With ``t = 0`` the verdict is immediately Infeasible: a removed
    edge's endpoints would need to stay within ``alpha + beta < 2``, but no
    edge of a simple graph lies on a cycle of length two.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    params = AlphaBeta(Fraction(alpha), Fraction(beta))
    t = params.derived_t()
    if t < 1:
        return SolveResult(False, None, "small_f", SolveStats())
    if not is_connected(g):
        raise ValueError("solve_ab expects a connected graph; use solve()")
    cand = candidate_edges(g, t)
    tbl = thresholds(t, k, cap=threshold_cap)
    base = all_pairs_dist(g)

    if cand.count <= tbl.candidate_limit:
        mask, examined = _lex_search(g, cand.edge_indices, k, params, base)
        stats = SolveStats(cand.count, 0, examined)
        return _checked(g, mask, "small_f", stats, params, cand)

    cycles = enumerate_short_cycles(g, t, cap=tbl.cycle_budget)
    if mode == "constructive":
        mask = _constructive_attempt(g, t, k, cycles, tbl)
        if mask is not None:
            stats = SolveStats(cand.count, len(cycles), 0)
            return _checked(g, mask, "constructive", stats, params, cand)

    universe = sorted({e for c in cycles for e in c.edge_indices})
    mask, examined = _lex_search(g, universe, k, Additive(t), base)
    if mask is not None:
        stats = SolveStats(cand.count, len(cycles), examined)
        return _checked(g, mask, "many_cycles", stats, params, cand)
    # An additive-t search can miss affine-only solutions, so the fallback
    # always runs with the affine bound over the full candidate set.
    mask2, examined2 = _lex_search(g, cand.edge_indices, k, params, base)
    stats = SolveStats(cand.count, len(cycles), examined + examined2, fallback_used=True)
    return _checked(g, mask2, "small_f", stats, params, cand)


def solve_max_k(g: Graph, t: int, mode: Mode = "exact") -> tuple[int, EdgeMask]:
    """Largest feasible removal count for a connected graph, with a witness.

    Steps k upward until Infeasible; valid because any subset of a feasible
    removal set is itself feasible.  Returns ``(0, 0)`` when even one
    removal is impossible.
    """
    if t < 1:
        raise ValueError("t must be at least 1")
    if not is_connected(g):
        raise ValueError("solve_max_k expects a connected graph; use solve()")
    cap = min(candidate_edges(g, t).count, g.m - (g.n - 1))
    best_k, best_mask = 0, 0
    for k in range(1, cap + 1):
        result = solve_additive(g, t, k, mode=mode)
        if not result.feasible:
            break
        assert result.mask is not None
        best_k, best_mask = k, result.mask
    return best_k, best_mask


def oracle(
    g: Graph,
    params: SpannerParams,
    k: int,
    budget: int = 1_000_000,
) -> SolveResult:
    """Ground-truth verdict by exhaustive enumeration over all C(m, k) masks.

    Deliberately ignores the candidate set: verification is the only
    acceptance test, which keeps the oracle independent of the solver's
    machinery.  Quick pre-filters reject k beyond the number of removable
    edges (a spanning forest of every component must survive) before the
    budget is consulted.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = g.m
    if k > m:
        return SolveResult(False, None, "oracle", SolveStats())
    cyclomatic = m - (g.n - len(components(g)))
    if k > cyclomatic:
        return SolveResult(False, None, "oracle", SolveStats())
    total = comb(m, k)
    if total > budget:
        raise BudgetExceeded(f"C({m}, {k}) = {total} exceeds the budget of {budget}")
    base = all_pairs_dist(g)
    examined = 0
    for combo in combinations(range(m), k):
        examined += 1
        mask = _mask_of(combo)
        if verify(g, mask, params, base) is None:
            t = params.t if isinstance(params, Additive) else params.derived_t()
            if t >= 1 and mask & ~candidate_edges(g, t).mask:
                raise InternalAssertionFailed(
                    "oracle solution uses an edge outside the candidate set"
                )
            return SolveResult(True, mask, "oracle", SolveStats(0, 0, examined))
    return SolveResult(False, None, "oracle", SolveStats(0, 0, examined))


def _max_removals(
    g: Graph, params: SpannerParams, cap: int, mode: Mode
) -> tuple[int, EdgeMask, SolveStats, Branch]:
    """Per-component stepping used by solve(); cap bounds the search."""
    best_k, best_mask = 0, 0
    agg = SolveStats()
    branch: Branch = "small_f"
    for k in range(1, cap + 1):
        if isinstance(params, Additive):
            result = solve_additive(g, params.t, k, mode=mode)
        else:
            result = solve_ab(g, params.alpha, params.beta, k, mode=mode)
        agg = replace(
            agg,
            candidate_count=max(agg.candidate_count, result.stats.candidate_count),
            cycles_found=max(agg.cycles_found, result.stats.cycles_found),
            subsets_examined=agg.subsets_examined + result.stats.subsets_examined,
            fallback_used=agg.fallback_used or result.stats.fallback_used,
        )
        if not result.feasible:
            break
        assert result.mask is not None
        best_k, best_mask = k, result.mask
        branch = result.branch
    return best_k, best_mask, agg, branch


_BRANCH_PRIORITY: dict[Branch, int] = {"small_f": 0, "many_cycles": 1, "constructive": 2}


def solve(
    g: Graph,
    params: SpannerParams,
    k: int,
    mode: Mode = "exact",
) -> SolveResult:
    """Verdict for an arbitrary (possibly disconnected) graph.

    Removals in different components are independent, so the graph is
    Feasible for ``k`` exactly when the per-component maximum feasible
    removal counts sum to at least ``k``.  The witness mask takes edges
    from each component's witness in turn; any subset of a feasible
    component mask is itself feasible, so trimming is safe.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if isinstance(params, Additive) and params.t < 1:
        raise ValueError("the solver needs t >= 1")
    if isinstance(params, AlphaBeta) and params.derived_t() < 1:
        return SolveResult(False, None, "small_f", SolveStats())

    total = 0
    taken: list[tuple[list[int], EdgeMask, int]] = []
    agg = SolveStats()
    branch: Branch = "small_f"
    for comp in components(g):
        if len(comp) < 3:
            continue  # fewer than 3 vertices cannot spare an edge
        sub, _, emap = induced_subgraph(g, comp)
        cap = min(k - total, sub.m - (sub.n - 1))
        if cap <= 0:
            continue
        got, witness, stats, comp_branch = _max_removals(sub, params, cap, mode)
        agg = replace(
            agg,
            candidate_count=agg.candidate_count + stats.candidate_count,
            cycles_found=agg.cycles_found + stats.cycles_found,
            subsets_examined=agg.subsets_examined + stats.subsets_examined,
            fallback_used=agg.fallback_used or stats.fallback_used,
        )
        if _BRANCH_PRIORITY[comp_branch] > _BRANCH_PRIORITY[branch]:
            branch = comp_branch
        total += got
        taken.append((emap, witness, got))
        if total >= k:
            break
    if total < k:
        return SolveResult(False, None, branch, agg)

    remaining = k
    mask = 0
    for emap, witness, got in taken:
        take = min(got, remaining)
        for local_edge in mask_edges(witness)[:take]:
            mask |= 1 << emap[local_edge]
        remaining -= take
        if remaining == 0:
            break
    violation = verify(g, mask, params)
    if violation is not None:
        raise InternalAssertionFailed(f"assembled mask fails verification: {violation}")
    return SolveResult(True, mask, branch, agg)
