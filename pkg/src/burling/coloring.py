"""Exact q-colorability decisions and stable-set witnesses for proper colorings."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass
from typing import Sequence

from .construction import APEX, UNION, BurlingStructure, StableFamily, apex_index, union_index
from .graph import Graph, InputError, improper_edges, two_coloring

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SearchStats:
    nodes: int
    elapsed: float


@dataclass(frozen=True)
class Colorable:
    coloring: tuple[int, ...]
    stats: SearchStats | None = None

    outcome = "colorable"


@dataclass(frozen=True)
class NotColorable:
    stats: SearchStats | None = None

    outcome = "not_colorable"


@dataclass(frozen=True)
class BudgetExceeded:
    stats: SearchStats

    outcome = "budget_exceeded"


ColorDecision = Colorable | NotColorable | BudgetExceeded


def greedy_clique(g: Graph) -> list[int]:
    """A maximal clique grown from a maximum-degree vertex."""
    if g.n == 0:
        return []
    nbrs = g.neighbor_sets
    start = max(range(g.n), key=lambda v: (len(g.adj[v]), -v))
    clique = [start]
    cand = set(nbrs[start])
    while cand:
        v = max(cand, key=lambda w: (len(g.adj[w]), -w))
        clique.append(v)
        cand &= nbrs[v]
    return clique


class _Frame:
    __slots__ = ("v", "cands", "i", "color", "changed", "maxc")

    def __init__(self, v, cands, maxc):
        self.v = v
        self.cands = cands
        self.i = 0
        self.color = -1
        self.changed = None
        self.maxc = maxc


def _dsatur_search(g: Graph, q: int, budget: int, time_limit: float | None) -> ColorDecision:
    """Backtracking with forward checking and most-constrained-vertex branching.

    Colors of the seed clique are fixed to 0..c-1; any other vertex may only
    open the next unused color, which removes color-permutation symmetry.
    """
    t0 = time.perf_counter()
    n = g.n
    adj = g.adj
    deg = [len(a) for a in adj]
    full = (1 << q) - 1
    popcount = [bin(i).count("1") for i in range(1 << q)]
    dom = [full] * n
    color = [-1] * n
    nodes = 0

    def stats() -> SearchStats:
        return SearchStats(nodes, time.perf_counter() - t0)

    def assign(v: int, c: int):
        """Color v with c and prune neighbours; None on a domain wipe-out."""
        bit = 1 << c
        changed = []
        for w in adj[v]:
            if color[w] == -1 and dom[w] & bit:
                dom[w] ^= bit
                changed.append(w)
                if not dom[w]:
                    for u in changed:
                        dom[u] |= bit
                    return None
        color[v] = c
        return changed

    clique = greedy_clique(g)
    if len(clique) > q:
        return NotColorable(stats())
    for c, v in enumerate(clique):
        nodes += 1
        if assign(v, c) is None:
            return NotColorable(stats())
    maxc = len(clique) - 1

    # lazy heap keyed on (remaining colors, -degree, id); stale entries are skipped
    heap = [(popcount[dom[v]], -deg[v], v) for v in range(n) if color[v] == -1]
    heapq.heapify(heap)

    compact_at = 4 * n + 1024

    def touch(vs):
        nonlocal heap
        for w in vs:
            heapq.heappush(heap, (popcount[dom[w]], -deg[w], w))
        if len(heap) > compact_at:
            # drop stale entries so memory stays O(n) on long searches
            heap = [(popcount[dom[v]], -deg[v], v) for v in range(n) if color[v] == -1]
            heapq.heapify(heap)

    def select():
        while heap:
            k, _, v = heap[0]
            if color[v] == -1 and popcount[dom[v]] == k:
                return v
            heapq.heappop(heap)
        return None

    def candidates(v: int, maxc: int) -> list[int]:
        d = dom[v]
        top = min(maxc + 1, q - 1)
        return [c for c in range(top + 1) if d >> c & 1]

    v = select()
    if v is None:
        return Colorable(tuple(color), stats())
    stack = [_Frame(v, candidates(v, maxc), maxc)]
    check_every = 1024
    while stack:
        fr = stack[-1]
        if fr.changed is not None:
            bit = 1 << fr.color
            for w in fr.changed:
                dom[w] |= bit
            color[fr.v] = -1
            touch(fr.changed)
            fr.changed = None
        maxc = fr.maxc
        if fr.i >= len(fr.cands):
            stack.pop()
            touch((fr.v,))
            continue
        c = fr.cands[fr.i]
        fr.i += 1
        nodes += 1
        if nodes > budget:
            return BudgetExceeded(stats())
        if time_limit is not None and nodes % check_every == 0 and time.perf_counter() - t0 > time_limit:
            return BudgetExceeded(stats())
        changed = assign(fr.v, c)
        if changed is None:
            continue
        fr.color = c
        fr.changed = changed
        touch(changed)
        nxt = select()
        if nxt is None:
            return Colorable(tuple(color), stats())
        heapq.heappop(heap)
        new_max = max(maxc, c)
        stack.append(_Frame(nxt, candidates(nxt, new_max), new_max))
    return NotColorable(stats())


def has_q_coloring(
    g: Graph,
    q: int,
    budget: int = DEFAULT_BUDGET,
    time_limit: float | None = None,
) -> ColorDecision:
    """Decide whether ``g`` admits a proper coloring with at most ``q`` colors.

    ``budget`` caps the number of search nodes (color assignments tried);
    exhausting it yields :class:`BudgetExceeded` rather than a guess.
    """
    if q < 1:
        raise InputError(f"q must be >= 1, got {q}")
    t0 = time.perf_counter()
    if g.n == 0:
        return Colorable((), SearchStats(0, 0.0))
    if q == 1:
        if g.m:
            return NotColorable(SearchStats(0, time.perf_counter() - t0))
        return Colorable((0,) * g.n, SearchStats(0, time.perf_counter() - t0))
    if q == 2:
        two = two_coloring(g)
        st = SearchStats(0, time.perf_counter() - t0)
        return NotColorable(st) if two is None else Colorable(two, st)
    return _dsatur_search(g, q, budget, time_limit)


def chromatic_number(
    g: Graph,
    max_q: int,
    budget: int = DEFAULT_BUDGET,
    time_limit: float | None = None,
) -> int | None | BudgetExceeded:
    """Least ``q <= max_q`` with a q-coloring.

    Returns None when no such q exists, or the :class:`BudgetExceeded`
    record of the first decision that ran out of budget.
    """
    if max_q < 1:
        raise InputError(f"max_q must be >= 1, got {max_q}")
    for q in range(1, max_q + 1):
        res = has_q_coloring(g, q, budget, time_limit)
        if isinstance(res, Colorable):
            return q
        if isinstance(res, BudgetExceeded):
            return res
    return None


class WitnessAssertionError(AssertionError):
    """The apex branch of the witness recursion met a state the induction rules out."""


def _witness(st: BurlingStructure, colors: Sequence[int], offset: int) -> int:
    if st.level == 1:
        return 0
    sub = st.sub
    m = len(sub.family)
    k = st.level
    s = _witness(sub, colors, offset)
    x = _witness(sub, colors, offset + st.copy_offsets[s])
    S = sub.family.sets[s]
    X = sub.family.sets[x]
    on_s = {colors[offset + v] for v in S}
    copy_off = offset + st.copy_offsets[s]
    on_x = {colors[copy_off + v] for v in X}
    if len(on_s | on_x) >= k:
        return union_index(s, x, m)
    apex_color = colors[offset + st.apex(s, x)]
    if on_s != on_x or len(on_s) != k - 1:
        raise WitnessAssertionError(
            f"level {k}: colors on S {sorted(on_s)} and on X {sorted(on_x)} "
            f"are not one common set of {k - 1} colors"
        )
    if apex_color in on_s:
        raise WitnessAssertionError(f"level {k}: apex color {apex_color} already used on S")
    return apex_index(s, x, m)


def witness_stable_set(st: BurlingStructure, fam: StableFamily, colors: Sequence[int], g: Graph | None = None) -> int:
    """Index of a family set on which the proper coloring uses at least ``st.level`` colors.

    The search follows the induction on the level: pick a good set ``S`` in
    the master copy, then a good set ``X`` in the copy selected by ``S``, and
    return either ``S u X`` or ``S u {v_{S,X}}``. Pass ``g`` to have the
    coloring checked for properness first.
    """
    if len(colors) != st.n:
        raise InputError(f"coloring covers {len(colors)} vertices, graph has {st.n}")
    if g is not None:
        bad = improper_edges(g, colors)
        if bad:
            u, v = bad[0]
            raise InputError(f"coloring is not proper: edge ({u}, {v}) has both ends colored {colors[u]}")
    idx = _witness(st, colors, 0)
    prov = fam.provenance[idx]
    assert st.level == 1 or prov.kind in (UNION, APEX)
    return idx
