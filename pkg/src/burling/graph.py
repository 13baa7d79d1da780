"""Undirected simple graphs over dense integer ids, plus elementary predicates."""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Sequence


class InputError(ValueError):
    """Raised when an operation receives malformed or out-of-contract input."""


class Graph:
    """Immutable undirected simple graph on vertices ``0..n-1``.

    Edges are stored as sorted ``(u, v)`` pairs with ``u < v``, in
    lexicographic order. Adjacency is derived once at construction.
    """

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = (), *, check: bool = True):
        if n < 0:
            raise InputError(f"vertex count must be non-negative, got {n}")
        pairs = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if u > v:
                u, v = v, u
            pairs.append((u, v))
        pairs.sort()
        if check:
            for i, (u, v) in enumerate(pairs):
                if u == v:
                    raise InputError(f"self-loop at vertex {u}")
                if u < 0 or v >= n:
                    raise InputError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
                if i and pairs[i - 1] == (u, v):
                    raise InputError(f"duplicate edge ({u}, {v})")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in pairs:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        self.n = n
        self.edges = tuple(pairs)
        self.adj = tuple(tuple(lst) for lst in adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        """Hashed neighbourhoods for intersection-heavy callers."""
        return tuple(frozenset(a) for a in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise InputError(f"vertex id {v} outside 0..{self.n - 1}")


def vertex_set(g: Graph, members: Iterable[int]) -> tuple[int, ...]:
    """Normalize ``members`` into a sorted duplicate-free tuple valid for ``g``."""
    out = tuple(sorted(set(members)))
    for v in out:
        g.check_vertex(v)
    return out


def complete_graph(q: int) -> Graph:
    return Graph(q, [(i, j) for i in range(q) for j in range(i + 1, q)])


def is_triangle_free(g: Graph) -> bool:
    # per edge (u, v) with u < v, intersect the two sorted neighbour lists
    adj = g.adj
    for u, v in g.edges:
        a, b = adj[u], adj[v]
        i = j = 0
        la, lb = len(a), len(b)
        while i < la and j < lb:
            x, y = a[i], b[j]
            if x == y:
                return False
            if x < y:
                i += 1
            else:
                j += 1
    return True


def is_stable_set(g: Graph, s: Iterable[int]) -> bool:
    members = list(s)
    for v in members:
        g.check_vertex(v)
    nbrs = g.neighbor_sets
    inside = set(members)
    return all(inside.isdisjoint(nbrs[v]) for v in members)


def _check_total(g: Graph, colors: Sequence[int]) -> None:
    if len(colors) != g.n:
        raise InputError(f"coloring covers {len(colors)} vertices, graph has {g.n}")
    for v, c in enumerate(colors):
        if c is None or c < 0:
            raise InputError(f"vertex {v} has no valid color ({c!r})")


def is_proper_coloring(g: Graph, colors: Sequence[int]) -> bool:
    """True iff every edge has distinctly colored endpoints.

    ``colors`` must be total: one non-negative color per vertex id.
    """
    _check_total(g, colors)
    return all(colors[u] != colors[v] for u, v in g.edges)


def improper_edges(g: Graph, colors: Sequence[int]) -> list[tuple[int, int]]:
    _check_total(g, colors)
    return [(u, v) for u, v in g.edges if colors[u] == colors[v]]


def greedy_coloring(g: Graph, order: Sequence[int] | None = None) -> tuple[int, ...]:
    """First-fit coloring along ``order`` (identity when omitted)."""
    if order is None:
        order = range(g.n)
    order = list(order)
    if len(order) != g.n or sorted(order) != list(range(g.n)):
        raise InputError("order must be a permutation of all vertex ids")
    colors = [-1] * g.n
    adj = g.adj
    for v in order:
        used = {colors[w] for w in adj[v]}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return tuple(colors)


def random_greedy_coloring(g: Graph, rng) -> tuple[int, ...]:
    """Greedy coloring along a uniformly random order drawn from ``rng``."""
    order = list(range(g.n))
    rng.shuffle(order)
    return greedy_coloring(g, order)


def two_coloring(g: Graph) -> tuple[int, ...] | None:
    """BFS 2-coloring, or None if the graph has an odd cycle."""
    colors = [-1] * g.n
    adj = g.adj
    for start in range(g.n):
        if colors[start] != -1:
            continue
        colors[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if colors[w] == -1:
                    colors[w] = 1 - colors[u]
                    queue.append(w)
                elif colors[w] == colors[u]:
                    return None
    return tuple(colors)


def is_bipartite(g: Graph) -> bool:
    return two_coloring(g) is not None
