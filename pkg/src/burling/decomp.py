"""Tree- and path-decompositions: validity, width, k-width and the spaghetti test."""

from __future__ import annotations

import itertools
from collections import Counter, defaultdict, deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy import sparse

from .graph import Graph, InputError, two_coloring
from .report import Report

Bag = tuple[int, ...]


def _norm_bags(bags: Iterable[Iterable[int]]) -> tuple[Bag, ...]:
    return tuple(b if isinstance(b, tuple) and _is_sorted_unique(b) else tuple(sorted(set(b))) for b in bags)


def _is_sorted_unique(b: tuple) -> bool:
    return all(b[i] < b[i + 1] for i in range(len(b) - 1))


class _BagsMixin:
    bags: tuple[Bag, ...]

    def __len__(self) -> int:
        return len(self.bags)

    @cached_property
    def universe(self) -> int:
        """One more than the largest vertex id in any bag."""
        return max((b[-1] for b in self.bags if b), default=-1) + 1

    @cached_property
    def occurrences(self) -> tuple[tuple[int, ...], ...]:
        """Per vertex id, the sorted node indices whose bag contains it."""
        occ: list[list[int]] = [[] for _ in range(self.universe)]
        for t, bag in enumerate(self.bags):
            for v in bag:
                occ[v].append(t)
        return tuple(tuple(o) for o in occ)

    @cached_property
    def incidence(self) -> sparse.csr_matrix:
        """Node-by-vertex 0/1 matrix of bag membership."""
        indptr = np.zeros(len(self.bags) + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(b) for b in self.bags])
        indices = np.fromiter(itertools.chain.from_iterable(self.bags), dtype=np.int32, count=int(indptr[-1]))
        data = np.ones(len(indices), dtype=np.int32)
        return sparse.csr_matrix((data, indices, indptr), shape=(len(self.bags), max(self.universe, 0)))


@dataclass(frozen=True, eq=False)
class TreeDecomposition(_BagsMixin):
    bags: tuple[Bag, ...]
    tree_edges: tuple[tuple[int, int], ...] = ()
    root: int | None = None

    kind = "tree"

    def __post_init__(self):
        object.__setattr__(self, "bags", _norm_bags(self.bags))
        object.__setattr__(self, "tree_edges", tuple((int(a), int(b)) for a, b in self.tree_edges))

    @cached_property
    def tree_adj(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.bags]
        for a, b in self.tree_edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(x) for x in adj)

    def parents(self, root: int) -> list[int]:
        """BFS parent of each node when the tree hangs from ``root`` (-1 for the root)."""
        if not 0 <= root < len(self.bags):
            raise InputError(f"root {root} is not a node (have {len(self.bags)} nodes)")
        parent = [-2] * len(self.bags)
        parent[root] = -1
        queue = deque([root])
        adj = self.tree_adj
        while queue:
            t = queue.popleft()
            for u in adj[t]:
                if parent[u] == -2:
                    parent[u] = t
                    queue.append(u)
        return parent


@dataclass(frozen=True, eq=False)
class PathDecomposition(_BagsMixin):
    bags: tuple[Bag, ...]

    kind = "path"

    def __post_init__(self):
        object.__setattr__(self, "bags", _norm_bags(self.bags))

    def as_tree(self, root: int | None = 0) -> TreeDecomposition:
        edges = tuple((i, i + 1) for i in range(len(self.bags) - 1))
        return TreeDecomposition(self.bags, edges, root if self.bags else None)


@dataclass(frozen=True, eq=False)
class BagFamily(_BagsMixin):
    """A bare list of vertex sets, scanned like the bags of a decomposition."""

    bags: tuple[Bag, ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", _norm_bags(self.bags))


Decomposition = TreeDecomposition | PathDecomposition


def _check_ids(g: Graph, d: Decomposition, rep: Report) -> bool:
    clean = True
    for t, bag in enumerate(d.bags):
        bad = [v for v in bag if not 0 <= v < g.n]
        if bad:
            rep.add("invalid_vertex", node=t, vertices=bad)
            clean = False
    return clean


def _check_coverage(g: Graph, d: Decomposition, rep: Report) -> None:
    occ = d.occurrences
    sets = [frozenset(o) for o in occ]
    empty = frozenset()
    for v in range(g.n):
        if v >= len(occ) or not occ[v]:
            rep.add("uncovered_vertex", vertex=v)
    for u, v in g.edges:
        su = sets[u] if u < len(sets) else empty
        sv = sets[v] if v < len(sets) else empty
        if su.isdisjoint(sv):
            rep.add("uncovered_edge", edge=[u, v])


def tree_shape_problems(n_nodes: int, edges: Sequence[tuple[int, int]]) -> list[str]:
    problems = []
    if n_nodes == 0:
        return ["tree has no nodes"]
    seen = set()
    for a, b in edges:
        if not (0 <= a < n_nodes and 0 <= b < n_nodes):
            problems.append(f"tree edge ({a}, {b}) references a missing node")
        elif a == b:
            problems.append(f"tree edge ({a}, {b}) is a loop")
        elif (min(a, b), max(a, b)) in seen:
            problems.append(f"tree edge ({a}, {b}) repeated")
        else:
            seen.add((min(a, b), max(a, b)))
    if problems:
        return problems
    if len(edges) != n_nodes - 1:
        problems.append(f"{len(edges)} tree edges for {n_nodes} nodes")
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    mark = [False] * n_nodes
    mark[0] = True
    stack = [0]
    reached = 1
    while stack:
        t = stack.pop()
        for u in adj[t]:
            if not mark[u]:
                mark[u] = True
                reached += 1
                stack.append(u)
    if reached != n_nodes:
        problems.append(f"tree is disconnected ({reached} of {n_nodes} nodes reachable from node 0)")
    return problems


def validate_tree_decomposition(g: Graph, d: TreeDecomposition) -> Report:
    """Check ``d`` against ``g``; the report lists every violation by kind.

    Kinds: ``malformed_tree``, ``invalid_vertex``, ``uncovered_vertex``,
    ``uncovered_edge``, ``disconnected_occurrence``.
    """
    rep = Report()
    shape = tree_shape_problems(len(d.bags), d.tree_edges)
    for msg in shape:
        rep.add("malformed_tree", message=msg)
    if d.root is not None and not 0 <= d.root < len(d.bags):
        rep.add("malformed_tree", message=f"root {d.root} is not a node")
    _check_ids(g, d, rep)
    _check_coverage(g, d, rep)
    if shape:
        return rep
    # an occurrence set spans a forest; it is a subtree iff nodes - edges == 1
    inner = Counter()
    bags = d.bags
    bag_sets = [frozenset(b) for b in bags]
    for a, b in d.tree_edges:
        small, big = (a, b) if len(bags[a]) <= len(bags[b]) else (b, a)
        inner.update(v for v in bags[small] if v in bag_sets[big])
    occ = d.occurrences
    for v in range(min(g.n, len(occ))):
        if occ[v] and len(occ[v]) - inner[v] != 1:
            rep.add("disconnected_occurrence", vertex=v, components=len(occ[v]) - inner[v])
    return rep


def validate_path_decomposition(g: Graph, d: PathDecomposition) -> Report:
    """Like :func:`validate_tree_decomposition`, with contiguity along the path.

    Non-contiguous occurrences are reported as ``non_contiguous_occurrence``.
    """
    rep = Report()
    if not d.bags:
        rep.add("malformed_tree", message="path has no nodes")
    _check_ids(g, d, rep)
    _check_coverage(g, d, rep)
    occ = d.occurrences
    for v in range(min(g.n, len(occ))):
        o = occ[v]
        if o and o[-1] - o[0] + 1 != len(o):
            rep.add("non_contiguous_occurrence", vertex=v, positions=list(o))
    return rep


def validate_decomposition(g: Graph, d: Decomposition) -> Report:
    if isinstance(d, PathDecomposition):
        return validate_path_decomposition(g, d)
    return validate_tree_decomposition(g, d)


def width(d: Decomposition) -> int:
    if not d.bags:
        raise InputError("width of an empty decomposition is undefined")
    return max(len(b) for b in d.bags) - 1


# ---------------------------------------------------------------- k-width


def k_width_naive(ds: Sequence[Decomposition]) -> int:
    """Maximum intersection size over the full product of nodes."""
    if not ds:
        raise InputError("k-width needs at least one decomposition")
    if any(not d.bags for d in ds):
        raise InputError("k-width of an empty decomposition is undefined")
    best = 0
    bag_sets = [[frozenset(b) for b in d.bags] for d in ds]
    for combo in itertools.product(*bag_sets):
        size = len(frozenset.intersection(*combo))
        if size > best:
            best = size
    return best


def _row_chunks(n_rows: int, chunk: int) -> list[tuple[int, int]]:
    return [(i, min(i + chunk, n_rows)) for i in range(0, n_rows, chunk)]


def _aligned(a: Decomposition, b: Decomposition) -> tuple[sparse.csr_matrix, sparse.csc_matrix]:
    width_ = max(a.universe, b.universe, 1)
    A = a.incidence
    B = b.incidence
    if A.shape[1] != width_:
        A = sparse.csr_matrix((A.data, A.indices, A.indptr), shape=(A.shape[0], width_))
    if B.shape[1] != width_:
        B = sparse.csr_matrix((B.data, B.indices, B.indptr), shape=(B.shape[0], width_))
    return A, B.T.tocsc()


@dataclass
class PairScan:
    """Result of scanning all (node of first, node of second) pairs."""

    maximum: int = 0
    argmax: tuple[int, int] | None = None
    violations: list[tuple[int, int, int]] = field(default_factory=list)
    exceeded: bool = False


def _scan_chunk(A, BT, lo, hi, bound):
    C = (A[lo:hi] @ BT).tocoo()
    if C.nnz == 0:
        return 0, None, []
    i = int(np.argmax(C.data))
    best = int(C.data[i])
    arg = (int(C.row[i]) + lo, int(C.col[i]))
    viol = []
    if bound is not None and best > bound:
        sel = np.nonzero(C.data > bound)[0]
        viol = sorted((int(C.row[j]) + lo, int(C.col[j]), int(C.data[j])) for j in sel)
    return best, arg, viol


def scan_pairs(
    a: Decomposition,
    b: Decomposition,
    bound: int | None = None,
    *,
    early_exit: bool = False,
    threads: int = 1,
    chunk: int = 2048,
) -> PairScan:
    """Intersection sizes ``|A_t & B_p|`` over all node pairs via sparse incidence products.

    With ``bound`` set, every pair exceeding it is collected; ``early_exit``
    stops after the first chunk (in node order of ``a``) that exceeds the
    bound. Chunks are merged in order, so results do not depend on ``threads``.
    """
    if not a.bags or not b.bags:
        raise InputError("k-width of an empty decomposition is undefined")
    A, BT = _aligned(a, b)
    chunks = _row_chunks(A.shape[0], chunk)
    out = PairScan()

    def merge(res):
        best, arg, viol = res
        if arg is not None and (out.argmax is None or best > out.maximum):
            out.maximum, out.argmax = best, arg
        out.violations.extend(viol)

    if threads <= 1:
        for lo, hi in chunks:
            merge(_scan_chunk(A, BT, lo, hi, bound))
            if early_exit and out.violations:
                break
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            # waves of `threads` chunks keep early exit meaningful
            for w in range(0, len(chunks), threads):
                wave = chunks[w:w + threads]
                for res in pool.map(lambda c: _scan_chunk(A, BT, c[0], c[1], bound), wave):
                    merge(res)
                    if early_exit and out.violations:
                        break
                if early_exit and out.violations:
                    break
    out.exceeded = bool(out.violations)
    return out


def _k_width_grouped(ds: Sequence[Decomposition]) -> int:
    """Exact k-width for any k by refining non-empty intersections one decomposition at a time."""
    current: list[frozenset[int]] = [frozenset(b) for b in ds[0].bags if b]
    for d in ds[1:]:
        occ = d.occurrences
        refined: set[frozenset[int]] = set()
        for inter in current:
            groups: dict[int, list[int]] = defaultdict(list)
            for v in inter:
                if v < len(occ):
                    for p in occ[v]:
                        groups[p].append(v)
            refined.update(frozenset(g) for g in groups.values())
        current = list(refined)
        if not current:
            return 0
    return max((len(s) for s in current), default=0)


def k_width(ds: Sequence[Decomposition], threads: int = 1) -> int:
    """Largest ``|B^1_{t1} & ... & B^k_{tk}|`` over all node tuples."""
    if not ds:
        raise InputError("k-width needs at least one decomposition")
    if any(not d.bags for d in ds):
        raise InputError("k-width of an empty decomposition is undefined")
    if len(ds) == 1:
        return max(len(b) for b in ds[0].bags)
    if len(ds) == 2:
        return scan_pairs(ds[0], ds[1], threads=threads).maximum
    return _k_width_grouped(ds)


def k_width_at_most(ds: Sequence[Decomposition], bound: int, threads: int = 1) -> bool:
    """True iff the k-width is at most ``bound``; stops at the first excess."""
    if not ds:
        raise InputError("k-width needs at least one decomposition")
    if len(ds) == 2:
        return not scan_pairs(ds[0], ds[1], bound, early_exit=True, threads=threads).exceeded
    return k_width(ds) <= bound


# ---------------------------------------------------------------- spaghetti


def is_spaghetti(d: TreeDecomposition, root: int) -> bool:
    """True iff, rooted at ``root``, every vertex occurs along a single downward path.

    Equivalently: each vertex has exactly one occurrence node whose parent
    lacks it, and no occurrence node has two children that also contain it.
    """
    parent = d.parents(root)
    if any(p == -2 for p in parent):
        raise InputError("tree is disconnected; spaghetti test needs a tree")
    tops = Counter()
    branching = Counter()
    sets = [frozenset(b) for b in d.bags]
    for t, bag in enumerate(d.bags):
        p = parent[t]
        up = sets[p] if p >= 0 else frozenset()
        for v in bag:
            if v in up:
                branching[(p, v)] += 1
                if branching[(p, v)] > 1:
                    return False
            else:
                tops[v] += 1
                if tops[v] > 1:
                    return False
    return True


def spaghetti_roots(d: TreeDecomposition) -> list[bool]:
    return [is_spaghetti(d, r) for r in range(len(d.bags))]


# ---------------------------------------------------------------- examples


def grid_graph(rows: int, cols: int) -> Graph:
    """Grid with row-major ids ``(r, c) -> r*cols + c``."""
    if rows < 1 or cols < 1:
        raise InputError(f"grid dimensions must be positive, got {rows}x{cols}")
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)


def grid_path_decompositions(rows: int, cols: int) -> tuple[PathDecomposition, PathDecomposition]:
    """Column-pair and row-pair path-decompositions of the ``rows x cols`` grid."""
    if rows < 1 or cols < 1:
        raise InputError(f"grid dimensions must be positive, got {rows}x{cols}")

    def column(c):
        return [r * cols + c for r in range(rows)]

    def row(r):
        return [r * cols + c for c in range(cols)]

    if cols == 1:
        by_cols = [column(0)]
    else:
        by_cols = [column(c) + column(c + 1) for c in range(cols - 1)]
    if rows == 1:
        by_rows = [row(0)]
    else:
        by_rows = [row(r) + row(r + 1) for r in range(rows - 1)]
    return PathDecomposition(tuple(by_cols)), PathDecomposition(tuple(by_rows))


def bipartite_path_decompositions(
    g: Graph, part_a: Iterable[int], part_b: Iterable[int]
) -> tuple[PathDecomposition, PathDecomposition]:
    """Bags ``A + {b}`` for each ``b`` in B, and symmetrically ``B + {a}``."""
    A = sorted(set(part_a))
    B = sorted(set(part_b))
    for v in A + B:
        g.check_vertex(v)
    if set(A) & set(B) or len(A) + len(B) != g.n:
        raise InputError("parts must partition the vertex set")
    in_a = set(A)
    for u, v in g.edges:
        if (u in in_a) == (v in in_a):
            raise InputError(f"edge ({u}, {v}) does not cross the bipartition")
    first = [A + [b] for b in B] or [A]
    second = [B + [a] for a in A] or [B]
    return PathDecomposition(tuple(first)), PathDecomposition(tuple(second))


def bipartition(g: Graph) -> tuple[list[int], list[int]] | None:
    two = two_coloring(g)
    if two is None:
        return None
    return [v for v in range(g.n) if two[v] == 0], [v for v in range(g.n) if two[v] == 1]


def random_bipartite_graph(n_a: int, n_b: int, density: float, rng) -> tuple[Graph, list[int], list[int]]:
    """Random graph on parts ``0..n_a-1`` and ``n_a..n_a+n_b-1``; each cross pair is an edge with prob. ``density``."""
    if n_a < 0 or n_b < 0:
        raise InputError("part sizes must be non-negative")
    if not 0.0 <= density <= 1.0:
        raise InputError(f"density must lie in [0, 1], got {density}")
    edges = [(a, n_a + b) for a in range(n_a) for b in range(n_b) if rng.random() < density]
    return Graph(n_a + n_b, edges), list(range(n_a)), list(range(n_a, n_a + n_b))
