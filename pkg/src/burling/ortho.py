"""A tree-decomposition and a path-decomposition of ``G_k`` whose bags meet in at most two vertices.

The build follows the level recursion of :mod:`burling.construction`. The
tree of ``G_k`` is the tree of ``H`` followed, for each ``S`` in family
order, by a shifted copy of the tree of ``H_S`` (attached through its node 0
to the node of ``H`` carrying ``S``) and then the two leaves for each ``X``.
The path is the path of ``H`` followed by the augmented paths of the copies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .construction import (
    DEFAULT_MAX_LEVEL,
    StableFamily,
    _build,
    _check_level,
    apex_index,
    predicted_counts,
    union_index,
)
from .decomp import BagFamily, PathDecomposition, TreeDecomposition, scan_pairs
from .graph import Graph


@dataclass(frozen=True, eq=False)
class OrthogonalPair:
    tree: TreeDecomposition
    path: PathDecomposition
    designated: tuple[int, ...]
    """Family index -> tree node whose bag is exactly that stable set."""


@lru_cache(maxsize=None)
def _build_pair(k: int) -> OrthogonalPair:
    if k == 1:
        return OrthogonalPair(TreeDecomposition(((0,),), (), 0), PathDecomposition(((0,),)), (0,))

    st, _ = _build(k)
    sub = st.sub
    prev = _build_pair(k - 1)
    sub_sets = sub.family.sets
    m = len(sub_sets)
    sub_bags = prev.tree.bags
    sub_edges = prev.tree.tree_edges
    sub_designated = prev.designated
    node_of_x = {t: x for x, t in enumerate(sub_designated)}

    bags: list[tuple[int, ...]] = list(sub_bags)
    edges: list[tuple[int, int]] = list(sub_edges)
    designated = [0] * (2 * m * m)
    path_bags: list[tuple[int, ...]] = list(prev.path.bags)

    for s, S in enumerate(sub_sets):
        off = st.copy_offsets[s]
        apex0 = st.apex_starts[s]
        base = len(bags)
        for t, B in enumerate(sub_bags):
            shifted = tuple(v + off for v in B)
            x = node_of_x.get(t)
            if x is None:
                bags.append(S + shifted)
            else:
                # t is t_{S,X}: its old bag is exactly X
                bags.append(S + shifted + (apex0 + x,))
        edges.extend((a + base, b + base) for a, b in sub_edges)
        edges.append((sub_designated[s], base))
        for x, X in enumerate(sub_sets):
            hub = base + sub_designated[x]
            apex = apex0 + x
            t1 = len(bags)
            bags.append(S + tuple(v + off for v in X))
            bags.append(S + (apex,))
            edges.append((hub, t1))
            edges.append((hub, t1 + 1))
            designated[union_index(s, x, m)] = t1
            designated[apex_index(s, x, m)] = t1 + 1
        apexes = tuple(range(apex0, apex0 + m))
        path_bags.extend(tuple(v + off for v in B) + apexes for B in prev.path.bags)

    tree = TreeDecomposition(tuple(bags), tuple(edges), 0)
    return OrthogonalPair(tree, PathDecomposition(tuple(path_bags)), tuple(designated))


def build_orthogonal(k: int, max_level: int = DEFAULT_MAX_LEVEL) -> OrthogonalPair:
    """Tree- and path-decomposition of ``G_k`` with pairwise bag intersections of size <= 2.

    Besides the 2-bound, every family set is the bag of its designated tree
    node, and every path bag meets every family set in at most one vertex.
    """
    _check_level(k, max_level)
    return _build_pair(k)


def predicted_decomposition_sizes(k: int) -> tuple[int, int]:
    """``(tree nodes, path nodes)`` for the level-``k`` pair."""
    t, p = 1, 1
    for j in range(2, k + 1):
        s = predicted_counts(j - 1)[2]
        t, p = t + s * t + 2 * s * s, p * (1 + s)
    return t, p


@dataclass
class OrthogonalityReport:
    intersections: list[tuple[int, int, int]] = field(default_factory=list)
    """(tree node, path node, size) with size > 2."""
    missing: list[int] = field(default_factory=list)
    """Family indices whose designated bag differs from the set (or is shared)."""
    set_hits: list[tuple[int, int, int]] = field(default_factory=list)
    """(family index, path node, size) with size > 1."""
    max_intersection: int = 0

    @property
    def ok(self) -> bool:
        return not (self.intersections or self.missing or self.set_hits)

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "max_tree_path_intersection": self.max_intersection,
            "tree_path_violations": [list(v) for v in self.intersections],
            "designated_misses": self.missing,
            "set_path_violations": [list(v) for v in self.set_hits],
        }


def verify_theorem2(
    g: Graph,
    fam: StableFamily,
    pair: OrthogonalPair,
    *,
    threads: int = 1,
    exhaustive: bool = False,
) -> OrthogonalityReport:
    """Check the three properties of the pair against ``(g, fam)``.

    Tree/path intersections use the early-exit scan unless ``exhaustive``,
    in which case every offending pair is listed.
    """
    rep = OrthogonalityReport()
    scan = scan_pairs(pair.tree, pair.path, 2, early_exit=not exhaustive, threads=threads)
    rep.max_intersection = scan.maximum
    rep.intersections = scan.violations

    bags = pair.tree.bags
    owner: dict[int, int] = {}
    for i, members in enumerate(fam.sets):
        t = pair.designated[i] if i < len(pair.designated) else -1
        if not 0 <= t < len(bags) or bags[t] != tuple(sorted(members)) or t in owner:
            rep.missing.append(i)
        else:
            owner[t] = i

    hits = scan_pairs(BagFamily(fam.sets), pair.path, 1, threads=threads)
    rep.set_hits = hits.violations
    return rep
