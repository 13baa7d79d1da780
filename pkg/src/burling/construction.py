"""Recursive construction of the Burling graphs and their stable-set families.

Vertex ids are assigned level by level: the master copy ``H`` takes ids
``0..n(H)-1``; then, for each stable set ``S`` of ``H`` in family order, the
copy ``H_S`` takes the next ``n(H)`` ids, followed by one apex ``v_{S,X}``
per set ``X`` of ``H_S`` in family order. Every sub-structure therefore maps
into the flat graph by a constant offset.

Family order at level ``k >= 2``: for ``s`` over ``S(H)`` and ``x`` over
``S(H_S)``, index ``2*(s*|S(H)| + x)`` holds ``S u X`` and the next index
holds ``S u {v_{S,X}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graph import Graph, InputError, is_stable_set
from .report import Report

DEFAULT_MAX_LEVEL = 5

BASE = "base"
UNION = "union"
APEX = "apex"


@dataclass(frozen=True)
class Provenance:
    kind: str
    s: int | None = None
    x: int | None = None

    def to_json(self) -> list:
        if self.kind == BASE:
            return [BASE]
        return [self.kind, self.s, self.x]

    @classmethod
    def from_json(cls, data) -> "Provenance":
        if data == [BASE] or data == BASE:
            return cls(BASE)
        kind, s, x = data
        if kind not in (UNION, APEX):
            raise InputError(f"unknown provenance kind {kind!r}")
        return cls(kind, int(s), int(x))


@dataclass(frozen=True)
class StableFamily:
    sets: tuple[tuple[int, ...], ...]
    provenance: tuple[Provenance, ...]

    def __len__(self) -> int:
        return len(self.sets)

    def __getitem__(self, i: int) -> tuple[int, ...]:
        return self.sets[i]

    @property
    def weight(self) -> int:
        """Total membership size, summed over all sets."""
        return sum(len(s) for s in self.sets)

    def shifted(self, offset: int) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(v + offset for v in s) for s in self.sets)


def union_index(s: int, x: int, sub_size: int) -> int:
    return 2 * (s * sub_size + x)


def apex_index(s: int, x: int, sub_size: int) -> int:
    return 2 * (s * sub_size + x) + 1


@dataclass(frozen=True, eq=False)
class BurlingStructure:
    """Provenance of ``G_k`` in its own local ids.

    ``sub`` is the structure of ``G_{k-1}``; it is shared by the master copy
    (offset 0) and by every copy ``H_S`` (offset ``copy_offsets[s]``).
    """

    level: int
    n: int
    family: StableFamily
    sub: "BurlingStructure | None" = None
    copy_offsets: tuple[int, ...] = ()
    apex_starts: tuple[int, ...] = ()

    master_offset = 0

    @property
    def base_vertex(self) -> int | None:
        return 0 if self.level == 1 else None

    @property
    def master(self) -> "BurlingStructure | None":
        return self.sub

    @property
    def copies(self) -> tuple[tuple["BurlingStructure", int], ...]:
        """``(structure, offset)`` for each copy ``H_S``, in family order of ``S(H)``."""
        if self.sub is None:
            return ()
        return tuple((self.sub, off) for off in self.copy_offsets)

    def apex(self, s: int, x: int) -> int:
        """Vertex id of ``v_{S,X}`` for ``S = S(H)[s]`` and ``X = S(H_S)[x]``."""
        if self.sub is None:
            raise InputError("level-1 structure has no apexes")
        if not 0 <= x < len(self.sub.family):
            raise InputError(f"apex index x={x} out of range")
        return self.apex_starts[s] + x

    def apexes(self) -> dict[tuple[int, int], int]:
        if self.sub is None:
            return {}
        m = len(self.sub.family)
        return {(s, x): start + x for s, start in enumerate(self.apex_starts) for x in range(m)}

    def master_vertices(self) -> range:
        return range(0, self.sub.n) if self.sub else range(0)

    def copy_vertices(self, s: int) -> range:
        off = self.copy_offsets[s]
        return range(off, off + self.sub.n)

    def apex_vertices(self, s: int) -> range:
        start = self.apex_starts[s]
        return range(start, start + len(self.sub.family))

    def vertex_map(self, s: int | None = None):
        """Local-to-flat id map for the master (``s=None``) or for copy ``H_S``."""
        off = self.master_offset if s is None else self.copy_offsets[s]
        return lambda v: v + off

    def parts(self) -> list[range]:
        if self.sub is None:
            return [range(0, 1)]
        out = [self.master_vertices()]
        for s in range(len(self.copy_offsets)):
            out.append(self.copy_vertices(s))
            out.append(self.apex_vertices(s))
        return out


def predicted_counts(k: int) -> tuple[int, int, int, int]:
    """``(vertices, edges, family size, family weight)`` of ``G_k`` from the recurrences."""
    if k < 1:
        raise InputError(f"level must be >= 1, got {k}")
    n, e, s, w = 1, 0, 1, 1
    for _ in range(k - 1):
        n, e, s, w = n + s * (n + s), e + s * (e + w), 2 * s * s, 3 * s * w + s * s
    return n, e, s, w


def _check_level(k: int, max_level: int) -> None:
    if k < 1:
        raise InputError(f"level must be >= 1, got {k}")
    if k > max_level:
        n, e, s, _ = predicted_counts(k)
        raise InputError(
            f"level {k} exceeds the configured cap {max_level}: "
            f"G_{k} would have {n} vertices, {e} edges and {s} stable sets"
        )


@lru_cache(maxsize=None)
def _build(k: int) -> tuple[BurlingStructure, tuple[tuple[int, int], ...]]:
    if k == 1:
        fam = StableFamily(((0,),), (Provenance(BASE),))
        return BurlingStructure(1, 1, fam), ()

    sub, sub_edges = _build(k - 1)
    n_h = sub.n
    fam_h = sub.family.sets
    m = len(fam_h)

    edges = list(sub_edges)
    sets: list[tuple[int, ...]] = []
    prov: list[Provenance] = []
    copy_offsets = []
    apex_starts = []
    nxt = n_h
    for s, S in enumerate(fam_h):
        off = nxt
        start = off + n_h
        copy_offsets.append(off)
        apex_starts.append(start)
        edges.extend((u + off, v + off) for u, v in sub_edges)
        for x, X in enumerate(fam_h):
            apex = start + x
            X_flat = tuple(v + off for v in X)
            edges.extend((v, apex) for v in X_flat)
            # master ids < copy ids < apex ids, so concatenation stays sorted
            sets.append(S + X_flat)
            prov.append(Provenance(UNION, s, x))
            sets.append(S + (apex,))
            prov.append(Provenance(APEX, s, x))
        nxt = start + m

    fam = StableFamily(tuple(sets), tuple(prov))
    if len(set(fam.sets)) != len(fam.sets):
        raise AssertionError(f"G_{k}: stable family contains repeated sets")
    st = BurlingStructure(k, nxt, fam, sub, tuple(copy_offsets), tuple(apex_starts))
    return st, tuple(edges)


@lru_cache(maxsize=None)
def _build_graph(k: int) -> Graph:
    st, edges = _build(k)
    # edges are well-formed by construction; skip the O(m) re-validation
    return Graph(st.n, edges, check=False)


def build_burling(k: int, max_level: int = DEFAULT_MAX_LEVEL) -> tuple[Graph, StableFamily, BurlingStructure]:
    """Build ``G_k``, its stable-set family and the provenance structure.

    Results are cached per level; all returned objects are immutable.
    """
    _check_level(k, max_level)
    st, _ = _build(k)
    return _build_graph(k), st.family, st


def verify_family(g: Graph, fam: StableFamily) -> Report:
    """Report every set that is not stable in ``g`` and every repeated set."""
    rep = Report()
    nbrs = g.neighbor_sets
    for i, members in enumerate(fam.sets):
        bad = [v for v in members if not 0 <= v < g.n]
        if bad:
            rep.add("invalid_vertex", index=i, vertices=bad)
            continue
        inside = set(members)
        for v in members:
            hit = nbrs[v] & inside
            if hit:
                u = min(hit)
                rep.add("not_stable", index=i, edge=[min(u, v), max(u, v)])
                break
    first_seen: dict[frozenset[int], int] = {}
    for i, members in enumerate(fam.sets):
        key = frozenset(members)
        if key in first_seen:
            rep.add("duplicate", indices=[first_seen[key], i])
        else:
            first_seen[key] = i
    return rep


def check_structure(g: Graph, st: BurlingStructure) -> Report:
    """Audit the provenance invariants of ``st`` against the flat graph ``g``."""
    rep = Report()
    if st.n != g.n:
        rep.add("vertex_count", structure=st.n, graph=g.n)
        return rep
    if st.level == 1:
        if g.n != 1 or g.m or st.sub is not None:
            rep.add("base_shape", n=g.n, m=g.m)
        return rep
    if len(st.copy_offsets) != len(st.sub.family):
        rep.add("copy_count", copies=len(st.copy_offsets), expected=len(st.sub.family))
    seen = [0] * g.n
    for part in st.parts():
        for v in part:
            seen[v] += 1
    if any(c != 1 for c in seen):
        rep.add("not_partition", bad=[v for v, c in enumerate(seen) if c != 1][:10])
    for s, off in enumerate(st.copy_offsets):
        for x, X in enumerate(st.sub.family.sets):
            apex = st.apex(s, x)
            want = tuple(v + off for v in X)
            if g.adj[apex] != want:
                rep.add("apex_neighbourhood", s=s, x=x, apex=apex)
    return rep


def is_family_stable(g: Graph, fam: StableFamily) -> bool:
    return all(is_stable_set(g, s) for s in fam.sets)
