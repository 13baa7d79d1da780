"""JSON and DOT serialization for graphs, families, decompositions and colorings.

Every JSON document carries ``"format_version": "MAJOR.MINOR"``; readers
accept any minor of a known major and reject the rest. Output is compact
and key-ordered by construction, so equal objects give byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .construction import BurlingStructure, Provenance, StableFamily
from .decomp import Decomposition, PathDecomposition, TreeDecomposition
from .graph import Graph, InputError

FORMAT_VERSION = "1.0"
SUPPORTED_MAJOR = 1


class FormatError(InputError):
    """A document is malformed; the message names the offending field."""


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, separators=(",", ":")) + "\n"


def write_json(path: str | Path, doc: dict[str, Any]) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def read_json(path: str | Path) -> dict[str, Any]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"{path}: cannot read ({exc.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top level must be an object")
    return doc


def check_version(doc: dict[str, Any]) -> None:
    ver = doc.get("format_version")
    if not isinstance(ver, str):
        raise FormatError("field 'format_version' missing or not a string")
    try:
        major = int(ver.split(".")[0])
    except ValueError:
        raise FormatError(f"field 'format_version' is not MAJOR.MINOR: {ver!r}") from None
    if major != SUPPORTED_MAJOR:
        raise FormatError(f"field 'format_version': unsupported major version {ver!r}")


def _int(doc: dict, key: str, minimum: int | None = None) -> int:
    val = doc.get(key)
    if isinstance(val, bool) or not isinstance(val, int):
        raise FormatError(f"field {key!r} must be an integer")
    if minimum is not None and val < minimum:
        raise FormatError(f"field {key!r} must be >= {minimum}")
    return val


def _int_lists(doc: dict, key: str, arity: int | None = None) -> list[list[int]]:
    val = doc.get(key)
    if not isinstance(val, list):
        raise FormatError(f"field {key!r} must be a list")
    for i, item in enumerate(val):
        if not isinstance(item, list) or any(isinstance(x, bool) or not isinstance(x, int) for x in item):
            raise FormatError(f"field {key!r}[{i}] must be a list of integers")
        if arity is not None and len(item) != arity:
            raise FormatError(f"field {key!r}[{i}] must have {arity} entries")
    return val


# ---------------------------------------------------------------- graphs


def graph_to_json(g: Graph) -> dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(doc: dict[str, Any]) -> Graph:
    check_version(doc)
    n = _int(doc, "n", 0)
    edges = _int_lists(doc, "edges", 2)
    try:
        return Graph(n, edges)
    except InputError as exc:
        raise FormatError(f"field 'edges': {exc}") from None


def structure_to_json(st: BurlingStructure) -> dict[str, Any]:
    return {
        "level": st.level,
        "n": st.n,
        "copy_offsets": list(st.copy_offsets),
        "apex_starts": list(st.apex_starts),
        "sub": structure_to_json(st.sub) if st.sub is not None else None,
    }


def burling_to_json(g: Graph, fam: StableFamily, st: BurlingStructure) -> dict[str, Any]:
    doc = graph_to_json(g)
    doc["level"] = st.level
    doc["family"] = [list(s) for s in fam.sets]
    doc["provenance"] = [p.to_json() for p in fam.provenance]
    doc["structure"] = structure_to_json(st)
    return doc


def family_from_json(doc: dict[str, Any]) -> StableFamily | None:
    """The stable family stored alongside a graph, or None when absent."""
    if "family" not in doc:
        return None
    sets = _int_lists(doc, "family")
    prov_raw = doc.get("provenance")
    if prov_raw is None:
        prov = tuple(Provenance("base") for _ in sets)
    else:
        if not isinstance(prov_raw, list) or len(prov_raw) != len(sets):
            raise FormatError("field 'provenance' must be a list as long as 'family'")
        try:
            prov = tuple(Provenance.from_json(p) for p in prov_raw)
        except (InputError, TypeError, ValueError) as exc:
            raise FormatError(f"field 'provenance': {exc}") from None
    return StableFamily(tuple(tuple(s) for s in sets), prov)


# ---------------------------------------------------------------- decompositions


def decomposition_to_json(d: Decomposition, designated: tuple[int, ...] | None = None) -> dict[str, Any]:
    doc: dict[str, Any] = {"format_version": FORMAT_VERSION, "kind": d.kind, "bags": [list(b) for b in d.bags]}
    if isinstance(d, TreeDecomposition):
        doc["tree_edges"] = [list(e) for e in d.tree_edges]
        doc["root"] = d.root
    else:
        doc["root"] = 0 if d.bags else None
    if designated is not None:
        doc["designated"] = list(designated)
    return doc


def decomposition_from_json(doc: dict[str, Any]) -> tuple[Decomposition, tuple[int, ...] | None]:
    check_version(doc)
    kind = doc.get("kind")
    if kind not in ("tree", "path"):
        raise FormatError(f"field 'kind' must be 'tree' or 'path', got {kind!r}")
    bags = _int_lists(doc, "bags")
    root = doc.get("root")
    if root is not None and (isinstance(root, bool) or not isinstance(root, int)):
        raise FormatError("field 'root' must be an integer or null")
    designated = doc.get("designated")
    if designated is not None:
        if not isinstance(designated, list) or not all(isinstance(t, int) for t in designated):
            raise FormatError("field 'designated' must be a list of integers")
        designated = tuple(designated)
    if kind == "tree":
        edges = _int_lists(doc, "tree_edges", 2)
        return TreeDecomposition(tuple(tuple(b) for b in bags), tuple(tuple(e) for e in edges), root), designated
    if "tree_edges" in doc:
        raise FormatError("field 'tree_edges' is not allowed for kind 'path'")
    return PathDecomposition(tuple(tuple(b) for b in bags)), designated


# ---------------------------------------------------------------- colorings


def coloring_to_json(colors: tuple[int, ...]) -> dict[str, Any]:
    return {"format_version": FORMAT_VERSION, "colors": list(colors)}


def coloring_from_json(doc: dict[str, Any]) -> tuple[int, ...]:
    check_version(doc)
    colors = doc.get("colors")
    if not isinstance(colors, list) or any(isinstance(c, bool) or not isinstance(c, int) or c < 0 for c in colors):
        raise FormatError("field 'colors' must be a list of non-negative integers")
    return tuple(colors)


# ---------------------------------------------------------------- DOT


def graph_to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v};" for v in range(g.n))
    lines.extend(f"  {u} -- {v};" for u, v in g.edges)
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_to_dot(d: Decomposition, name: str = "D") -> str:
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for t, bag in enumerate(d.bags):
        label = "{" + ",".join(map(str, bag)) + "}"
        lines.append(f'  {t} [label="{t}: {label}"];')
    edges = d.tree_edges if isinstance(d, TreeDecomposition) else [(i, i + 1) for i in range(len(d.bags) - 1)]
    lines.extend(f"  {a} -- {b};" for a, b in edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
