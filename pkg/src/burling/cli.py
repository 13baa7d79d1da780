"""Command-line front end.

Exit status: 0 when the requested property holds, 1 when a violation is
found or the property is refuted, 2 on usage or input errors, 3 when an
exact search ran out of budget without a decision.
"""

from __future__ import annotations

import argparse
import random
import sys
from collections import Counter
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .coloring import DEFAULT_BUDGET, BudgetExceeded, Colorable, has_q_coloring, witness_stable_set
from .construction import DEFAULT_MAX_LEVEL, build_burling, predicted_counts, verify_family
from .decomp import (
    PathDecomposition,
    TreeDecomposition,
    bipartite_path_decompositions,
    bipartition,
    grid_graph,
    grid_path_decompositions,
    is_spaghetti,
    k_width,
    k_width_at_most,
    k_width_naive,
    random_bipartite_graph,
    validate_decomposition,
    width,
)
from .formats import (
    FORMAT_VERSION,
    FormatError,
    burling_to_json,
    coloring_from_json,
    coloring_to_json,
    decomposition_from_json,
    decomposition_to_dot,
    decomposition_to_json,
    dumps,
    family_from_json,
    graph_from_json,
    graph_to_dot,
    read_json,
    write_json,
)
from .graph import InputError, is_proper_coloring, random_greedy_coloring
from .ortho import OrthogonalPair, build_orthogonal, predicted_decomposition_sizes, verify_theorem2

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_UNDETERMINED = 0, 1, 2, 3
_EXIT = {"ok": EXIT_OK, "violation": EXIT_VIOLATION, "undetermined": EXIT_UNDETERMINED, "error": EXIT_USAGE}


@dataclass
class RunManifest:
    command: str
    flags: dict[str, Any]
    seed: int | None = None
    artifact_paths: list[str] = field(default_factory=list)
    versions: dict[str, str] = field(default_factory=lambda: {"format_version": FORMAT_VERSION, "package": __version__})


@dataclass
class Outcome:
    status: str
    result: dict[str, Any]
    lines: list[str]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(f"{self.prog}: {message}")


def _mark(ok: bool) -> str:
    return "confirmed" if ok else "VIOLATED"


def _load_graph(path: str, manifest: RunManifest):
    manifest.artifact_paths.append(path)
    doc = read_json(path)
    try:
        return graph_from_json(doc), family_from_json(doc)
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def _load_decomp(path: str, manifest: RunManifest):
    manifest.artifact_paths.append(path)
    try:
        return decomposition_from_json(read_json(path))
    except FormatError as exc:
        raise FormatError(f"{path}: {exc}") from None


def _write(path: str, doc: dict, manifest: RunManifest) -> None:
    manifest.artifact_paths.append(path)
    write_json(path, doc)


# ---------------------------------------------------------------- commands


def cmd_gen(args, manifest: RunManifest) -> Outcome:
    g, fam, st = build_burling(args.k, args.max_level)
    _write(args.out, burling_to_json(g, fam, st), manifest)
    res = {"level": args.k, "n": g.n, "edges": g.m, "family_size": len(fam), "out": args.out}
    return Outcome("ok", res, [f"wrote G_{args.k}: n={g.n} e={g.m} s={len(fam)} -> {args.out}"])


def cmd_stats(args, manifest: RunManifest) -> Outcome:
    n, e, s, w = predicted_counts(args.k)
    t, p = predicted_decomposition_sizes(args.k)
    res: dict[str, Any] = {"level": args.k, "n": n, "e": e, "s": s, "w": w, "tree_nodes": t, "path_nodes": p}
    lines = [f"n={n} e={e} s={s} tree_nodes={t} path_nodes={p} w={w}"]
    status = "ok"
    if args.check:
        g, fam, _ = build_burling(args.k, args.max_level)
        pair = build_orthogonal(args.k, args.max_level)
        built = {"n": g.n, "e": g.m, "s": len(fam), "w": fam.weight,
                 "tree_nodes": len(pair.tree), "path_nodes": len(pair.path)}
        mismatched = sorted(key for key, val in built.items() if res[key] != val)
        res["built"] = built
        res["mismatched"] = mismatched
        status = "violation" if mismatched else "ok"
        lines.append("built objects match predictions: " + _mark(not mismatched))
    return Outcome(status, res, lines)


def cmd_decompose(args, manifest: RunManifest) -> Outcome:
    pair = build_orthogonal(args.k, args.max_level)
    if args.out_tree:
        _write(args.out_tree, decomposition_to_json(pair.tree, pair.designated), manifest)
    if args.out_path:
        _write(args.out_path, decomposition_to_json(pair.path), manifest)
    res: dict[str, Any] = {
        "level": args.k,
        "tree_nodes": len(pair.tree),
        "path_nodes": len(pair.path),
        "tree_width": width(pair.tree),
        "path_width": width(pair.path),
    }
    lines = [f"G_{args.k}: tree nodes={len(pair.tree)} path nodes={len(pair.path)}"]
    status = "ok"
    if args.verify:
        g, fam, _ = build_burling(args.k, args.max_level)
        tree_rep = validate_decomposition(g, pair.tree)
        path_rep = validate_decomposition(g, pair.path)
        thm = verify_theorem2(g, fam, pair, threads=args.threads, exhaustive=args.exhaustive)
        res["tree_valid"] = tree_rep.to_dict()
        res["path_valid"] = path_rep.to_dict()
        res["properties"] = thm.to_dict()
        lines += [
            "tree-decomposition valid: " + _mark(tree_rep.ok),
            "path-decomposition valid: " + _mark(path_rep.ok),
            "2-width ≤ 2: " + _mark(not thm.intersections),
            "every family set is a tree bag: " + _mark(not thm.missing),
            "family sets meet path bags in ≤ 1 vertex: " + _mark(not thm.set_hits),
        ]
        if not (tree_rep.ok and path_rep.ok and thm.ok):
            status = "violation"
    return Outcome(status, res, lines)


def cmd_validate(args, manifest: RunManifest) -> Outcome:
    g, fam = _load_graph(args.graph, manifest)
    res: dict[str, Any] = {"n": g.n, "edges": g.m}
    lines = [f"graph: n={g.n} e={g.m} well-formed"]
    ok = True
    if fam is not None:
        rep = verify_family(g, fam)
        res["family"] = rep.to_dict()
        lines.append(f"stable family ({len(fam)} sets): " + _mark(rep.ok))
        ok &= rep.ok
    decomps = []
    for path in args.decomp or []:
        d, designated = _load_decomp(path, manifest)
        decomps.append((d, designated))
        rep = validate_decomposition(g, d)
        res.setdefault("decompositions", []).append({"file": path, "kind": d.kind, **rep.to_dict()})
        lines.append(f"{d.kind}-decomposition {path}: valid " + _mark(rep.ok))
        for v in rep.violations[:10]:
            lines.append(f"  {v.kind}: {v.detail}")
        ok &= rep.ok
    if args.orthogonal:
        trees = [(d, des) for d, des in decomps if isinstance(d, TreeDecomposition)]
        paths = [d for d, _ in decomps if isinstance(d, PathDecomposition)]
        if fam is None or len(trees) != 1 or len(paths) != 1 or trees[0][1] is None:
            raise InputError("--orthogonal needs a graph with a family, one tree file with 'designated', and one path file")
        pair = OrthogonalPair(trees[0][0], paths[0], trees[0][1])
        thm = verify_theorem2(g, fam, pair, threads=args.threads)
        res["properties"] = thm.to_dict()
        lines.append("orthogonality properties: " + _mark(thm.ok))
        ok &= thm.ok
    return Outcome("ok" if ok else "violation", res, lines)


def cmd_kwidth(args, manifest: RunManifest) -> Outcome:
    ds = [_load_decomp(p, manifest)[0] for p in args.decomp]
    if args.at_most is not None:
        within = k_width_at_most(ds, args.at_most, threads=args.threads)
        res = {"k": len(ds), "at_most": args.at_most, "within": within}
        return Outcome("ok" if within else "violation", res,
                       [f"{len(ds)}-width ≤ {args.at_most}: " + _mark(within)])
    value = k_width_naive(ds) if args.naive else k_width(ds, threads=args.threads)
    return Outcome("ok", {"k": len(ds), "k_width": value}, [f"{len(ds)}-width = {value}"])


def cmd_color(args, manifest: RunManifest) -> Outcome:
    if args.graph:
        g, _ = _load_graph(args.graph, manifest)
    else:
        g, _, _ = build_burling(args.k, args.max_level)
    dec = has_q_coloring(g, args.q, budget=args.budget, time_limit=args.time_limit)
    res: dict[str, Any] = {"q": args.q, "outcome": dec.outcome}
    if dec.stats is not None:
        res["nodes"] = dec.stats.nodes
    if isinstance(dec, Colorable):
        res["colors_used"] = len(set(dec.coloring))
        if args.out:
            _write(args.out, coloring_to_json(dec.coloring), manifest)
        else:
            res["coloring"] = list(dec.coloring)
        return Outcome("ok", res, [f"{args.q}-colorable: yes (uses {res['colors_used']} colors)"])
    if isinstance(dec, BudgetExceeded):
        return Outcome("undetermined", res, [f"{args.q}-colorable: undetermined, budget exhausted after {dec.stats.nodes} nodes"])
    return Outcome("violation", res, [f"{args.q}-colorable: no (exhaustive search)"])


def cmd_witness(args, manifest: RunManifest) -> Outcome:
    g, fam, st = build_burling(args.level, args.max_level)
    if args.coloring:
        manifest.artifact_paths.append(args.coloring)
        colors = coloring_from_json(read_json(args.coloring))
        source = args.coloring
    else:
        colors = random_greedy_coloring(g, random.Random(args.seed))
        source = f"greedy(seed={args.seed})"
    if len(colors) != g.n:
        raise InputError(f"field 'colors' has {len(colors)} entries, G_{args.level} has {g.n} vertices")
    if not is_proper_coloring(g, colors):
        raise InputError("field 'colors' is not a proper coloring of G_%d" % args.level)
    idx = witness_stable_set(st, fam, colors, g)
    members = fam.sets[idx]
    multiset = sorted(colors[v] for v in members)
    distinct = len(set(multiset))
    res = {
        "level": args.level,
        "coloring": source,
        "index": idx,
        "provenance": fam.provenance[idx].to_json(),
        "set": list(members),
        "colors": multiset,
        "distinct_colors": distinct,
    }
    ok = distinct >= args.level
    lines = [
        f"family index {idx} {fam.provenance[idx].to_json()}: {len(members)} vertices",
        f"colors on set: {dict(sorted(Counter(multiset).items()))} ({distinct} distinct)",
        f"at least {args.level} colors: " + _mark(ok),
    ]
    return Outcome("ok" if ok else "violation", res, lines)


def cmd_grid(args, manifest: RunManifest) -> Outcome:
    g = grid_graph(args.rows, args.cols)
    by_cols, by_rows = grid_path_decompositions(args.rows, args.cols)
    if args.out_cols:
        _write(args.out_cols, decomposition_to_json(by_cols), manifest)
    if args.out_rows:
        _write(args.out_rows, decomposition_to_json(by_rows), manifest)
    rc, rr = validate_decomposition(g, by_cols), validate_decomposition(g, by_rows)
    kw = k_width([by_cols, by_rows])
    ok = rc.ok and rr.ok and kw <= 4
    res = {"rows": args.rows, "cols": args.cols, "columns_valid": rc.ok, "rows_valid": rr.ok, "k_width": kw}
    lines = [
        "column-pair path-decomposition valid: " + _mark(rc.ok),
        "row-pair path-decomposition valid: " + _mark(rr.ok),
        f"2-width = {kw}",
    ]
    return Outcome("ok" if ok else "violation", res, lines)


def cmd_bipartite(args, manifest: RunManifest) -> Outcome:
    if args.graph:
        g, _ = _load_graph(args.graph, manifest)
        parts = bipartition(g)
        if parts is None:
            return Outcome("violation", {"bipartite": False}, ["graph is not bipartite"])
        part_a, part_b = parts
    else:
        rng = random.Random(args.seed)
        g, part_a, part_b = random_bipartite_graph(args.random_a, args.random_b, args.density, rng)
    first, second = bipartite_path_decompositions(g, part_a, part_b)
    if args.out_first:
        _write(args.out_first, decomposition_to_json(first), manifest)
    if args.out_second:
        _write(args.out_second, decomposition_to_json(second), manifest)
    r1, r2 = validate_decomposition(g, first), validate_decomposition(g, second)
    kw = k_width([first, second])
    ok = r1.ok and r2.ok and kw <= 2
    res = {"n": g.n, "edges": g.m, "part_a": len(part_a), "part_b": len(part_b),
           "first_valid": r1.ok, "second_valid": r2.ok, "k_width": kw}
    lines = [
        f"graph: n={g.n} e={g.m} parts {len(part_a)}+{len(part_b)}",
        "A+{b} path-decomposition valid: " + _mark(r1.ok),
        "B+{a} path-decomposition valid: " + _mark(r2.ok),
        f"2-width = {kw} (≤ 2: {_mark(kw <= 2)})",
    ]
    return Outcome("ok" if ok else "violation", res, lines)


def cmd_spaghetti(args, manifest: RunManifest) -> Outcome:
    d, _ = _load_decomp(args.decomp, manifest)
    tree = d.as_tree() if isinstance(d, PathDecomposition) else d
    if args.all_roots:
        flags = [is_spaghetti(tree, r) for r in range(len(tree))]
        good = [r for r, f in enumerate(flags) if f]
        res = {"roots": len(flags), "spaghetti_roots": good}
        return Outcome("ok" if good else "violation", res,
                       [f"spaghetti at {len(good)} of {len(flags)} roots: {good[:20]}"])
    root = args.root if args.root is not None else (tree.root if tree.root is not None else 0)
    flag = is_spaghetti(tree, root)
    return Outcome("ok" if flag else "violation", {"root": root, "spaghetti": flag},
                   [f"spaghetti at root {root}: {'yes' if flag else 'no'}"])


def cmd_export(args, manifest: RunManifest) -> Outcome:
    if args.decomp:
        d, _ = _load_decomp(args.decomp, manifest)
        text = decomposition_to_dot(d)
        what = f"{d.kind}-decomposition with {len(d)} nodes"
    else:
        if args.graph:
            g, _ = _load_graph(args.graph, manifest)
        elif args.k is not None:
            g, _, _ = build_burling(args.k, args.max_level)
        else:
            raise InputError("export needs one of --graph, --decomp or -k")
        text = graph_to_dot(g)
        what = f"graph with {g.n} vertices"
    manifest.artifact_paths.append(args.dot)
    Path(args.dot).write_text(text, encoding="utf-8")
    return Outcome("ok", {"dot": args.dot}, [f"wrote DOT for {what} -> {args.dot}"])


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON document instead of text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized procedures")
    common.add_argument("--threads", type=int, default=1, help="worker threads for pair scans")
    common.add_argument("--max-level", type=int, default=DEFAULT_MAX_LEVEL, help="largest buildable level")

    parser = _Parser(prog="burling", description="Burling graphs, their orthogonal decompositions and checkers.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("gen", cmd_gen, "build G_k and write it with its stable family")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out", required=True)

    p = add("stats", cmd_stats, "predicted sizes of G_k and its decompositions")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--check", action="store_true", help="build the objects and compare")

    p = add("decompose", cmd_decompose, "build the tree/path pair for G_k")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--out-tree")
    p.add_argument("--out-path")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--exhaustive", action="store_true", help="list every offending pair instead of stopping early")

    p = add("validate", cmd_validate, "check a graph file, its family and decompositions")
    p.add_argument("--graph", required=True)
    p.add_argument("--decomp", action="append")
    p.add_argument("--orthogonal", action="store_true", help="also check the orthogonality properties")

    p = add("kwidth", cmd_kwidth, "k-width of decomposition files")
    p.add_argument("--decomp", nargs="+", required=True)
    p.add_argument("--at-most", type=int)
    p.add_argument("--naive", action="store_true", help="use the full product loop")

    p = add("color", cmd_color, "decide q-colorability exactly")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph")
    src.add_argument("-k", type=int)
    p.add_argument("-q", type=int, required=True)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--time-limit", type=float)
    p.add_argument("--out", help="write the coloring here when one exists")

    p = add("witness", cmd_witness, "find a family set with many colors under a proper coloring")
    p.add_argument("--level", "-k", type=int, required=True)
    p.add_argument("--coloring", help="coloring file; default is greedy over a seeded random order")

    p = add("grid", cmd_grid, "row/column path-decompositions of a grid")
    p.add_argument("--rows", type=int, required=True)
    p.add_argument("--cols", type=int, required=True)
    p.add_argument("--out-cols")
    p.add_argument("--out-rows")

    p = add("bipartite", cmd_bipartite, "2-width-2 path-decompositions of a bipartite graph")
    p.add_argument("--graph")
    p.add_argument("--random-a", type=int, default=10, help="left part size of a random graph")
    p.add_argument("--random-b", type=int, default=10, help="right part size of a random graph")
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--out-first")
    p.add_argument("--out-second")

    p = add("spaghetti", cmd_spaghetti, "test whether a rooted tree-decomposition is spaghetti")
    p.add_argument("--decomp", required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument("--root", type=int)
    grp.add_argument("--all-roots", action="store_true")

    p = add("export", cmd_export, "write DOT for a graph or decomposition")
    p.add_argument("--graph")
    p.add_argument("--decomp")
    p.add_argument("-k", type=int)
    p.add_argument("--dot", required=True)
    return parser


def _emit(args, manifest: RunManifest, outcome: Outcome | None, error: str | None) -> None:
    if getattr(args, "json", False):
        doc: dict[str, Any] = {
            "command": manifest.command,
            "status": outcome.status if outcome else "error",
            "result": outcome.result if outcome else {},
            "manifest": asdict(manifest),
        }
        if error is not None:
            doc["error"] = error
        sys.stdout.write(dumps(doc))
    elif outcome is not None:
        for line in outcome.lines:
            print(line)
    if error is not None:
        print(f"error: {error}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    flags = {k: v for k, v in vars(args).items() if k not in ("func", "command")}
    manifest = RunManifest(args.command, flags, seed=args.seed)
    if args.threads < 1:
        _emit(args, manifest, None, "--threads must be >= 1")
        return EXIT_USAGE
    try:
        outcome = args.func(args, manifest)
    except (InputError, FormatError) as exc:
        _emit(args, manifest, None, str(exc))
        return EXIT_USAGE
    _emit(args, manifest, outcome, None)
    return _EXIT[outcome.status]


if __name__ == "__main__":
    sys.exit(main())
