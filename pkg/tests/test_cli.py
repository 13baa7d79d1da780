import json
import subprocess
import sys
from importlib import resources

import jsonschema
import pytest

from burling.cli import main
from burling.formats import coloring_to_json, write_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    doc = json.loads(out)
    schema = json.loads(resources.files("burling").joinpath("schemas/output.schema.json").read_text())
    jsonschema.validate(doc, schema)
    return code, doc


def test_stats_k4(capsys):
    code, out, _ = run(capsys, "stats", "-k", "4")
    assert code == 0
    assert out.startswith("n=181 e=323 s=128 tree_nodes=308 path_nodes=54")


def test_stats_check_builds_and_compares(capsys):
    code, doc = run_json(capsys, "stats", "-k", "3", "--check")
    assert code == 0 and doc["result"]["mismatched"] == []


def test_gen_then_validate(tmp_path, capsys):
    f = tmp_path / "g2.json"
    assert run(capsys, "gen", "-k", "2", "--out", str(f))[0] == 0
    code, out, _ = run(capsys, "validate", "--graph", str(f))
    assert code == 0
    assert "stable family (2 sets): confirmed" in out


def test_decompose_verify(capsys):
    code, out, _ = run(capsys, "decompose", "-k", "3", "--verify")
    assert code == 0
    assert "2-width ≤ 2: confirmed" in out


def test_gen_and_decompose_are_byte_identical(tmp_path, capsys):
    for tag in ("a", "b"):
        assert run(capsys, "gen", "-k", "4", "--out", str(tmp_path / f"g{tag}.json"))[0] == 0
        assert run(capsys, "decompose", "-k", "4", "--out-tree", str(tmp_path / f"t{tag}.json"),
                   "--out-path", str(tmp_path / f"p{tag}.json"))[0] == 0
    for stem in ("g", "t", "p"):
        assert (tmp_path / f"{stem}a.json").read_bytes() == (tmp_path / f"{stem}b.json").read_bytes()


def test_threads_do_not_change_output(capsys, tmp_path):
    _, one = run_json(capsys, "decompose", "-k", "4", "--verify", "--threads", "1")
    _, three = run_json(capsys, "decompose", "-k", "4", "--verify", "--threads", "3")
    assert one["result"] == three["result"]
    run(capsys, "decompose", "-k", "3", "--out-tree", str(tmp_path / "t.json"), "--out-path", str(tmp_path / "p.json"))
    files = [str(tmp_path / "t.json"), str(tmp_path / "p.json")]
    _, k1 = run_json(capsys, "kwidth", "--decomp", *files)
    _, k2 = run_json(capsys, "kwidth", "--decomp", *files, "--threads", "2")
    assert k1["result"] == k2["result"] == {"k": 2, "k_width": 2}


def test_validate_full_pair_from_files(tmp_path, capsys):
    g, t, p = (str(tmp_path / x) for x in ("g.json", "t.json", "p.json"))
    run(capsys, "gen", "-k", "3", "--out", g)
    run(capsys, "decompose", "-k", "3", "--out-tree", t, "--out-path", p)
    code, doc = run_json(capsys, "validate", "--graph", g, "--decomp", t, "--decomp", p, "--orthogonal")
    assert code == 0 and doc["status"] == "ok"
    assert doc["result"]["properties"]["ok"]
    assert doc["manifest"]["artifact_paths"] == [g, t, p]


def test_validate_reports_violation_with_exit_1(tmp_path, capsys):
    g, d = tmp_path / "g.json", tmp_path / "d.json"
    write_json(g, {"format_version": "1.0", "n": 3, "edges": [[0, 1], [1, 2]]})
    write_json(d, {"format_version": "1.0", "kind": "path", "bags": [[0], [1, 2], [0, 1]], "root": 0})
    code, doc = run_json(capsys, "validate", "--graph", str(g), "--decomp", str(d))
    assert code == 1 and doc["status"] == "violation"
    kinds = {v["kind"] for v in doc["result"]["decompositions"][0]["violations"]}
    assert kinds == {"non_contiguous_occurrence"}


def test_kwidth_at_most(tmp_path, capsys):
    t, p = str(tmp_path / "t.json"), str(tmp_path / "p.json")
    run(capsys, "decompose", "-k", "4", "--out-tree", t, "--out-path", p)
    assert run(capsys, "kwidth", "--decomp", t, p, "--at-most", "2")[0] == 0
    assert run(capsys, "kwidth", "--decomp", t, p, "--at-most", "1")[0] == 1
    code, out, _ = run(capsys, "kwidth", "--decomp", t, p, "--naive")
    assert code == 0 and "2-width = 2" in out


def test_color_outcomes(tmp_path, capsys):
    g = str(tmp_path / "g.json")
    run(capsys, "gen", "-k", "4", "--out", g)
    code, doc = run_json(capsys, "color", "--graph", g, "-q", "3")
    assert code == 1 and doc["result"]["outcome"] == "not_colorable"
    out = str(tmp_path / "c.json")
    code, doc = run_json(capsys, "color", "--graph", g, "-q", "4", "--out", out)
    assert code == 0 and doc["result"]["colors_used"] == 4
    code, doc = run_json(capsys, "color", "-k", "4", "-q", "3", "--budget", "3")
    assert code == 3 and doc["status"] == "undetermined"
    code, doc = run_json(capsys, "witness", "--level", "4", "--coloring", out)
    assert code == 0 and doc["result"]["distinct_colors"] >= 4


def test_witness_seeded_is_reproducible(capsys):
    _, a = run_json(capsys, "witness", "--level", "4", "--seed", "11")
    _, b = run_json(capsys, "witness", "--level", "4", "--seed", "11")
    assert a == b
    assert a["manifest"]["seed"] == 11
    assert a["result"]["distinct_colors"] >= 4


def test_witness_rejects_improper_coloring(tmp_path, capsys):
    f = tmp_path / "c.json"
    write_json(f, coloring_to_json((0,) * 13))
    code, _, err = run(capsys, "witness", "--level", "3", "--coloring", str(f))
    assert code == 2 and "'colors'" in err


def test_grid_and_bipartite(tmp_path, capsys):
    code, doc = run_json(capsys, "grid", "--rows", "3", "--cols", "3")
    assert code == 0 and doc["result"]["k_width"] == 4
    _, a = run_json(capsys, "bipartite", "--random-a", "8", "--random-b", "9", "--seed", "5")
    _, b = run_json(capsys, "bipartite", "--random-a", "8", "--random-b", "9", "--seed", "5")
    assert a["result"] == b["result"] and a["result"]["k_width"] <= 2
    odd = tmp_path / "c5.json"
    write_json(odd, {"format_version": "1.0", "n": 3, "edges": [[0, 1], [0, 2], [1, 2]]})
    assert run(capsys, "bipartite", "--graph", str(odd))[0] == 1


def test_spaghetti_and_export(tmp_path, capsys):
    t, p = str(tmp_path / "t.json"), str(tmp_path / "p.json")
    run(capsys, "decompose", "-k", "3", "--out-tree", t, "--out-path", p)
    assert run(capsys, "spaghetti", "--decomp", p, "--root", "0")[0] == 0
    code, doc = run_json(capsys, "spaghetti", "--decomp", t, "--all-roots")
    assert code == 1 and doc["result"]["spaghetti_roots"] == []
    dot = tmp_path / "g.dot"
    assert run(capsys, "export", "-k", "3", "--dot", str(dot))[0] == 0
    assert dot.read_text().count(" -- ") == 11
    assert run(capsys, "export", "--decomp", t, "--dot", str(dot))[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "-k", "2"],
        ["gen", "-k", "2", "--out", "x.json", "--bogus"],
        ["nonsense"],
        ["stats", "-k", "two"],
        ["gen", "-k", "0", "--out", "x.json"],
        ["gen", "-k", "6", "--out", "x.json"],
        ["decompose", "-k", "2", "--threads", "0"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(capsys, *argv)[0] == 2


def test_malformed_file_names_field(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"format_version": "1.0", "n": 3, "edges": [[0, 9]]}')
    code, _, err = run(capsys, "validate", "--graph", str(f))
    assert code == 2 and "'edges'" in err
    f.write_text('{"format_version": "3.0", "n": 3, "edges": []}')
    code, doc = run_json(capsys, "validate", "--graph", str(f))
    assert code == 2 and "format_version" in doc["error"]
    code, _, err = run(capsys, "validate", "--graph", str(tmp_path / "missing.json"))
    assert code == 2


def test_console_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "burling", "stats", "-k", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("n=3 e=1 s=2 tree_nodes=4 path_nodes=2")
