import json
from importlib import resources

import jsonschema
import pytest

from burling.construction import build_burling
from burling.decomp import PathDecomposition, TreeDecomposition
from burling.formats import (
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
    graph_to_json,
)
from burling.graph import Graph
from burling.ortho import build_orthogonal


def schema(name):
    return json.loads(resources.files("burling").joinpath(f"schemas/{name}.schema.json").read_text())


def test_graph_round_trip_is_byte_identical():
    g, fam, st = build_burling(4)
    text = dumps(burling_to_json(g, fam, st))
    doc = json.loads(text)
    g2 = graph_from_json(doc)
    fam2 = family_from_json(doc)
    assert g2 == g and g2.adj == g.adj
    assert fam2 == fam
    assert dumps(burling_to_json(g2, fam2, st)) == text


def test_graph_format_shape():
    doc = graph_to_json(Graph(3, [(2, 1), (0, 2)]))
    assert doc == {"format_version": "1.0", "n": 3, "edges": [[0, 2], [1, 2]]}
    jsonschema.validate(doc, schema("graph"))


@pytest.mark.parametrize("k", [1, 2, 3])
def test_burling_export_matches_schema(k):
    doc = json.loads(dumps(burling_to_json(*build_burling(k))))
    jsonschema.validate(doc, schema("graph"))
    assert doc["structure"]["level"] == k
    assert len(doc["provenance"]) == len(doc["family"])


def test_decomposition_round_trip_and_schema():
    pair = build_orthogonal(3)
    for d, des in ((pair.tree, pair.designated), (pair.path, None)):
        doc = json.loads(dumps(decomposition_to_json(d, des)))
        jsonschema.validate(doc, schema("decomposition"))
        back, des2 = decomposition_from_json(doc)
        assert type(back) is type(d) and back.bags == d.bags
        assert des2 == des
    assert decomposition_from_json(decomposition_to_json(pair.tree))[0].tree_edges == pair.tree.tree_edges


def test_coloring_round_trip():
    doc = coloring_to_json((0, 1, 0))
    jsonschema.validate(doc, schema("coloring"))
    assert coloring_from_json(doc) == (0, 1, 0)


@pytest.mark.parametrize(
    "doc,field",
    [
        ({"n": 2, "edges": []}, "format_version"),
        ({"format_version": "2.0", "n": 2, "edges": []}, "format_version"),
        ({"format_version": "1.0", "n": "2", "edges": []}, "'n'"),
        ({"format_version": "1.0", "n": 2, "edges": [[0]]}, "'edges'"),
        ({"format_version": "1.0", "n": 2, "edges": [[0, 5]]}, "'edges'"),
        ({"format_version": "1.0", "n": 2, "edges": [[0, 1], [1, 0]]}, "'edges'"),
    ],
)
def test_graph_reader_names_offending_field(doc, field):
    with pytest.raises(FormatError, match=field):
        graph_from_json(doc)


def test_minor_versions_are_accepted():
    assert graph_from_json({"format_version": "1.7", "n": 1, "edges": []}).n == 1


@pytest.mark.parametrize(
    "doc,field",
    [
        ({"format_version": "1.0", "kind": "cycle", "bags": [], "root": None}, "'kind'"),
        ({"format_version": "1.0", "kind": "tree", "bags": [[0]], "root": None}, "'tree_edges'"),
        ({"format_version": "1.0", "kind": "path", "bags": [[0]], "tree_edges": [], "root": 0}, "'tree_edges'"),
        ({"format_version": "1.0", "kind": "path", "bags": [0], "root": 0}, "'bags'"),
        ({"format_version": "1.0", "kind": "path", "bags": [[0]], "root": "a"}, "'root'"),
    ],
)
def test_decomposition_reader_names_offending_field(doc, field):
    with pytest.raises(FormatError, match=field):
        decomposition_from_json(doc)


def test_dot_export():
    text = graph_to_dot(Graph(3, [(1, 2)]))
    assert text.startswith("graph G {") and "  1 -- 2;" in text
    text = decomposition_to_dot(PathDecomposition(((0,), (1, 2))))
    assert '1 [label="1: {1,2}"]' in text and "0 -- 1;" in text
    text = decomposition_to_dot(TreeDecomposition(((0,), (0, 1)), ((0, 1),)))
    assert "0 -- 1;" in text
