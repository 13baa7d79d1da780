import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from burling.construction import build_burling
from burling.graph import (
    Graph,
    InputError,
    complete_graph,
    greedy_coloring,
    is_bipartite,
    is_proper_coloring,
    is_stable_set,
    is_triangle_free,
    two_coloring,
)


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return Graph(n, chosen)


def max_clique_brute(g: Graph) -> int:
    best = min(g.n, 1)
    for size in range(2, g.n + 1):
        if any(all(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
               for c in itertools.combinations(range(g.n), size)):
            best = size
        else:
            break
    return best


def test_graph_rejects_loops_duplicates_and_bad_ids():
    with pytest.raises(InputError):
        Graph(3, [(1, 1)])
    with pytest.raises(InputError):
        Graph(3, [(0, 1), (1, 0)])
    with pytest.raises(InputError):
        Graph(3, [(0, 3)])
    with pytest.raises(InputError):
        Graph(-1)


def test_graph_normalizes_and_orders_edges():
    g = Graph(4, [(3, 1), (0, 2), (1, 0)])
    assert g.edges == ((0, 1), (0, 2), (1, 3))
    assert g.adj == ((1, 2), (0, 3), (0,), (1,))


@given(graphs())
def test_adjacency_is_symmetric(g):
    for v in range(g.n):
        for w in g.adj[v]:
            assert v in g.adj[w]
    assert sum(len(a) for a in g.adj) == 2 * g.m


def test_triangle_free_trivial_cases():
    assert is_triangle_free(Graph(1))
    assert not is_triangle_free(complete_graph(3))
    assert is_triangle_free(Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))


@settings(max_examples=200)
@given(graphs(max_n=10))
def test_triangle_free_iff_clique_number_at_most_two(g):
    assert is_triangle_free(g) == (max_clique_brute(g) <= 2)


def test_g4_triangle_free_by_common_neighbourhoods():
    g, _, _ = build_burling(4)
    nbrs = [set(a) for a in g.adj]
    common = sum(len(nbrs[u] & nbrs[v]) for u, v in g.edges)
    assert common == 0
    assert is_triangle_free(g)


def test_stable_set_basics():
    g = Graph(3, [(0, 1)])
    assert is_stable_set(g, [2])
    assert not is_stable_set(g, [0, 1])
    assert is_stable_set(g, [0, 2])
    with pytest.raises(InputError):
        is_stable_set(g, [5])


def test_g3_family_sets_are_stable():
    g, fam, _ = build_burling(3)
    assert len(fam) == 8
    for s in fam.sets:
        assert is_stable_set(g, s)
        assert not any(g.has_edge(u, v) for u, v in itertools.combinations(s, 2))


@given(graphs(max_n=10), st.randoms(use_true_random=False))
def test_stable_sets_are_closed_under_subsets(g, rnd):
    members = [v for v in range(g.n) if rnd.random() < 0.5]
    if is_stable_set(g, members):
        sub = [v for v in members if rnd.random() < 0.5]
        assert is_stable_set(g, sub)


def test_proper_coloring_basics():
    assert is_proper_coloring(Graph(1), [7])
    assert not is_proper_coloring(Graph(2, [(0, 1)]), [0, 0])
    with pytest.raises(InputError):
        is_proper_coloring(Graph(2, [(0, 1)]), [0])
    with pytest.raises(InputError):
        is_proper_coloring(Graph(2, [(0, 1)]), [0, None])


def test_greedy_small_cases():
    assert greedy_coloring(Graph(5), [4, 2, 0, 1, 3]) == (0,) * 5
    for q in range(1, 7):
        assert len(set(greedy_coloring(complete_graph(q)))) == q
    with pytest.raises(InputError):
        greedy_coloring(Graph(3), [0, 0, 1])


def test_greedy_on_g3_respects_bounds():
    g, _, _ = build_burling(3)
    colors = greedy_coloring(g)
    assert is_proper_coloring(g, colors)
    assert 3 <= len(set(colors)) <= g.max_degree() + 1


@given(graphs(), st.randoms(use_true_random=False))
def test_greedy_is_always_proper(g, rnd):
    order = list(range(g.n))
    rnd.shuffle(order)
    assert is_proper_coloring(g, greedy_coloring(g, order))


@given(graphs(max_n=9))
def test_two_coloring_matches_odd_cycle_search(g):
    # a graph is bipartite iff some assignment in {0,1}^n is proper
    brute = any(all(c[u] != c[v] for u, v in g.edges) for c in itertools.product((0, 1), repeat=g.n))
    assert is_bipartite(g) == (brute or g.n == 0)
    two = two_coloring(g)
    if two is not None:
        assert is_proper_coloring(g, two)


def test_predicates_are_safe_across_threads():
    from concurrent.futures import ThreadPoolExecutor

    g, _, _ = build_burling(4)
    rng = random.Random(3)
    orders = []
    for _ in range(8):
        o = list(range(g.n))
        rng.shuffle(o)
        orders.append(o)
    with ThreadPoolExecutor(4) as pool:
        results = list(pool.map(lambda o: is_proper_coloring(g, greedy_coloring(g, o)), orders))
    assert all(results)
