import json

import pytest
from hypothesis import given, settings, strategies as st

from lpa.fixtures import DOCUMENTS, graph
from lpa.graphs import (
    INFINITE,
    Edge,
    Graph,
    GraphError,
    connected_components,
    connects_to,
    count_paths_into,
    cycle_exits,
    disjoint_union,
    enumerate_paths_into,
    make_cycle,
    parse_graph,
    simple_cycles,
    tree,
)
from lpa.randomgen import random_graph

import random


def random_graphs(max_vertices=5, max_edges=8):
    return st.integers(min_value=0, max_value=10**6).map(
        lambda s: random_graph(random.Random(s), max_vertices, max_edges)
    )


# -- parsing -----------------------------------------------------------------


def test_parse_loop():
    g = graph("g_loop")
    assert len(g.vertices) == 1 and len(g.edges) == 1


def test_parse_line3():
    g = graph("g_line3")
    assert len(g.vertices) == 3 and len(g.edges) == 2


def test_parse_dangling_endpoint_names_token():
    doc = {"vertices": ["a"], "edges": [{"id": "e", "src": "a", "dst": "b"}]}
    with pytest.raises(GraphError, match="b"):
        parse_graph(json.dumps(doc))


def test_parse_duplicate_vertex_names_token():
    doc = {"vertices": ["a", "a"], "edges": []}
    with pytest.raises(GraphError, match="a"):
        parse_graph(json.dumps(doc))


def test_parse_duplicate_edge_names_token():
    doc = {
        "vertices": ["a"],
        "edges": [
            {"id": "e", "src": "a", "dst": "a"},
            {"id": "e", "src": "a", "dst": "a"},
        ],
    }
    with pytest.raises(GraphError, match="e"):
        parse_graph(json.dumps(doc))


def test_parse_malformed_document():
    with pytest.raises(GraphError):
        parse_graph("{not json")


def test_parse_empty_vertex_set_rejected():
    with pytest.raises(GraphError):
        parse_graph(json.dumps({"vertices": [], "edges": []}))


def test_declared_order_preserved():
    doc = {"vertices": ["b", "a"], "edges": []}
    assert parse_graph(json.dumps(doc)).vertices == ("b", "a")


# -- reachability ------------------------------------------------------------


def test_tree_sink():
    assert tree(graph("g_line3"), "v3") == {"v3"}


def test_tree_toeplitz():
    assert tree(graph("g_toeplitz"), "u") == {"u", "v"}


def test_tree_ext2():
    assert tree(graph("g_ext2"), "w") == {"u", "w"}


def test_tree_unknown_vertex():
    with pytest.raises(GraphError):
        tree(graph("g_loop"), "nope")


def test_connects_to_examples():
    assert connects_to(graph("g_toeplitz"), "u", {"v"})
    assert connects_to(graph("g_loop"), "v", {"v"})
    assert not connects_to(graph("g_cwe"), "z", {"w"})


@given(random_graphs())
@settings(max_examples=100, deadline=None)
def test_tree_reflexive_and_transitive(g):
    for v in g.vertices:
        t = tree(g, v)
        assert v in t
        for w in t:
            assert tree(g, w) <= t


# -- components --------------------------------------------------------------


def test_components_loop():
    comps = connected_components(graph("g_loop"))
    assert len(comps) == 1 and comps[0] == graph("g_loop")


def test_components_disjoint_union():
    g = disjoint_union(graph("g_loop"), graph("g_line3"))
    sizes = sorted(len(c.vertices) for c in connected_components(g))
    assert sizes == [1, 3]


def test_components_toeplitz():
    assert len(connected_components(graph("g_toeplitz"))) == 1


@given(random_graphs())
@settings(max_examples=100, deadline=None)
def test_components_partition_exactly(g):
    comps = connected_components(g)
    vs = [v for c in comps for v in c.vertices]
    es = [e.id for c in comps for e in c.edges]
    assert sorted(vs) == sorted(g.vertices)
    assert sorted(es) == sorted(e.id for e in g.edges)


# -- cycles ------------------------------------------------------------------


def test_simple_cycles_acyclic():
    assert simple_cycles(graph("g_line3")) == []


def test_simple_cycles_ext2():
    cs = [c.edges for c in simple_cycles(graph("g_ext2"))]
    assert cs == [("e",), ("f", "g")]


def test_simple_cycles_r2():
    cs = [c.edges for c in simple_cycles(graph("g_r2"))]
    assert cs == [("e1",), ("e2",)]


def test_make_cycle_canonical_rotation():
    g = graph("g_ext2")
    c = make_cycle(g, ("g", "f"))
    assert c.edges == ("f", "g") and c.base == "u"


def test_make_cycle_rejects_non_cycle():
    with pytest.raises(GraphError):
        make_cycle(graph("g_line3"), ("e1",))


@given(random_graphs())
@settings(max_examples=60, deadline=None)
def test_simple_cycles_each_once_and_canonical(g):
    cs = simple_cycles(g)
    assert len({c.edges for c in cs}) == len(cs)
    for c in cs:
        for u in c.vertex_set:
            assert make_cycle(g, c.rotation_at(u)).edges == c.edges


def test_cycle_exits_examples():
    g = graph("g_loop")
    assert cycle_exits(g, simple_cycles(g)[0]) == frozenset()
    g = graph("g_toeplitz")
    assert cycle_exits(g, simple_cycles(g)[0]) == {"f"}
    g = graph("g_ext2")
    (ce, _cfg) = simple_cycles(g)
    assert cycle_exits(g, ce) == {"f"}


# -- path counting -----------------------------------------------------------


def test_count_paths_line3():
    assert count_paths_into(graph("g_line3"), {"v3"}) == 3


def test_count_paths_toeplitz_infinite():
    assert count_paths_into(graph("g_toeplitz"), {"v"}) is INFINITE


def test_count_paths_loop_forbidden():
    assert count_paths_into(graph("g_loop"), {"v"}, {"c"}) == 1


def test_count_paths_unknown_id():
    with pytest.raises(GraphError):
        count_paths_into(graph("g_loop"), {"nope"})


@given(random_graphs(max_vertices=4, max_edges=6), st.integers(0, 10**6))
@settings(max_examples=100, deadline=None)
def test_count_paths_matches_enumeration(g, salt):
    rng = random.Random(salt)
    targets = frozenset(v for v in g.vertices if rng.random() < 0.5)
    forbidden = frozenset(e.id for e in g.edges if rng.random() < 0.3)
    n = count_paths_into(g, targets, forbidden)
    if n is not INFINITE:
        assert n == len(enumerate_paths_into(g, targets, forbidden))


def test_graph_requires_known_endpoints():
    with pytest.raises(GraphError):
        Graph(["a"], [Edge("e", "a", "zzz")])
