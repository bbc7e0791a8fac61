import random

from hypothesis import given, settings, strategies as st

from lpa.classify import (
    classify_cycles,
    extreme_classes,
    ideal_structure,
    is_purely_infinite_simple,
    line_points,
    p_binf,
    prime_trichotomy,
    sim_classes,
    x_decomposition,
)
from lpa.fixtures import graph
from lpa.graphs import INFINITE, disjoint_union, tree
from lpa.hereditary import (
    HereditarySet,
    entry_paths,
    hereditary_closure,
    restriction_graph,
    saturated_closure,
)
from lpa.randomgen import random_graph


def random_graphs(max_vertices=5, max_edges=8):
    return st.integers(0, 10**6).map(
        lambda s: random_graph(random.Random(s), max_vertices, max_edges)
    )


# -- line points ---------------------------------------------------------------


def test_line_points_examples():
    assert line_points(graph("g_toeplitz")) == {"v"}
    assert line_points(graph("g_loop")) == frozenset()
    assert line_points(graph("g_line3")) == {"v1", "v2", "v3"}


# -- cycle classification --------------------------------------------------------


def test_classify_cycles_loop():
    (ci,) = classify_cycles(graph("g_loop"))
    assert not ci.has_exits and ci.in_S and ci.entry_count == 1


def test_classify_cycles_cwe():
    infos = {ci.cycle.base: ci for ci in classify_cycles(graph("g_cwe"))}
    h = infos["z"]
    assert not h.has_exits and not h.in_S and h.wrap_count is INFINITE


def test_classify_cycles_ext2():
    infos = {ci.cycle.edges: ci for ci in classify_cycles(graph("g_ext2"))}
    e = infos[("e",)]
    assert e.has_exits and e.is_extreme


def test_cycle_info_invariants_on_fixtures():
    for name in ("g_loop", "g_line3", "g_toeplitz", "g_r2", "g_ext2", "g_cwe"):
        for ci in classify_cycles(graph(name)):
            if ci.is_extreme:
                assert ci.has_exits
            if ci.in_S:
                assert not ci.has_exits and ci.wrap_count is not INFINITE


# -- extreme classes ------------------------------------------------------------


def test_extreme_classes_ext2():
    (xc,) = extreme_classes(graph("g_ext2"))
    assert xc.vertices == {"u", "w"} and len(xc.cycles) == 2


def test_extreme_classes_loop_empty():
    assert extreme_classes(graph("g_loop")) == []


def test_extreme_classes_disjoint_union():
    g = disjoint_union(graph("g_ext2"), graph("g_ext2"))
    assert len(extreme_classes(g)) == 2


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_extreme_class_laws(g):
    classes = extreme_classes(g)
    for xc in classes:
        # connected cycles share their tree; the class set is that tree
        for c in xc.cycles:
            assert tree(g, c.base) == xc.vertices
        # strongly connected: every class vertex returns to every cycle base
        for v in xc.vertices:
            assert any(c.base in tree(g, v) for c in xc.cycles)
    for i, a in enumerate(classes):
        for b in classes[i + 1:]:
            assert not (a.vertices & b.vertices)


# -- bifurcation-at-infinity set --------------------------------------------------


def test_p_binf_empty_on_finite_graphs():
    for name in ("g_cwe", "g_r2", "g_line3"):
        assert p_binf(graph(name)) == frozenset()


# -- similarity classes -----------------------------------------------------------


def test_sim_classes_examples():
    assert sim_classes(graph("g_toeplitz")) == [frozenset({"u", "v"})]
    assert sim_classes(graph("g_line3")) == [frozenset({"v1", "v2", "v3"})]
    assert sim_classes(graph("g_cwe")) == [frozenset({"w", "z"})]


# -- X decomposition ---------------------------------------------------------------


def test_x_decomposition_loop():
    rep = x_decomposition(graph("g_loop"))
    (xc,) = rep.x_f
    assert xc.class_type == "cycle_laurent"


def test_x_decomposition_toeplitz():
    rep = x_decomposition(graph("g_toeplitz"))
    (xc,) = rep.x_f
    assert xc.closure == {"u", "v"}
    assert xc.entry.paths == ()
    assert xc.class_type == "line"


def test_x_decomposition_cwe():
    rep = x_decomposition(graph("g_cwe"))
    (xc,) = rep.x_f
    assert xc.closure == {"w", "z"}
    assert xc.class_type == "cycle_degenerate"


@given(random_graphs())
@settings(max_examples=100, deadline=None)
def test_classification_invariants(g):
    rep = x_decomposition(g)
    # the three P parts are pairwise disjoint
    assert not (rep.p_l & rep.p_c)
    assert not (rep.p_l & rep.p_ec)
    assert not (rep.p_c & rep.p_ec)
    # the plus/minus split partitions P_c
    assert rep.p_c == rep.p_c_plus | rep.p_c_minus
    assert not (rep.p_c_plus & rep.p_c_minus)
    # each ~ class is hereditary as a vertex set... not in general, but each
    # X class's closure is hereditary and saturated
    for xc in rep.x_classes:
        h = HereditarySet(g, xc.closure)
        assert h.is_hereditary and h.is_saturated
    # distinct classes have disjoint saturated closures
    fin = list(rep.x_classes)
    for i, a in enumerate(fin):
        for b in fin[i + 1:]:
            assert not (a.closure & b.closure)
    # cycle_laurent classes contain exactly one no-exit cycle, no sink
    infos = classify_cycles(g)
    for xc in rep.x_f:
        if xc.class_type == "cycle_laurent":
            inside = [
                ci for ci in infos
                if not ci.has_exits and ci.cycle.vertex_set <= xc.closure
            ]
            assert len(inside) == 1 and inside[0].in_S
            assert not any(g.is_sink(v) for v in xc.members)


# -- ideal structure -----------------------------------------------------------


def test_ideal_structure_line3():
    rep = ideal_structure(graph("g_line3"))
    (s,) = rep.sinks
    assert s.sink == "v3" and s.matrix_size == 3
    assert rep.dense


def test_ideal_structure_loop():
    rep = ideal_structure(graph("g_loop"))
    (c,) = rep.no_exit_cycles
    assert c.matrix_size == 1
    assert rep.dense


@given(random_graphs())
@settings(max_examples=80, deadline=None)
def test_density_on_every_finite_graph(g):
    assert ideal_structure(g).dense


# -- purely infinite simple ------------------------------------------------------


def test_pis_examples():
    assert is_purely_infinite_simple(graph("g_ext2")).purely_infinite_simple
    cert = is_purely_infinite_simple(graph("g_loop"))
    assert not cert.purely_infinite_simple and cert.failing_condition == "exit"


def test_pis_restriction_graph_of_extreme_class():
    g = graph("g_ext2")
    (xc,) = extreme_classes(g)
    h = HereditarySet(g, xc.vertices)
    if not entry_paths(g, h).is_infinite:
        sub = restriction_graph(g, h)
        assert is_purely_infinite_simple(sub).purely_infinite_simple


# -- prime trichotomy ------------------------------------------------------------


def test_prime_trichotomy_line3():
    pt = prime_trichotomy(graph("g_line3"))
    assert pt.kind == "sink-case" and pt.witness == "v3" and pt.matrix_size == 3


def test_prime_trichotomy_cwe():
    pt = prime_trichotomy(graph("g_cwe"))
    assert pt.kind == "no-exit-cycle-case"
    assert pt.witness.edges == ("h",)
    assert pt.matrix_size is INFINITE


def test_prime_trichotomy_ext2():
    pt = prime_trichotomy(graph("g_ext2"))
    assert pt.kind == "extreme-case"
    assert {c.edges for c in pt.witness.cycles} == {("e",), ("f", "g")}


def test_prime_trichotomy_not_prime():
    g = disjoint_union(graph("g_loop"), graph("g_loop"))
    assert prime_trichotomy(g).kind == "not-prime"


def _downward_directed(g):
    trees = {v: tree(g, v) for v in g.vertices}
    return all(trees[u] & trees[v] for u in g.vertices for v in g.vertices)


@given(random_graphs())
@settings(max_examples=120, deadline=None)
def test_prime_trichotomy_exclusive_cases(g):
    pt = prime_trichotomy(g)
    if not _downward_directed(g):
        assert pt.kind == "not-prime"
        return
    assert pt.kind in ("sink-case", "no-exit-cycle-case", "extreme-case")
    rep = x_decomposition(g)
    sinks = g.sinks()
    no_exit = [ci for ci in rep.cycles if not ci.has_exits]
    if pt.kind == "sink-case":
        assert sinks == (pt.witness,)
        assert all(pt.witness in tree(g, v) for v in g.vertices)
        assert not no_exit and not rep.x_ec
    elif pt.kind == "no-exit-cycle-case":
        assert not sinks and not rep.x_ec
        assert len(no_exit) == 1
    else:
        assert not sinks and not no_exit
        assert len(rep.x_ec) == 1
