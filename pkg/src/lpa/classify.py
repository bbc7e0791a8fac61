"""Vertex and cycle classification: line points, no-exit/extreme cycles,
the ~ relation, the X_f decomposition, ideal structure, and primeness."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graphs import (
    INFINITE,
    Cycle,
    Graph,
    count_paths_into,
    cycle_exits,
    cycle_vertices,
    simple_cycles,
    tree,
    tree_of_set,
)
from .hereditary import (
    EntryPathSet,
    HereditarySet,
    entry_paths,
    hereditary_closure,
    is_dense_ideal,
    restriction_graph,
    saturated_closure,
)


@dataclass(frozen=True)
class CycleInfo:
    cycle: Cycle
    has_exits: bool
    is_extreme: bool
    in_S: bool
    entry_count: object  # int | INFINITE: paths into c^0 edge-disjoint from c
    wrap_count: object  # int | INFINITE: paths into c^0 missing some edge of c


@dataclass(frozen=True)
class ExtremeClass:
    class_id: str  # least base vertex among member cycles
    cycles: tuple[Cycle, ...]
    vertices: frozenset[str]  # the hereditary set T(c^0)


@dataclass(frozen=True)
class XClass:
    members: frozenset[str]  # the full ~ class in E^0
    rep: str  # least member in declared order
    closure: frozenset[str]
    entry: EntryPathSet
    is_finite: bool  # in X_f
    class_type: Optional[str]  # line | cycle_laurent | cycle_degenerate | extreme


@dataclass(frozen=True)
class ClassificationReport:
    graph: Graph
    p_l: frozenset[str]
    p_c: frozenset[str]
    p_c_plus: frozenset[str]
    p_c_minus: frozenset[str]
    p_e: frozenset[str]
    p_ec: frozenset[str]
    p_binf: frozenset[str]
    cycles: tuple[CycleInfo, ...]
    x_ec: tuple[ExtremeClass, ...]
    sim_classes: tuple[frozenset[str], ...]
    x_classes: tuple[XClass, ...]  # classes meeting P
    h_f: frozenset[str]
    h_inf: frozenset[str]

    @property
    def p(self) -> frozenset[str]:
        return self.p_l | self.p_c | self.p_ec

    @property
    def x_f(self) -> tuple[XClass, ...]:
        return tuple(c for c in self.x_classes if c.is_finite)

    @property
    def x_inf(self) -> tuple[XClass, ...]:
        return tuple(c for c in self.x_classes if not c.is_finite)


def line_points(g: Graph) -> frozenset[str]:
    """Vertices whose tree has no bifurcations and no cycle vertices."""
    cyc = cycle_vertices(g)
    out = set()
    for v in g.vertices:
        t = tree(g, v)
        if not (t & cyc) and not any(g.is_bifurcation(w) for w in t):
            out.add(v)
    return frozenset(out)


def _wrap_count(g: Graph, c: Cycle):
    """Paths ending at c^0 that miss at least one edge of c.

    Inclusion-exclusion over the avoided edge subsets; cycle length is
    bounded by the vertex count, so the subset lattice stays small.
    """
    edges = sorted(c.edge_set)
    for e in edges:
        if count_paths_into(g, c.vertex_set, {e}) is INFINITE:
            return INFINITE
    total = 0
    for r in range(1, len(edges) + 1):
        sign = 1 if r % 2 == 1 else -1
        for subset in combinations(edges, r):
            total += sign * count_paths_into(g, c.vertex_set, subset)
    return total


def classify_cycles(g: Graph) -> list[CycleInfo]:
    infos = []
    for c in simple_cycles(g):
        exits = cycle_exits(g, c)
        has_exits = bool(exits)
        reachable = tree_of_set(g, c.vertex_set)
        is_extreme = has_exits and all(
            tree(g, w) & c.vertex_set for w in reachable
        )
        entry_count = count_paths_into(g, c.vertex_set, c.edge_set)
        wrap_count = _wrap_count(g, c)
        in_s = (not has_exits) and wrap_count is not INFINITE
        infos.append(
            CycleInfo(
                cycle=c,
                has_exits=has_exits,
                is_extreme=is_extreme,
                in_S=in_s,
                entry_count=entry_count,
                wrap_count=wrap_count,
            )
        )
    return infos


def extreme_classes(g: Graph, infos=None) -> list[ExtremeClass]:
    """Partition extreme cycles by connectivity; carries c~^0 = T(c^0)."""
    if infos is None:
        infos = classify_cycles(g)
    ext = [ci.cycle for ci in infos if ci.is_extreme]
    parent = list(range(len(ext)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    trees = [tree_of_set(g, c.vertex_set) for c in ext]
    for i, c in enumerate(ext):
        for j, d in enumerate(ext):
            if i < j and (trees[i] & d.vertex_set or trees[j] & c.vertex_set):
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(ext)):
        groups.setdefault(find(i), []).append(i)
    out = []
    for idxs in groups.values():
        cycles = tuple(sorted((ext[i] for i in idxs), key=lambda c: (len(c), c.base, c.edges)))
        vertices = frozenset().union(*(trees[i] for i in idxs)) if idxs else frozenset()
        out.append(
            ExtremeClass(
                class_id=min(c.base for c in cycles),
                cycles=cycles,
                vertices=vertices,
            )
        )
    out.sort(key=lambda xc: xc.class_id)
    return out


def p_binf(g: Graph) -> frozenset[str]:
    """Vertices whose tree meets infinitely many distinct bifurcations.

    Empty on every finite graph; kept so reports carry the field."""
    return frozenset()


def sim_classes(g: Graph) -> list[frozenset[str]]:
    """Equivalence classes of ~ (transitive closure of ~1) on all vertices."""
    verts = list(g.vertices)
    index = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(index[a]), find(index[b])
        if ra != rb:
            parent[ra] = rb

    trees = {v: tree(g, v) for v in verts}
    bifs = {v for v in verts if g.is_bifurcation(v)}
    cyc = cycle_vertices(g)

    # rule (ii): a cycle vertex relates everything it reaches
    for w in cyc:
        for u in trees[w]:
            union(w, u)
    # rule (i): comparable vertices with bifurcation-free trees
    for u in verts:
        for v in verts:
            if u < v and (v in trees[u] or u in trees[v]):
                if not ((trees[u] | trees[v]) & bifs):
                    union(u, v)

    groups: dict[int, list[str]] = {}
    for v in verts:
        groups.setdefault(find(index[v]), []).append(v)
    classes = [frozenset(vs) for vs in groups.values()]
    classes.sort(key=lambda c: min(g.vertex_order(v) for v in c))
    return classes


def x_decomposition(g: Graph) -> ClassificationReport:
    infos = classify_cycles(g)
    pl = line_points(g)
    pc = frozenset().union(
        *(ci.cycle.vertex_set for ci in infos if not ci.has_exits)
    ) if any(not ci.has_exits for ci in infos) else frozenset()
    pc_plus = frozenset().union(
        *(
            ci.cycle.vertex_set
            for ci in infos
            if not ci.has_exits and ci.wrap_count is INFINITE
        )
    ) if any(not ci.has_exits and ci.wrap_count is INFINITE for ci in infos) else frozenset()
    pe = frozenset().union(
        *(ci.cycle.vertex_set for ci in infos if ci.has_exits)
    ) if any(ci.has_exits for ci in infos) else frozenset()
    pec = frozenset().union(
        *(ci.cycle.vertex_set for ci in infos if ci.is_extreme)
    ) if any(ci.is_extreme for ci in infos) else frozenset()
    p = pl | pc | pec
    classes = sim_classes(g)
    s_cycles = [ci.cycle for ci in infos if ci.in_S]

    x_classes = []
    for cls in classes:
        if not (cls & p):
            continue
        closure = saturated_closure(g, hereditary_closure(g, cls))
        eps = entry_paths(g, closure)
        is_finite = not eps.is_infinite
        inter = cls & p
        if inter <= pl:
            ctype = "line"
        elif inter <= pec:
            ctype = "extreme"
        elif any(c.vertex_set <= cls for c in s_cycles):
            ctype = "cycle_laurent"
        else:
            ctype = "cycle_degenerate"
        x_classes.append(
            XClass(
                members=cls,
                rep=min(cls, key=g.vertex_order),
                closure=closure.members,
                entry=eps,
                is_finite=is_finite,
                class_type=ctype,
            )
        )

    h_f = frozenset().union(
        *(xc.closure for xc in x_classes if xc.is_finite)
    ) if any(xc.is_finite for xc in x_classes) else frozenset()
    h_inf = frozenset().union(
        *(xc.closure for xc in x_classes if not xc.is_finite)
    ) if any(not xc.is_finite for xc in x_classes) else frozenset()
    h_inf |= p_binf(g)

    return ClassificationReport(
        graph=g,
        p_l=pl,
        p_c=pc,
        p_c_plus=pc_plus,
        p_c_minus=pc - pc_plus,
        p_e=pe,
        p_ec=pec,
        p_binf=p_binf(g),
        cycles=tuple(infos),
        x_ec=tuple(extreme_classes(g, infos)),
        sim_classes=tuple(classes),
        x_classes=tuple(x_classes),
        h_f=h_f,
        h_inf=h_inf,
    )


@dataclass(frozen=True)
class PisCertificate:
    purely_infinite_simple: bool
    failing_condition: Optional[str] = None  # "connects-to-cycle" | "exit" | "lattice"
    witness: Optional[str] = None


def is_purely_infinite_simple(g: Graph) -> PisCertificate:
    """Graph-side criteria: cycle reach, Condition (L), trivial H-lattice."""
    cyc = cycle_vertices(g)
    for v in g.vertices:
        if not (tree(g, v) & cyc):
            return PisCertificate(False, "connects-to-cycle", v)
    for c in simple_cycles(g):
        if not cycle_exits(g, c):
            return PisCertificate(False, "exit", c.base)
    everything = frozenset(g.vertices)
    for v in g.vertices:
        closure = saturated_closure(g, hereditary_closure(g, {v}))
        if closure.members != everything:
            return PisCertificate(False, "lattice", v)
    return PisCertificate(True)


@dataclass(frozen=True)
class SinkSummand:
    sink: str
    matrix_size: object  # int | INFINITE


@dataclass(frozen=True)
class CycleSummand:
    cycle: Cycle
    matrix_size: object  # entry count, int | INFINITE


@dataclass(frozen=True)
class ExtremeSummand:
    extreme_class: ExtremeClass
    certificate: Optional[PisCertificate]  # None when entry paths are infinite
    note: Optional[str] = None


@dataclass(frozen=True)
class IdealStructureReport:
    graph: Graph
    sinks: tuple[SinkSummand, ...]
    no_exit_cycles: tuple[CycleSummand, ...]
    extreme: tuple[ExtremeSummand, ...]
    dense: bool


def ideal_structure(g: Graph, report: Optional[ClassificationReport] = None) -> IdealStructureReport:
    if report is None:
        report = x_decomposition(g)
    sinks = tuple(
        SinkSummand(v, count_paths_into(g, {v})) for v in g.sinks()
    )
    no_exit = tuple(
        CycleSummand(ci.cycle, ci.entry_count)
        for ci in report.cycles
        if not ci.has_exits
    )
    extreme = []
    for xc in report.x_ec:
        h = HereditarySet(g, xc.vertices)
        eps = entry_paths(g, h)
        if eps.is_infinite:
            extreme.append(
                ExtremeSummand(xc, None, "entry paths infinite; certificate skipped")
            )
        else:
            sub = restriction_graph(g, h)
            extreme.append(ExtremeSummand(xc, is_purely_infinite_simple(sub)))
    dense = is_dense_ideal(g, HereditarySet(g, report.p)) if report.p else False
    return IdealStructureReport(
        graph=g,
        sinks=sinks,
        no_exit_cycles=no_exit,
        extreme=tuple(extreme),
        dense=dense,
    )


@dataclass(frozen=True)
class PrimeTrichotomy:
    kind: str  # "sink-case" | "no-exit-cycle-case" | "extreme-case" | "not-prime"
    witness: object = None
    matrix_size: object = None  # for the sink / no-exit cycle cases
    note: str = "primeness tested as downward directedness (invented criterion)"


def prime_trichotomy(g: Graph, report: Optional[ClassificationReport] = None) -> PrimeTrichotomy:
    trees = {v: tree(g, v) for v in g.vertices}
    for u in g.vertices:
        for v in g.vertices:
            if not (trees[u] & trees[v]):
                return PrimeTrichotomy(kind="not-prime", witness=(u, v))
    if report is None:
        report = x_decomposition(g)
    sinks = g.sinks()
    if sinks:
        assert len(sinks) == 1, "downward-directed graph with two sinks"
        s = sinks[0]
        return PrimeTrichotomy(
            kind="sink-case", witness=s, matrix_size=count_paths_into(g, {s})
        )
    no_exit = [ci for ci in report.cycles if not ci.has_exits]
    if no_exit:
        assert len(no_exit) == 1, "downward-directed graph with two no-exit cycles"
        ci = no_exit[0]
        return PrimeTrichotomy(
            kind="no-exit-cycle-case", witness=ci.cycle, matrix_size=ci.wrap_count
        )
    if report.x_ec:
        assert len(report.x_ec) == 1, "downward-directed graph with two extreme classes"
        return PrimeTrichotomy(kind="extreme-case", witness=report.x_ec[0])
    raise RuntimeError("prime finite graph with empty P; internal invariant breach")
