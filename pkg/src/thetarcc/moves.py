"""Diagram surgery: sub-knots by edge deletion, and Reidemeister I/II moves."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Optional

from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    Vertex,
    graph_components,
    trace_edges,
    validate,
)


class NotApplicable(DiagramError):
    """A move cannot be applied at the requested site."""


class _UnionFind:
    def __init__(self, items: Iterable):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _fresh(prefix: str, used: set[str]) -> str:
    k = 1
    while f"{prefix}{k}" in used:
        k += 1
    used.add(f"{prefix}{k}")
    return f"{prefix}{k}"


def _remove_sites(
    D: Diagram,
    joins: dict[str, list[tuple[int, int]]],
    deleted_arcs: frozenset[str] = frozenset(),
    allow_free_loops: bool = False,
) -> Diagram:
    """Delete the sites in ``joins`` and splice strands through them.

    ``joins[label]`` lists slot pairs whose arcs become one arc once the site
    is gone.  Arcs in ``deleted_arcs`` vanish.  Merged arcs keep the label of
    their earliest member.  Corners on deleted sites drop out of ``outer``
    and ``pins``; a dropped ``outer`` is moved to a surviving corner of the
    same region when there is one.
    """
    arcs = D.arcs
    uf = _UnionFind(arcs)
    for label, pairs in joins.items():
        site = D.site(label)
        for i, j in pairs:
            a, b = site.arcs[i], site.arcs[j]
            if a in deleted_arcs or b in deleted_arcs:
                raise DiagramError(f"cannot splice deleted arc at {label}")
            uf.union(a, b)
    order = {a: i for i, a in enumerate(arcs)}
    rep = {}
    for a in arcs:
        r = uf.find(a)
        if r not in rep or order[a] < order[rep[r]]:
            rep[r] = a
    name = {a: rep[uf.find(a)] for a in arcs}

    crossings = tuple(replace(c, arcs=tuple(name[a] for a in c.arcs))
                      for c in D.crossings if c.label not in joins)
    vertices = tuple(replace(v, arcs=tuple(name[a] for a in v.arcs))
                     for v in D.vertices if v.label not in joins)
    surviving = {name[a] for s in crossings + vertices for a in s.arcs}
    classes = {name[a] for a in arcs if a not in deleted_arcs}
    loops = len(classes - surviving)
    if loops and not allow_free_loops:
        raise NotApplicable("move would leave a crossingless closed curve")
    if loops and (crossings or vertices):
        raise NotApplicable("move would split off a crossingless closed curve")

    outer = D.outer
    if outer is not None and outer[0] in joins:
        outer = None
        if crossings or vertices:
            target = D.region(D.outer_region())
            outer = next((c for c in target.corners if c[0] not in joins), None)
    # regions may merge, so pinned labels are not carried over
    return Diagram(crossings, vertices, outer, (), loops, name=D.name)


STRANDS = ((0, 2), (1, 3))


@dataclass(frozen=True)
class SubKnot:
    knot: Diagram
    region_map: dict[str, str]
    edge: str


def delete_edge(D: Diagram, edge: str) -> SubKnot:
    """Remove edge ``edge`` of a theta-curve diagram, leaving a knot diagram.

    Crossings on the edge vanish (the other strand is spliced), both vertices
    are smoothed, and each region of ``D`` is sent to the region of the
    sub-knot containing it.
    """
    comps = graph_components(D)
    if len(comps) != 1 or comps[0].kind != "theta":
        raise DiagramError("delete_edge needs a single theta-curve component")
    trace = next((t for t in trace_edges(D) if t.label == edge), None)
    if trace is None:
        raise DiagramError(f"{edge!r} is not an edge of the theta component")
    gone = frozenset(trace.arcs)

    joins: dict[str, list[tuple[int, int]]] = {}
    for c in D.crossings:
        on_edge = [(i, j) for i, j in STRANDS if c.arcs[i] in gone]
        if on_edge:
            joins[c.label] = [(i, j) for i, j in STRANDS if (i, j) not in on_edge]
    for v in D.vertices:
        keep = [k for k in range(3) if v.arcs[k] not in gone]
        if len(keep) != 2:
            raise DiagramError(f"edge {edge} meets vertex {v.label} unexpectedly")
        joins[v.label] = [tuple(keep)]
    k = _remove_sites(D, joins, gone, allow_free_loops=True)
    k = replace(k, pins=(), name=f"{D.name}-{edge}" if D.name else "")

    # faces of D merge exactly across the removed arcs
    uf = _UnionFind(D.region_labels())
    for arc in gone:
        uf.union(*D.arc_sides(arc))
    cls_to_k: dict[str, str] = {}
    if k.crossings:
        for c in k.crossings:
            for corner in range(4):
                cls = uf.find(D.region_of_corner((c.label, corner)))
                kr = k.region_of_corner((c.label, corner))
                if cls_to_k.setdefault(cls, kr) != kr:
                    raise DiagramError("inconsistent region correspondence")
    else:
        classes = list(dict.fromkeys(uf.find(r) for r in D.region_labels()))
        if len(classes) != 2:
            raise DiagramError(f"crossingless sub-knot should have 2 regions, got {len(classes)}")
        cls_to_k = dict(zip(classes, k.region_labels()))
    region_map = {r: cls_to_k[uf.find(r)] for r in D.region_labels()}
    if set(region_map.values()) != set(k.region_labels()):
        raise DiagramError("region map is not surjective")
    if k.crossings and D.outer is not None:
        target = region_map[D.outer_region()]
        corner = next(c for c in k.region(target).corners)
        k = replace(k, outer=corner)
    return SubKnot(k, region_map, edge)


def _edit(D: Diagram):
    """Mutable copy of the site table: label -> [arcs], plus site kinds."""
    return {s.label: list(s.arcs) for s in D.sites}


def _dart_ends(D: Diagram, arc: str) -> tuple[tuple[str, int], tuple[str, int]]:
    m = D._map
    if arc not in m.arc_ends:
        raise NotApplicable(f"unknown arc {arc!r}")
    d, e = m.arc_ends[arc]
    return (m.sites[m.dart_site[d]].label, m.slot_of(d)), (m.sites[m.dart_site[e]].label, m.slot_of(e))


def _rebuild(D: Diagram, table: dict[str, list[str]], new_crossings: list[Crossing]) -> Diagram:
    crossings = [replace(c, arcs=tuple(table[c.label])) for c in D.crossings] + new_crossings
    vertices = [replace(v, arcs=tuple(table[v.label])) for v in D.vertices]
    return Diagram(tuple(crossings), tuple(vertices), D.outer, D.pins, name=D.name)


def r1_add(D: Diagram, arc: str, side: int = 0, over: tuple[int, int] = (1, 3)) -> Diagram:
    """Put a kink on ``arc``; ``side`` picks which neighbouring region holds the loop."""
    (p, i), (q, j) = _dart_ends(D, arc)
    used = set(D.arcs)
    sites_used = {s.label for s in D.sites}
    c = _fresh("c", sites_used)
    y, loop = _fresh("x", used), _fresh("x", used)
    table = _edit(D)
    table[q][j] = y
    slots = (arc, y, loop, loop) if side == 0 else (arc, loop, loop, y)
    return _rebuild(D, table, [Crossing(c, slots, tuple(over))])


def r1_remove(D: Diagram, crossing: str) -> Diagram:
    c = D.crossing(crossing)
    for k in range(4):
        if c.arcs[k] == c.arcs[(k + 1) % 4]:
            if c.arcs[(k + 2) % 4] == c.arcs[(k + 3) % 4]:
                raise NotApplicable(f"{crossing} is a lone figure-eight curve")
            return _remove_sites(D, {crossing: list(STRANDS)})
    raise NotApplicable(f"{crossing} carries no kink")


def r2_add(D: Diagram, region: str, over_arc: str, under_arc: str) -> Diagram:
    """Push ``over_arc`` across ``under_arc``; both must bound ``region``."""
    if over_arc == under_arc:
        raise NotApplicable("R2 needs two distinct arcs")
    m = D._map
    R = D.region(region)
    orbit = next(o for o in m.faces if D.region_of_corner(m.corner_of(o[0])) == region)
    da = next((d for d in orbit if m.arc_of(d) == over_arc), None)
    db = next((d for d in orbit if m.arc_of(d) == under_arc), None)
    if da is None or db is None:
        raise NotApplicable(f"arcs {over_arc}, {under_arc} do not both bound {R.label}")

    def end(d):
        return m.sites[m.dart_site[d]].label, m.slot_of(d)

    (qa, ja), (qb, jb) = end(m.alpha[da]), end(m.alpha[db])
    used = set(D.arcs)
    sites_used = {s.label for s in D.sites}
    x1, x2 = _fresh("c", sites_used), _fresh("c", sites_used)
    a1, am, a3 = over_arc, _fresh("x", used), _fresh("x", used)
    b1, bm, b3 = under_arc, _fresh("x", used), _fresh("x", used)
    table = _edit(D)
    table[qa][ja] = a3
    table[qb][jb] = b3
    # b1 leaves the traversal start of under_arc, b3 reaches its end
    new = [
        Crossing(x1, (bm, a1, b3, am), (2, 4)),
        Crossing(x2, (b1, a3, bm, am), (2, 4)),
    ]
    return _rebuild(D, table, new)


def r2_remove(D: Diagram, region: str) -> Diagram:
    R = D.region(region)
    if len(R.corners) != 2 or len(R.crossings) != 2:
        raise NotApplicable(f"{region} is not a bigon between two crossings")
    (s1, k1), (s2, k2) = R.corners
    c1, c2 = D.crossing(s1), D.crossing(s2)
    arcs1 = {c1.arcs[k1], c1.arcs[(k1 + 1) % 4]}
    arcs2 = {c2.arcs[k2], c2.arcs[(k2 + 1) % 4]}
    if arcs1 != arcs2 or len(arcs1) != 2:
        raise NotApplicable(f"{region} is not a bigon between two crossings")
    u = next(iter(arcs1))
    over1 = c1.is_over_slot(c1.arcs.index(u))
    over2 = c2.is_over_slot(c2.arcs.index(u))
    if over1 != over2:
        raise NotApplicable(f"bigon {region} is alternating; no R2 move")
    return _remove_sites(D, {s1: list(STRANDS), s2: list(STRANDS)})


MOVES = {
    "R1-add": r1_add,
    "R1-remove": r1_remove,
    "R2-add": r2_add,
    "R2-remove": r2_remove,
}


def apply_reidemeister(D: Diagram, move: str, **site) -> Diagram:
    """Apply an R1/R2 move; ``site`` holds the keyword arguments of the move."""
    if move not in MOVES:
        raise NotApplicable(f"unknown move {move!r}; expected one of {sorted(MOVES)}")
    before = validate(D)
    out = MOVES[move](D, **site)
    after = validate(out, strict=False)
    if after.euler_residual:
        raise NotApplicable(f"{move} at {site} does not give a planar diagram")
    if sorted(before.kinds) != sorted(after.kinds):
        raise NotApplicable(f"{move} changed the component kinds")
    return out
