"""Spatial-graph diagrams as combinatorial maps on the sphere.

A diagram is a set of *sites*: 4-valent crossings and trivalent vertices.
Each site lists the arcs leaving it in counterclockwise order, and every arc
label appears at exactly two slots.  A *dart* ``(site, slot)`` is an arc end
seen from the site it leaves.  Faces are the orbits of

    phi(d) = succ(alpha(d))

where ``alpha`` jumps to the other end of the arc and ``succ`` is the next
slot counterclockwise.  A face that arrives at a site through slot ``k`` and
leaves through slot ``k+1`` occupies *corner* ``k`` of that site, i.e. the
wedge between slots ``k`` and ``k+1``.  Slot and corner indices are 0-based
in Python and 1-based in the text format.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Iterable, Optional

Corner = tuple[str, int]

OVER_PAIRS = ((1, 3), (2, 4))


class DiagramError(ValueError):
    """A diagram is malformed, or an operation's preconditions fail."""


def natural_key(label: str):
    """Sort key that orders ``R2`` before ``R10``."""
    return tuple((0, int(p), "") if p.isdigit() else (1, 0, p) for p in re.split(r"(\d+)", label) if p)


@dataclass(frozen=True)
class Crossing:
    label: str
    arcs: tuple[str, str, str, str]
    over: tuple[int, int] = (1, 3)

    degree = 4

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "over", tuple(self.over))
        if len(self.arcs) != 4:
            raise DiagramError(f"crossing {self.label} needs 4 arcs, got {len(self.arcs)}")
        if self.over not in OVER_PAIRS:
            raise DiagramError(f"crossing {self.label}: over pair must be (1,3) or (2,4)")

    def changed(self) -> Crossing:
        """The same crossing after a crossing change."""
        return replace(self, over=(2, 4) if self.over == (1, 3) else (1, 3))

    def is_over_slot(self, slot: int) -> bool:
        return slot + 1 in self.over


@dataclass(frozen=True)
class Vertex:
    label: str
    arcs: tuple[str, str, str]

    degree = 3

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        if len(self.arcs) != 3:
            raise DiagramError(f"vertex {self.label} needs 3 arcs, got {len(self.arcs)}")


@dataclass(frozen=True)
class Region:
    label: str
    corners: tuple[Corner, ...]
    arcs: frozenset[str]
    crossings: tuple[str, ...]

    def __len__(self):
        return len(self.corners)


@dataclass(frozen=True)
class EdgeTrace:
    """One edge of the underlying graph, as the arcs it runs through."""

    label: str
    arcs: tuple[str, ...]
    start: Optional[str]
    end: Optional[str]

    @property
    def closed(self) -> bool:
        return self.start is None

    @property
    def is_loop(self) -> bool:
        return self.start is not None and self.start == self.end


@dataclass(frozen=True)
class EulerCount:
    v: int
    e: int
    f: int

    @property
    def residual(self) -> int:
        return self.v - self.e + self.f - 2


@dataclass(frozen=True)
class GraphComponent:
    kind: str
    vertices: tuple[str, ...]
    edges: tuple[str, ...]


@dataclass(frozen=True)
class ValidationReport:
    n: int
    f: int
    map_components: tuple[EulerCount, ...]
    components: tuple[GraphComponent, ...]
    reducible: frozenset[str]
    cutting_edges: frozenset[str]

    @property
    def euler_residual(self) -> int:
        return sum(abs(c.residual) for c in self.map_components)

    @property
    def kinds(self) -> tuple[str, ...]:
        return tuple(c.kind for c in self.components)

    @property
    def kind(self) -> str:
        """Single kind for one-component diagrams, else ``mixed``."""
        return self.kinds[0] if len(self.kinds) == 1 else "mixed"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "f": self.f,
            "kind": self.kind,
            "euler_residual": self.euler_residual,
            "map_components": [
                {"v": c.v, "e": c.e, "f": c.f, "residual": c.residual} for c in self.map_components
            ],
            "components": [
                {"kind": c.kind, "vertices": list(c.vertices), "edges": list(c.edges)}
                for c in self.components
            ],
            "reducible": sorted(self.reducible, key=natural_key),
            "cutting_edges": sorted(self.cutting_edges, key=natural_key),
        }


class _Map:
    """Dart-level view of a diagram.  Built once per diagram and cached."""

    def __init__(self, diagram: Diagram):
        self.sites = list(diagram.crossings) + list(diagram.vertices)
        self.index = {s.label: i for i, s in enumerate(self.sites)}
        self.offset = []
        total = 0
        for s in self.sites:
            self.offset.append(total)
            total += s.degree
        self.ndarts = total
        self.dart_site = [i for i, s in enumerate(self.sites) for _ in range(s.degree)]

        ends = defaultdict(list)
        for d in range(total):
            ends[self.arc_of(d)].append(d)
        self.alpha = [0] * total
        for arc, ds in ends.items():
            a, b = ds
            self.alpha[a], self.alpha[b] = b, a
        self.arc_ends = dict(ends)

        self.face_of = [-1] * total
        self.faces: list[list[int]] = []
        for d0 in range(total):
            if self.face_of[d0] >= 0:
                continue
            fid = len(self.faces)
            orbit = []
            d = d0
            while self.face_of[d] < 0:
                self.face_of[d] = fid
                orbit.append(d)
                d = self.phi(d)
            if d != d0:
                raise DiagramError("face traversal does not close")
            self.faces.append(orbit)

        parent = list(range(len(self.sites)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in range(total):
            parent[find(self.dart_site[d])] = find(self.dart_site[self.alpha[d]])
        groups = defaultdict(list)
        for i in range(len(self.sites)):
            groups[find(i)].append(i)
        self.site_components = sorted(groups.values())

    def dart(self, site: int, slot: int) -> int:
        return self.offset[site] + slot

    def slot_of(self, d: int) -> int:
        return d - self.offset[self.dart_site[d]]

    def arc_of(self, d: int) -> str:
        return self.sites[self.dart_site[d]].arcs[self.slot_of(d)]

    def succ(self, d: int) -> int:
        s = self.dart_site[d]
        return self.offset[s] + (self.slot_of(d) + 1) % self.sites[s].degree

    def phi(self, d: int) -> int:
        return self.succ(self.alpha[d])

    def corner_of(self, d: int) -> Corner:
        """Corner passed by the face just before it leaves along dart ``d``."""
        s = self.dart_site[d]
        site = self.sites[s]
        return site.label, (self.slot_of(d) - 1) % site.degree

    def dart_of_corner(self, corner: Corner) -> int:
        label, k = corner
        s = self.index[label]
        return self.offset[s] + (k + 1) % self.sites[s].degree

    def face_of_corner(self, corner: Corner) -> int:
        return self.face_of[self.dart_of_corner(corner)]


@dataclass(frozen=True)
class Diagram:
    """An immutable diagram of a knot, link or spatial graph.

    ``outer`` optionally designates the outer region by one of its corners.
    ``pins`` fixes region labels by corner, so catalog diagrams can carry a
    reference labeling.  ``free_loops`` counts crossingless closed curves and
    only occurs, alone, in sub-knots with no crossings left.
    """

    crossings: tuple[Crossing, ...] = ()
    vertices: tuple[Vertex, ...] = ()
    outer: Optional[Corner] = None
    pins: tuple[tuple[str, Corner], ...] = ()
    free_loops: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(self.crossings))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "pins", tuple((lab, tuple(c)) for lab, c in self.pins))
        if self.outer is not None:
            object.__setattr__(self, "outer", tuple(self.outer))
        self._check_structure()

    def _check_structure(self):
        seen = set()
        for s in self.sites:
            if s.label in seen:
                raise DiagramError(f"slot collision: site label {s.label!r} defined twice")
            seen.add(s.label)
        counts: dict[str, int] = defaultdict(int)
        for s in self.sites:
            for a in s.arcs:
                counts[a] += 1
        for a, k in counts.items():
            if k != 2:
                raise DiagramError(f"arc multiplicity: arc {a!r} occurs {k} times (expected 2)")
        if sum(s.degree for s in self.sites) % 2:
            raise DiagramError("odd total slot count")
        if self.free_loops and self.sites:
            raise DiagramError("free loops are only supported in otherwise empty diagrams")
        sites = {s.label: s for s in self.sites}
        refs = [("outer", self.outer)] if self.outer is not None else []
        refs += [(f"region {lab}", c) for lab, c in self.pins]
        for what, (label, k) in refs:
            if label not in sites or not 0 <= k < sites[label].degree:
                raise DiagramError(f"dangling {what} reference {label}.{k + 1}")

    @property
    def sites(self) -> tuple:
        return self.crossings + self.vertices

    @property
    def n(self) -> int:
        return len(self.crossings)

    @property
    def arcs(self) -> tuple[str, ...]:
        """Arc labels in order of first appearance."""
        return tuple(dict.fromkeys(a for s in self.sites for a in s.arcs))

    def site(self, label: str):
        for s in self.sites:
            if s.label == label:
                return s
        raise DiagramError(f"unknown site {label!r}")

    def crossing(self, label: str) -> Crossing:
        for c in self.crossings:
            if c.label == label:
                return c
        raise DiagramError(f"unknown crossing {label!r}")

    def with_crossings(self, crossings: Iterable[Crossing]) -> Diagram:
        return replace(self, crossings=tuple(crossings))

    @cached_property
    def _map(self) -> _Map:
        return _Map(self)

    @cached_property
    def _regions(self) -> tuple[tuple[Region, ...], dict[int, str]]:
        m = self._map
        if self.free_loops:
            if self.free_loops != 1:
                raise DiagramError("split diagrams are not supported")
            return (Region("R1", (), frozenset(), ()), Region("R2", (), frozenset(), ())), {}
        if len(m.site_components) > 1:
            raise DiagramError("split diagrams are not supported")
        label_of: dict[int, str] = {}
        for lab, corner in self.pins:
            fid = m.face_of_corner(corner)
            if label_of.get(fid, lab) != lab:
                raise DiagramError(f"region pinned as both {label_of[fid]} and {lab}")
            label_of[fid] = lab
        if len(set(label_of.values())) != len(label_of):
            raise DiagramError("one region label pinned to two different regions")
        used = set(label_of.values())
        k = 1
        for fid in range(len(m.faces)):
            if fid in label_of:
                continue
            while f"R{k}" in used:
                k += 1
            label_of[fid] = f"R{k}"
            used.add(f"R{k}")
        regions = []
        for fid, orbit in enumerate(m.faces):
            corners = tuple(m.corner_of(d) for d in orbit)
            crossings = tuple(
                dict.fromkeys(c for c, _ in corners if isinstance(m.sites[m.index[c]], Crossing))
            )
            regions.append(Region(label_of[fid], corners, frozenset(m.arc_of(d) for d in orbit), crossings))
        regions.sort(key=lambda r: natural_key(r.label))
        return tuple(regions), label_of

    def regions(self) -> tuple[Region, ...]:
        return self._regions[0]

    def region_labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.regions())

    def region(self, label: str) -> Region:
        for r in self.regions():
            if r.label == label:
                return r
        raise DiagramError(f"unknown region {label!r}")

    def region_of_corner(self, corner: Corner) -> str:
        return self._regions[1][self._map.face_of_corner(corner)]

    def outer_region(self) -> Optional[str]:
        return None if self.outer is None else self.region_of_corner(self.outer)

    def arc_sides(self, arc: str) -> tuple[str, str]:
        """Labels of the regions on the two sides of ``arc``."""
        m = self._map
        d = m.arc_ends[arc][0]
        labels = self._regions[1]
        return labels[m.face_of[d]], labels[m.face_of[m.alpha[d]]]


def enumerate_regions(D: Diagram) -> tuple[Region, ...]:
    return D.regions()


def _classify(nverts: int, traces: list[EdgeTrace]) -> str:
    if nverts == 0:
        return "knot" if len(traces) == 1 else "other"
    if nverts == 2 and len(traces) == 3:
        loops = [t for t in traces if t.is_loop]
        if not loops:
            return "theta"
        if len(loops) == 2 and loops[0].start != loops[1].start:
            return "handcuff"
    return "other"


def trace_edges(D: Diagram) -> tuple[EdgeTrace, ...]:
    """Split the arcs into underlying graph edges.

    Strands pass straight through crossings (slot k to slot k+2) and stop at
    vertices.  Edges starting at vertices come first, loops before the others,
    each group in vertex and slot order; closed strands follow in order of
    their first arc.
    """
    m = D._map
    used = set()
    traces = []

    def walk(d0: int) -> tuple[list[str], Optional[int]]:
        arcs = []
        d = d0
        while True:
            used.add(d)
            arcs.append(m.arc_of(d))
            e = m.alpha[d]
            site = m.sites[m.dart_site[e]]
            if isinstance(site, Vertex):
                used.add(e)
                return arcs, e
            used.add(e)
            d = m.dart(m.dart_site[e], (m.slot_of(e) + 2) % 4)
            if d == d0:
                return arcs, None

    nx = len(D.crossings)
    for s in range(nx, len(m.sites)):
        for slot in range(3):
            d0 = m.dart(s, slot)
            if d0 in used:
                continue
            arcs, end = walk(d0)
            traces.append((arcs, m.sites[s].label, m.sites[m.dart_site[end]].label))
    # loop edges first, so a handcuff's bridge is always the last vertex edge
    traces.sort(key=lambda t: t[1] != t[2])
    for arc in D.arcs:
        d0 = m.arc_ends[arc][0]
        if d0 in used:
            continue
        arcs, end = walk(d0)
        traces.append((arcs, None, None))
    return tuple(EdgeTrace(f"e{i + 1}", tuple(a), s, t) for i, (a, s, t) in enumerate(traces))


def graph_components(D: Diagram) -> tuple[GraphComponent, ...]:
    traces = trace_edges(D)
    parent = {v.label: v.label for v in D.vertices}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for t in traces:
        if not t.closed:
            parent[find(t.start)] = find(t.end)
    groups: dict[str, list[str]] = defaultdict(list)
    for v in D.vertices:
        groups[find(v.label)].append(v.label)
    comps = []
    for verts in groups.values():
        vs = set(verts)
        ts = [t for t in traces if not t.closed and t.start in vs]
        comps.append(GraphComponent(_classify(len(verts), ts), tuple(verts), tuple(t.label for t in ts)))
    for t in traces:
        if t.closed:
            comps.append(GraphComponent("knot", (), (t.label,)))
    for _ in range(D.free_loops):
        comps.append(GraphComponent("knot", (), ()))
    return tuple(comps)


def find_reducible_crossings(D: Diagram) -> frozenset[str]:
    """Crossings with two diagonally opposite corners in the same region."""
    m = D._map
    out = set()
    for c in D.crossings:
        f = [m.face_of_corner((c.label, k)) for k in range(4)]
        if f[0] == f[2] or f[1] == f[3]:
            out.add(c.label)
    return frozenset(out)


def find_cutting_edges(D: Diagram) -> frozenset[str]:
    """Edges containing an arc that has the same region on both sides."""
    m = D._map
    out = set()
    for t in trace_edges(D):
        for arc in t.arcs:
            d = m.arc_ends[arc][0]
            if m.face_of[d] == m.face_of[m.alpha[d]]:
                out.add(t.label)
                break
    return frozenset(out)


def euler_counts(D: Diagram) -> tuple[EulerCount, ...]:
    m = D._map
    if D.free_loops:
        # a crossingless circle, counted with one marker point on it
        return tuple(EulerCount(1, 1, 2) for _ in range(D.free_loops))
    out = []
    for comp in m.site_components:
        cs = set(comp)
        v = len(comp)
        slots = sum(m.sites[i].degree for i in comp)
        faces = {m.face_of[d] for d in range(m.ndarts) if m.dart_site[d] in cs}
        out.append(EulerCount(v, slots // 2, len(faces)))
    return tuple(out)


def validate(D: Diagram, strict: bool = True) -> ValidationReport:
    """Euler, component, reducibility and cutting-edge report.

    With ``strict`` a non-spherical map raises instead of being reported.
    """
    counts = euler_counts(D)
    bad = [c for c in counts if c.residual]
    if bad and strict:
        c = bad[0]
        raise DiagramError(f"non-spherical map: v - e + f = {c.v} - {c.e} + {c.f} != 2")
    if bad:
        return ValidationReport(D.n, sum(c.f for c in counts), counts, graph_components(D),
                                frozenset(), frozenset())
    f = len(D.regions()) if len(counts) == 1 else sum(c.f for c in counts) - len(counts) + 1
    return ValidationReport(
        D.n, f, counts, graph_components(D), find_reducible_crossings(D), find_cutting_edges(D)
    )


def canonical_code(D: Diagram) -> tuple:
    """Label-free code; equal codes mean orientation-preserving isomorphic maps.

    Crossing over/under data is part of the code.
    """
    if not D.sites:
        return ("loops", D.free_loops)
    m = D._map
    best = None
    for d0 in range(m.ndarts):
        order = {m.dart_site[d0]: (0, m.slot_of(d0))}
        queue = [m.dart_site[d0]]
        code = []
        qi = 0
        while qi < len(queue):
            s = queue[qi]
            qi += 1
            site = m.sites[s]
            start = order[s][1]
            entry = [site.degree]
            if isinstance(site, Crossing):
                entry.append(int(site.is_over_slot(start)))
            for k in range(site.degree):
                slot = (start + k) % site.degree
                e = m.alpha[m.dart(s, slot)]
                t = m.dart_site[e]
                if t not in order:
                    order[t] = (len(order), m.slot_of(e))
                    queue.append(t)
                tdeg = m.sites[t].degree
                entry.append((order[t][0], (m.slot_of(e) - order[t][1]) % tdeg))
            code.append(tuple(entry))
        if len(order) != len(m.sites):
            code.append(("split",))
        code = tuple(code)
        if best is None or code < best:
            best = code
    return best


def is_isomorphic(D1: Diagram, D2: Diagram) -> bool:
    return canonical_code(D1) == canonical_code(D2)
