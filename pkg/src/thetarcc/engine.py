"""Region choice matrices, region crossing changes, and ineffective sets."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from . import gf2
from .diagram import (
    Diagram,
    DiagramError,
    find_reducible_crossings,
    graph_components,
    natural_key,
    validate,
)
from .gf2 import BitMatrix, BitVector
from .moves import delete_edge

RegionSet = frozenset
TargetVector = frozenset


class Unrealizable(DiagramError):
    """No set of regions realizes the requested crossing changes."""


@dataclass(frozen=True)
class RegionChoiceMatrix:
    matrix: BitMatrix
    crossings: tuple[str, ...]
    regions: tuple[str, ...]

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.nrows, self.matrix.ncols

    def region_vector(self, S: Iterable[str]) -> BitVector:
        index = {r: j for j, r in enumerate(self.regions)}
        try:
            return BitVector.from_indices(len(self.regions), (index[r] for r in S))
        except KeyError as exc:
            raise DiagramError(f"unknown region {exc.args[0]!r}") from None

    def target_vector(self, T: Iterable[str]) -> BitVector:
        index = {c: i for i, c in enumerate(self.crossings)}
        try:
            return BitVector.from_indices(len(self.crossings), (index[c] for c in T))
        except KeyError as exc:
            raise DiagramError(f"unknown crossing {exc.args[0]!r}") from None

    def regions_of(self, x: BitVector) -> frozenset[str]:
        return frozenset(self.regions[j] for j in x.support())

    def crossings_of(self, b: BitVector) -> frozenset[str]:
        return frozenset(self.crossings[i] for i in b.support())

    def to_text(self) -> str:
        return self.matrix.to_text()

    def to_json(self) -> dict:
        return {
            "rows": list(self.crossings),
            "columns": list(self.regions),
            "matrix": self.matrix.to_lists(),
        }


def region_choice_matrix(D: Diagram) -> RegionChoiceMatrix:
    """``a_ij = 1`` iff region ``j`` touches crossing ``i`` (at least once)."""
    regions = D.regions()
    crossings = tuple(c.label for c in D.crossings)
    rows = []
    for c in crossings:
        bits = 0
        for j, R in enumerate(regions):
            if c in R.crossings:
                bits |= 1 << j
        rows.append(bits)
    return RegionChoiceMatrix(BitMatrix(len(crossings), len(regions), tuple(rows)),
                              crossings, tuple(R.label for R in regions))


def apply_rcc(D: Diagram, S: Iterable[str]) -> Diagram:
    """Region crossing change at each region of ``S`` in turn."""
    flips = {c.label: 0 for c in D.crossings}
    for label in S:
        for c in D.region(label).crossings:
            flips[c] ^= 1
    return D.with_crossings(c.changed() if flips[c.label] else c for c in D.crossings)


def changed_crossings(D: Diagram, E: Diagram) -> frozenset[str]:
    """Crossings whose over/under data differs between two copies of one map."""
    if [c.arcs for c in D.crossings] != [c.arcs for c in E.crossings]:
        raise DiagramError("diagrams do not share an underlying map")
    return frozenset(c.label for c, e in zip(D.crossings, E.crossings) if c.over != e.over)


def canonical_order(family: Iterable[frozenset[str]], labels: tuple[str, ...]) -> list[frozenset[str]]:
    """Sort by size, then lexicographically by region position."""
    pos = {r: j for j, r in enumerate(labels)}
    return sorted(family, key=lambda S: (len(S), sorted(pos[r] for r in S)))


def solve_target(D: Diagram, T: Iterable[str], cap: int = gf2.DEFAULT_CAP) -> list[frozenset[str]]:
    """All region sets whose crossing changes flip exactly the crossings in ``T``."""
    M = region_choice_matrix(D)
    b = M.target_vector(T)
    try:
        sols = gf2.enumerate_solutions(M.matrix, b, cap)
    except gf2.InconsistentSystem:
        raise Unrealizable(f"crossing changes at {sorted(M.crossings_of(b), key=natural_key)} "
                           "are not realized by region crossing changes") from None
    return canonical_order((M.regions_of(x) for x in sols), M.regions)


def ineffective_family(D: Diagram, cap: int = gf2.DEFAULT_CAP) -> list[frozenset[str]]:
    return solve_target(D, (), cap)


@dataclass(frozen=True)
class ColoringPartition:
    index: int
    black: frozenset[str]
    white: frozenset[str]


def _require_reduced_theta(D: Diagram):
    comps = graph_components(D)
    if len(comps) != 1 or comps[0].kind != "theta":
        raise DiagramError("needs a single theta-curve diagram")
    if D.outer is None:
        raise DiagramError("needs a designated outer region")
    reducible = find_reducible_crossings(D)
    if reducible:
        raise DiagramError(f"diagram is reducible at {sorted(reducible, key=natural_key)}")


def two_coloring(k: Diagram, outer: str) -> dict[str, int]:
    """Checkerboard coloring of a knot diagram: 1 black, 0 white, ``outer`` white."""
    labels = k.region_labels()
    adj = {r: set() for r in labels}
    if k.free_loops:
        a, b = labels
        adj[a].add(b)
        adj[b].add(a)
    for arc in k.arcs:
        x, y = k.arc_sides(arc)
        adj[x].add(y)
        adj[y].add(x)
    color = {outer: 0}
    queue = deque([outer])
    while queue:
        r = queue.popleft()
        for s in adj[r]:
            if s not in color:
                color[s] = 1 - color[r]
                queue.append(s)
            elif color[s] == color[r]:
                raise DiagramError("region adjacency graph is not bipartite")
    if len(color) != len(labels):
        raise DiagramError("region adjacency graph is disconnected")
    return color


def checkerboard_pullback(D: Diagram, i: int) -> ColoringPartition:
    """Black/white regions of ``D`` induced by the sub-knot without edge ``e_i``."""
    _require_reduced_theta(D)
    sub = delete_edge(D, f"e{i}")
    color = two_coloring(sub.knot, sub.region_map[D.outer_region()])
    black = frozenset(r for r in D.region_labels() if color[sub.region_map[r]])
    return ColoringPartition(i, black, frozenset(D.region_labels()) - black)


def all_pullbacks(D: Diagram) -> dict[int, ColoringPartition]:
    return {i: checkerboard_pullback(D, i) for i in (1, 2, 3)}


def f_labeling(D: Diagram) -> dict[str, int]:
    parts = all_pullbacks(D)
    return {r: sum(r in p.black for p in parts.values()) for r in D.region_labels()}


@dataclass(frozen=True)
class SymdiffCheck:
    l: int
    m: int
    n: int
    passed: bool


def verify_symdiff_lemma(D: Diagram, blacks: dict[int, frozenset[str]] | None = None) -> list[SymdiffCheck]:
    """Check ``B^l = B^m ^ B^n`` for each choice of ``l``.

    ``blacks`` overrides the computed black sets (used for negative controls).
    """
    if blacks is None:
        blacks = {i: p.black for i, p in all_pullbacks(D).items()}
    out = []
    for l, m, n in ((1, 2, 3), (2, 1, 3), (3, 1, 2)):
        out.append(SymdiffCheck(l, m, n, blacks[l] == (blacks[m] | blacks[n]) - (blacks[m] & blacks[n])))
    return out


def independence_check(D: Diagram) -> bool:
    """Whether B^1, W^1 and B^2 are independent and span the ineffective sets."""
    parts = all_pullbacks(D)
    M = region_choice_matrix(D)
    vecs = [M.region_vector(parts[1].black), M.region_vector(parts[1].white), M.region_vector(parts[2].black)]
    if not gf2.is_independent(vecs):
        return False
    if any(not M.matrix.matvec(v).is_zero() for v in vecs):
        return False
    return len(gf2.nullspace(M.matrix)) == 3


@dataclass(frozen=True)
class LemmaResult:
    name: str
    passed: bool
    detail: str = ""


def lemma_report(D: Diagram, max_targets: int = 4096) -> list[LemmaResult]:
    """Run every counting and ineffective-set check that applies to ``D``.

    Checks whose hypotheses fail (wrong kind, reducible, no outer region) are
    skipped rather than reported as failures.
    """
    rep = validate(D)
    M = region_choice_matrix(D)
    n, f = M.shape
    r = gf2.rank(M.matrix)
    out = [LemmaResult("euler", rep.euler_residual == 0, f"residual {rep.euler_residual}")]
    kind = rep.kind
    if kind in ("theta", "handcuff"):
        out.append(LemmaResult("regions = n + 3", f == n + 3, f"n={n} f={f}"))
    elif kind == "knot":
        out.append(LemmaResult("regions = n + 2", f == n + 2, f"n={n} f={f}"))
    if kind == "theta":
        out.append(LemmaResult("full rank", r == n, f"rank={r} n={n}"))
        if 2 ** n <= max_targets:
            counts = set()
            for bits in range(2 ** n):
                T = [M.crossings[i] for i in range(n) if bits >> i & 1]
                try:
                    counts.add(len(solve_target(D, T)))
                except Unrealizable:
                    counts.add(0)
            out.append(LemmaResult("eight solutions per target", counts == {8},
                                   f"{2 ** n} targets, counts {sorted(counts)}"))
    elif kind == "knot" and not rep.reducible and 2 ** n <= max_targets:
        counts = {len(solve_target(D, [c])) for c in M.crossings}
        out.append(LemmaResult("four solutions per crossing", counts <= {4}, f"counts {sorted(counts)}"))
    if kind == "theta" and not rep.reducible and D.outer is not None:
        parts = all_pullbacks(D)
        zero = all(M.matrix.matvec(M.region_vector(p.black)).is_zero() for p in parts.values())
        out.append(LemmaResult("B^i ineffective", zero))
        checks = verify_symdiff_lemma(D, {i: p.black for i, p in parts.items()})
        out.append(LemmaResult("B^l = B^m symdiff B^n", all(c.passed for c in checks),
                               ", ".join(f"l={c.l}:{'ok' if c.passed else 'FAIL'}" for c in checks)))
        labels = f_labeling(D)
        outer = D.outer_region()
        ok = set(labels.values()) <= {0, 2} and labels[outer] == 0
        out.append(LemmaResult("f-labels in {0,2}", ok, f"outer {outer} -> {labels[outer]}"))
        out.append(LemmaResult("B^1, W^1, B^2 independent", independence_check(D)))
        expected = {frozenset(), frozenset(M.regions)}
        expected |= {p.black for p in parts.values()} | {p.white for p in parts.values()}
        family = set(ineffective_family(D))
        out.append(LemmaResult("ineffective family = {0, B^i, W^i, all}", family == expected,
                               f"{len(family)} sets"))
    return out

