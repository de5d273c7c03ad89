"""Bundled diagrams with their expected invariants.

``theta_t31`` carries pinned region labels so that its region choice matrix
is exactly the reference 3 x 6 example.  Other theta-curves are trefoil,
figure-eight and small knot diagrams with a chord across one region, some
thickened by Reidemeister II moves.  ``generated_variants`` adds R1/R2
mutations on top.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources

from .diagram import Diagram, DiagramError
from .moves import NotApplicable, apply_reidemeister
from .pdformat import parse_diagram


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    n: int
    f: int
    rank: int
    ineffective: int
    reduced: bool = True
    note: str = ""

    @property
    def source(self) -> str:
        return resources.files(__package__).joinpath("data").joinpath(f"{self.id}.pd").read_text(encoding="utf-8")

    def diagram(self) -> Diagram:
        return parse_diagram(self.source, name=self.id)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "n": self.n,
            "f": self.f,
            "rank": self.rank,
            "ineffective": self.ineffective,
            "reduced": self.reduced,
            "note": self.note,
        }


def _theta(id: str, n: int, note: str = "") -> CatalogEntry:
    return CatalogEntry(id, "theta", n, n + 3, n, 8, True, note)


ENTRIES = (
    _theta("theta_t31", 3, "reference 3-crossing example; regions R1..R6 pinned"),
    _theta("theta_0", 0, "crossingless theta-curve"),
    _theta("theta_fig8", 4, "figure-eight knot with a chord"),
    _theta("theta_5_1", 5, "5_1 knot with a chord"),
    _theta("theta_5_2", 5, "5_2 knot with a chord"),
    _theta("theta_t31_r2", 5, "theta_t31 plus one R2 move"),
    _theta("theta_e3_r2", 5, "theta_t31 with its chord pushed across an arc"),
    _theta("theta_6_1", 6, "6_1 knot with a chord"),
    _theta("theta_fig8_r2", 6, "theta_fig8 variant plus one R2 move"),
    _theta("theta_7", 7, "theta_t31 plus two R2 moves"),
    _theta("theta_8", 8, "6_1 chord variant plus one R2 move"),
    CatalogEntry("trefoil", "knot", 3, 5, 3, 4),
    CatalogEntry("fig8", "knot", 4, 6, 4, 4),
    CatalogEntry("kink", "knot", 1, 3, 1, 4, False, "reducible one-crossing unknot"),
    CatalogEntry("handcuff_cut", "handcuff", 2, 5, 1, 16, True,
                 "bridge is a cutting edge; single crossing changes unrealizable"),
    CatalogEntry("handcuff_hopf", "handcuff", 2, 5, 2, 8, True, "loops clasp; no cutting edge"),
)

_BY_ID = {e.id: e for e in ENTRIES}


def ids() -> list[str]:
    return [e.id for e in ENTRIES]


def entry(id: str) -> CatalogEntry:
    try:
        return _BY_ID[id]
    except KeyError:
        raise DiagramError(f"no catalog entry {id!r}") from None


def load(id: str) -> Diagram:
    return entry(id).diagram()


def reduced_thetas() -> list[Diagram]:
    return [e.diagram() for e in ENTRIES if e.kind == "theta" and e.reduced]


def _random_move(D: Diagram, rng: random.Random) -> Diagram:
    for _ in range(50):
        move = rng.choice(["R1-add", "R1-add", "R2-add", "R2-add", "R1-remove", "R2-remove"])
        try:
            if move == "R1-add":
                return apply_reidemeister(D, move, arc=rng.choice(D.arcs), side=rng.randrange(2),
                                          over=rng.choice([(1, 3), (2, 4)]))
            if move == "R1-remove":
                return apply_reidemeister(D, move, crossing=rng.choice(D.crossings).label)
            region = rng.choice(D.regions())
            if move == "R2-remove":
                return apply_reidemeister(D, move, region=region.label)
            arcs = sorted(region.arcs)
            if len(arcs) < 2:
                continue
            a, b = rng.sample(arcs, 2)
            return apply_reidemeister(D, move, region=region.label, over_arc=a, under_arc=b)
        except (NotApplicable, IndexError):
            continue
    raise NotApplicable("no applicable move found")


def generated_variants(count: int = 24, seed: int = 20240601, max_crossings: int = 9) -> list[Diagram]:
    """Theta-curve diagrams obtained from catalog thetas by random R1/R2 walks."""
    rng = random.Random(seed)
    bases = [e.diagram() for e in ENTRIES if e.kind == "theta" and e.n <= 5]
    out = []
    while len(out) < count:
        D = rng.choice(bases)
        base = D.name
        for _ in range(rng.randint(1, 3)):
            E = _random_move(D, rng)
            if E.n > max_crossings:
                break
            D = E
        name = f"{base}~{len(out) + 1}"
        out.append(Diagram(D.crossings, D.vertices, D.outer, D.pins, D.free_loops, name=name))
    return out
