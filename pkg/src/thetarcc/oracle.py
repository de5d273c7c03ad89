"""Brute-force ground truth for region crossing change.

Every subset of regions is applied to the diagram with :func:`apply_rcc` and
the resulting over/under data is compared with the original.  No linear
algebra is involved, so agreement with :func:`solve_target` is a genuine
cross-check of the matrix model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .diagram import Diagram, DiagramError, natural_key
from .engine import Unrealizable, apply_rcc, canonical_order, changed_crossings, solve_target

MAX_REGIONS = 20


class OracleGuard(DiagramError):
    """The diagram has too many regions for exhaustive enumeration."""


@lru_cache(maxsize=64)
def _outcomes(D: Diagram) -> dict[frozenset[str], list[frozenset[str]]]:
    labels = D.region_labels()
    if len(labels) > MAX_REGIONS:
        raise OracleGuard(f"{len(labels)} regions exceed the oracle limit of {MAX_REGIONS}")
    table: dict[frozenset[str], list[frozenset[str]]] = {}
    for size in range(len(labels) + 1):
        for S in combinations(labels, size):
            flipped = changed_crossings(D, apply_rcc(D, S))
            table.setdefault(flipped, []).append(frozenset(S))
    return table


def subsets_examined(D: Diagram) -> int:
    return 2 ** len(D.region_labels())


def brute_force_solutions(D: Diagram, T: Iterable[str]) -> list[frozenset[str]]:
    """Region sets whose crossing changes alter exactly the crossings in ``T``."""
    T = frozenset(T)
    unknown = T - {c.label for c in D.crossings}
    if unknown:
        raise DiagramError(f"unknown crossing {sorted(unknown)[0]!r}")
    return canonical_order(_outcomes(D).get(T, []), D.region_labels())


@dataclass(frozen=True)
class OracleReport:
    diagram: str
    target: tuple[str, ...]
    examined: int
    oracle: tuple[frozenset[str], ...]
    solver: tuple[frozenset[str], ...]

    @property
    def agreement(self) -> bool:
        return set(self.oracle) == set(self.solver) and len(self.oracle) == len(self.solver)

    def to_json(self) -> dict:
        def fam(F):
            return [sorted(S, key=natural_key) for S in F]

        return {
            "schema": 1,
            "diagram": self.diagram,
            "target": list(self.target),
            "examined": self.examined,
            "matching": fam(self.oracle),
            "solver": fam(self.solver),
            "agreement": self.agreement,
        }


def cross_check(D: Diagram, T: Iterable[str], cap: int = 1 << MAX_REGIONS) -> OracleReport:
    T = tuple(sorted(set(T), key=natural_key))
    oracle = brute_force_solutions(D, T)
    try:
        solver = solve_target(D, T, cap)
    except Unrealizable:
        solver = []
    return OracleReport(D.name, T, subsets_examined(D), tuple(oracle), tuple(solver))


def cross_check_all(D: Diagram) -> list[OracleReport]:
    """Cross-check every one of the 2^n crossing targets."""
    labels = [c.label for c in D.crossings]
    return [cross_check(D, T) for k in range(len(labels) + 1) for T in combinations(labels, k)]
