"""Region crossing change on knot, theta-curve and handcuff diagrams.

Diagrams are combinatorial maps on the sphere.  The region choice matrix over
GF(2) turns "which regions flip these crossings" into a linear system, and a
brute-force oracle checks the algebra against direct diagram surgery.
"""

from __future__ import annotations

from .diagram import (
    Crossing,
    Diagram,
    DiagramError,
    EdgeTrace,
    Region,
    ValidationReport,
    Vertex,
    enumerate_regions,
    find_cutting_edges,
    find_reducible_crossings,
    is_isomorphic,
    trace_edges,
    validate,
)
from .engine import (
    ColoringPartition,
    RegionChoiceMatrix,
    Unrealizable,
    all_pullbacks,
    apply_rcc,
    changed_crossings,
    checkerboard_pullback,
    f_labeling,
    independence_check,
    ineffective_family,
    lemma_report,
    region_choice_matrix,
    solve_target,
    verify_symdiff_lemma,
)
from .moves import NotApplicable, SubKnot, apply_reidemeister, delete_edge
from .oracle import OracleGuard, OracleReport, brute_force_solutions, cross_check
from .pdformat import ParseError, format_pd, from_json, load_diagram, parse_diagram, to_json

__version__ = "0.1.0"

__all__ = [
    "ColoringPartition",
    "Crossing",
    "Diagram",
    "DiagramError",
    "EdgeTrace",
    "NotApplicable",
    "OracleGuard",
    "OracleReport",
    "ParseError",
    "Region",
    "RegionChoiceMatrix",
    "SubKnot",
    "Unrealizable",
    "ValidationReport",
    "Vertex",
    "all_pullbacks",
    "apply_rcc",
    "apply_reidemeister",
    "brute_force_solutions",
    "changed_crossings",
    "checkerboard_pullback",
    "cross_check",
    "delete_edge",
    "enumerate_regions",
    "f_labeling",
    "find_cutting_edges",
    "find_reducible_crossings",
    "format_pd",
    "from_json",
    "independence_check",
    "ineffective_family",
    "is_isomorphic",
    "lemma_report",
    "load_diagram",
    "parse_diagram",
    "region_choice_matrix",
    "solve_target",
    "to_json",
    "trace_edges",
    "validate",
    "verify_symdiff_lemma",
]
