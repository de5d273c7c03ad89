"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (bad diagram, unrealizable
target), 2 when a verification or oracle cross-check fails, 64 on bad flags.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import catalog, gf2
from .diagram import Diagram, DiagramError, natural_key, trace_edges, validate
from .engine import (
    all_pullbacks,
    apply_rcc,
    changed_crossings,
    f_labeling,
    ineffective_family,
    lemma_report,
    region_choice_matrix,
    solve_target,
)
from .moves import delete_edge
from .oracle import cross_check, cross_check_all
from .pdformat import SCHEMA, format_pd, load_diagram, to_json

EXIT_OK, EXIT_DOMAIN, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2, 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _labels(text: str | None) -> list[str]:
    if not text:
        return []
    return [t.strip() for t in text.split(",") if t.strip()]


def _sorted(labels) -> list[str]:
    return sorted(labels, key=natural_key)


def _family_text(family) -> str:
    return "\n".join("{" + ", ".join(_sorted(S)) + "}" for S in family)


def load_input(spec: str) -> Diagram:
    """A path to an extended-PD file, or a catalog id (``.pd`` suffix optional)."""
    path = Path(spec)
    if path.is_file():
        return load_diagram(path)
    if path.stem in catalog.ids():
        return catalog.load(path.stem)
    raise DiagramError(f"no such file or catalog entry: {spec}")


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2))
    else:
        print(text)


def cmd_validate(args) -> int:
    D = load_input(args.input)
    rep = validate(D)
    lines = [f"diagram {D.name}: kind={rep.kind} n={rep.n} f={rep.f} euler_residual={rep.euler_residual}"]
    for t in trace_edges(D):
        lines.append(f"  {t.label}: {' '.join(t.arcs)}")
    lines.append(f"  reducible: {', '.join(_sorted(rep.reducible)) or '-'}")
    lines.append(f"  cutting edges: {', '.join(_sorted(rep.cutting_edges)) or '-'}")
    _emit(args, {"diagram": D.name, **rep.to_json()}, "\n".join(lines))
    return EXIT_OK


def cmd_regions(args) -> int:
    D = load_input(args.input)
    outer = D.outer_region()
    rows, lines = [], []
    for R in D.regions():
        corners = [f"{s}.{k + 1}" for s, k in R.corners]
        rows.append({"label": R.label, "corners": corners, "crossings": list(R.crossings),
                     "arcs": _sorted(R.arcs), "outer": R.label == outer})
        mark = " (outer)" if R.label == outer else ""
        lines.append(f"{R.label}{mark}: crossings {{{', '.join(R.crossings)}}} corners {' '.join(corners)}")
    _emit(args, {"diagram": D.name, "regions": rows}, "\n".join(lines))
    return EXIT_OK


def cmd_matrix(args) -> int:
    D = load_input(args.input)
    M = region_choice_matrix(D)
    _emit(args, {"diagram": D.name, **M.to_json()}, M.to_text().rstrip("\n"))
    return EXIT_OK


def cmd_rank(args) -> int:
    D = load_input(args.input)
    M = region_choice_matrix(D)
    n, f = M.shape
    r = gf2.rank(M.matrix)
    _emit(args, {"diagram": D.name, "n": n, "f": f, "rank": r, "nullity": f - r},
          f"rank {r} (n={n}, f={f}, nullity {f - r})")
    return EXIT_OK


def _family_payload(D: Diagram, target, family) -> dict:
    M = region_choice_matrix(D)
    r = gf2.rank(M.matrix)
    return {
        "diagram": D.name,
        "target": _sorted(target),
        "solutions": [_sorted(S) for S in family],
        "rank": r,
        "nullity": M.shape[1] - r,
    }


def cmd_solve(args) -> int:
    D = load_input(args.input)
    target = _labels(args.target)
    family = solve_target(D, target, args.cap)
    _emit(args, _family_payload(D, target, family), _family_text(family))
    return EXIT_OK


def cmd_ineffective(args) -> int:
    D = load_input(args.input)
    family = ineffective_family(D, args.cap)
    _emit(args, _family_payload(D, [], family), _family_text(family))
    return EXIT_OK


def cmd_apply(args) -> int:
    D = load_input(args.input)
    E = apply_rcc(D, _labels(args.regions))
    flipped = _sorted(changed_crossings(D, E))
    print(f"changed crossings: {', '.join(flipped) or '-'}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps({**to_json(E), "changed": flipped}, indent=2))
    else:
        print(format_pd(E), end="")
    return EXIT_OK


def cmd_subknot(args) -> int:
    D = load_input(args.input)
    sub = delete_edge(D, args.delete)
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, "diagram": D.name, "edge": sub.edge,
                          "knot": to_json(sub.knot), "region_map": sub.region_map}, indent=2))
    else:
        print(format_pd(sub.knot), end="")
        for r in D.region_labels():
            print(f"# {r} -> {sub.region_map[r]}")
    return EXIT_OK


def cmd_checkerboard(args) -> int:
    D = load_input(args.input)
    parts = all_pullbacks(D)
    if args.delete:
        i = int(args.delete.lstrip("e"))
        if i not in parts:
            raise DiagramError(f"edge index must be e1, e2 or e3, got {args.delete}")
        parts = {i: parts[i]}
    payload = {f"e{i}": {"black": _sorted(p.black), "white": _sorted(p.white)} for i, p in parts.items()}
    text = "\n".join(f"B{i} = {{{', '.join(_sorted(p.black))}}}  W{i} = {{{', '.join(_sorted(p.white))}}}"
                     for i, p in parts.items())
    _emit(args, {"diagram": D.name, "partitions": payload}, text)
    return EXIT_OK


def cmd_flabel(args) -> int:
    D = load_input(args.input)
    labels = f_labeling(D)
    _emit(args, {"diagram": D.name, "f": labels},
          "\n".join(f"{r}: {v}" for r, v in labels.items()))
    return EXIT_OK


def cmd_verify_lemmas(args) -> int:
    D = load_input(args.input)
    results = lemma_report(D)
    ok = all(r.passed for r in results)
    text = "\n".join(f"{'PASS' if r.passed else 'FAIL'}  {r.name}" + (f"  ({r.detail})" if r.detail else "")
                     for r in results)
    _emit(args, {"diagram": D.name, "passed": ok,
                 "checks": [{"name": r.name, "passed": r.passed, "detail": r.detail} for r in results]},
          text)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_oracle(args) -> int:
    D = load_input(args.input)
    if args.target is not None:
        reports = [cross_check(D, _labels(args.target))]
    else:
        reports = cross_check_all(D)
    ok = all(r.agreement for r in reports)
    lines = []
    for r in reports:
        status = "agree" if r.agreement else "DISAGREE"
        lines.append(f"{{{', '.join(r.target)}}}: {len(r.oracle)} sets of {r.examined} subsets, {status}")
    _emit(args, {"diagram": D.name, "agreement": ok, "reports": [r.to_json() for r in reports]},
          "\n".join(lines))
    return EXIT_OK if ok else EXIT_VERIFY


def _entry_check(e: catalog.CatalogEntry) -> list[str]:
    D = e.diagram()
    rep = validate(D)
    M = region_choice_matrix(D)
    got = {"kind": rep.kind, "n": D.n, "f": M.shape[1], "rank": gf2.rank(M.matrix),
           "ineffective": len(ineffective_family(D)), "reduced": not rep.reducible}
    want = {k: getattr(e, k) for k in got}
    return [f"{k}: expected {want[k]}, got {got[k]}" for k in got if got[k] != want[k]]


def cmd_catalog(args) -> int:
    if args.show:
        print(catalog.entry(Path(args.show).stem).source, end="")
        return EXIT_OK
    entries = catalog.ENTRIES
    problems = {e.id: _entry_check(e) for e in entries} if args.verify else {}
    if args.format == "json":
        rows = [dict(e.to_json(), **({"problems": problems[e.id]} if args.verify else {})) for e in entries]
        print(json.dumps({"schema": SCHEMA, "entries": rows}, indent=2))
    else:
        for e in entries:
            status = ""
            if args.verify:
                status = "  ok" if not problems[e.id] else "  MISMATCH " + "; ".join(problems[e.id])
            print(f"{e.id:<16} {e.kind:<9} n={e.n:<2} f={e.f:<2} rank={e.rank:<2} "
                  f"ineffective={e.ineffective:<3}{status}")
    return EXIT_VERIFY if any(problems.values()) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    needs_input = argparse.ArgumentParser(add_help=False, parents=[common])
    needs_input.add_argument("--in", dest="input", required=True,
                             help="extended-PD file or catalog id")
    cap = argparse.ArgumentParser(add_help=False)
    cap.add_argument("--cap", type=int, default=gf2.DEFAULT_CAP, help="maximum family size")

    parser = _Parser(prog="thetarcc", description="Region crossing change on spatial graph diagrams.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help, parents=(needs_input,)):
        p = sub.add_parser(name, help=help, parents=list(parents))
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "Euler check, component kinds, reducible crossings, cutting edges")
    add("regions", cmd_regions, "list regions with their corners and crossings")
    add("matrix", cmd_matrix, "region choice matrix")
    add("rank", cmd_rank, "GF(2) rank of the region choice matrix")
    p = add("solve", cmd_solve, "region sets realizing a crossing-change target", (needs_input, cap))
    p.add_argument("--target", required=True, help="comma-separated crossing labels")
    p = add("apply", cmd_apply, "apply region crossing changes and print the new diagram")
    p.add_argument("--regions", required=True, help="comma-separated region labels")
    p = add("subknot", cmd_subknot, "delete one edge of a theta-curve")
    p.add_argument("--delete", required=True, help="edge label, e.g. e2")
    p = add("checkerboard", cmd_checkerboard, "black/white region sets from each sub-knot")
    p.add_argument("--delete", help="restrict to one edge, e.g. e2")
    add("ineffective", cmd_ineffective, "region sets that change nothing", (needs_input, cap))
    add("flabel", cmd_flabel, "number of sub-knot colorings in which each region is black")
    add("verify-lemmas", cmd_verify_lemmas, "run every counting and ineffective-set check")
    p = add("oracle", cmd_oracle, "cross-check the solver against exhaustive enumeration")
    p.add_argument("--target", help="single target; all 2^n targets when omitted")
    p = add("catalog", cmd_catalog, "list bundled diagrams", (common,))
    p.add_argument("--show", metavar="ID", help="print the extended-PD source of one entry")
    p.add_argument("--verify", action="store_true", help="recompute and compare expected invariants")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DiagramError, gf2.CapExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
