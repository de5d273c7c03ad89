"""Extended PD text format and its JSON mirror.

::

    # comments run to end of line
    X c1 = (a,b,c,d) over=(1,3)     crossing, slots counterclockwise
    V v1 = (a,b,c)                  trivalent vertex, slots counterclockwise
    outer = c1.2                    corner 2 of c1 lies in the outer region
    region R1 = c1.1                pin region label R1 to that corner's region
    loops = 1                       a crossingless closed curve (sub-knots only)

Corner ``k`` of a site is the wedge between slots ``k`` and ``k+1``.
"""

from __future__ import annotations

import re
from pathlib import Path

from .diagram import Crossing, Diagram, DiagramError, Vertex

SCHEMA = 1

_LABEL = r"[A-Za-z0-9_][A-Za-z0-9_'+\-]*"
_CROSSING = re.compile(
    rf"X\s+(?P<label>{_LABEL})\s*=\s*\((?P<arcs>[^)]*)\)\s*(?:over\s*=\s*\((?P<over>[^)]*)\))?\s*$"
)
_VERTEX = re.compile(rf"V\s+(?P<label>{_LABEL})\s*=\s*\((?P<arcs>[^)]*)\)\s*$")
_OUTER = re.compile(rf"outer\s*=\s*(?P<site>{_LABEL})\.(?P<k>\d+)\s*$")
_REGION = re.compile(rf"region\s+(?P<label>{_LABEL})\s*=\s*(?P<site>{_LABEL})\.(?P<k>\d+)\s*$")
_LOOPS = re.compile(r"loops\s*=\s*(?P<k>\d+)\s*$")
_ARC = re.compile(rf"^{_LABEL}$")


class ParseError(DiagramError):
    def __init__(self, msg: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + msg)


def _arcs(text: str, lineno: int, col: int) -> tuple[str, ...]:
    parts = [p.strip() for p in text.split(",")]
    for p in parts:
        if not _ARC.match(p):
            raise ParseError(f"bad arc label {p!r}", lineno, col)
    return tuple(parts)


def parse_diagram(source: str, name: str = "") -> Diagram:
    crossings, vertices, pins = [], [], []
    outer = None
    loops = 0
    where: dict[str, int] = {}
    arc_lines: dict[str, list[int]] = {}
    for lineno, raw in enumerate(source.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        if m := _CROSSING.match(stripped):
            arcs = _arcs(m["arcs"], lineno, col + m.start("arcs"))
            if len(arcs) != 4:
                raise ParseError(f"crossing needs 4 arcs, got {len(arcs)}", lineno, col)
            over = (1, 3)
            if m["over"] is not None:
                try:
                    over = tuple(int(x) for x in m["over"].split(","))
                except ValueError:
                    raise ParseError("bad over pair", lineno, col + m.start("over")) from None
                if over not in ((1, 3), (2, 4)):
                    raise ParseError("over pair must be (1,3) or (2,4)", lineno, col + m.start("over"))
            label = m["label"]
            crossings.append(Crossing(label, arcs, over))
        elif m := _VERTEX.match(stripped):
            arcs = _arcs(m["arcs"], lineno, col + m.start("arcs"))
            if len(arcs) != 3:
                raise ParseError(f"vertex needs 3 arcs, got {len(arcs)}", lineno, col)
            label = m["label"]
            vertices.append(Vertex(label, arcs))
        elif m := _OUTER.match(stripped):
            outer = (m["site"], int(m["k"]) - 1)
            continue
        elif m := _REGION.match(stripped):
            pins.append((m["label"], (m["site"], int(m["k"]) - 1)))
            continue
        elif m := _LOOPS.match(stripped):
            loops = int(m["k"])
            continue
        else:
            raise ParseError(f"cannot parse {stripped!r}", lineno, col)
        if label in where:
            raise ParseError(f"slot collision: site {label!r} already defined on line {where[label]}",
                             lineno, col)
        where[label] = lineno
        for a in arcs:
            arc_lines.setdefault(a, []).append(lineno)
            if len(arc_lines[a]) > 2:
                raise ParseError(f"arc multiplicity: arc {a!r} occurs more than twice", lineno, col)
    for a, lines in arc_lines.items():
        if len(lines) != 2:
            raise ParseError(f"arc multiplicity: arc {a!r} occurs once", lines[0], 1)
    for lab, (site, k) in pins + ([("outer", outer)] if outer else []):
        if site not in where:
            raise ParseError(f"dangling reference to site {site!r} in {lab}")
    try:
        return Diagram(tuple(crossings), tuple(vertices), outer, tuple(pins), loops, name=name)
    except ParseError:
        raise
    except DiagramError as exc:
        raise ParseError(str(exc)) from None


def load_diagram(path: str | Path) -> Diagram:
    path = Path(path)
    return parse_diagram(path.read_text(encoding="utf-8"), name=path.stem)


def format_pd(D: Diagram) -> str:
    lines = []
    if D.name:
        lines.append(f"# {D.name}")
    for c in D.crossings:
        lines.append(f"X {c.label} = ({','.join(c.arcs)}) over=({c.over[0]},{c.over[1]})")
    for v in D.vertices:
        lines.append(f"V {v.label} = ({','.join(v.arcs)})")
    if D.free_loops:
        lines.append(f"loops = {D.free_loops}")
    if D.outer is not None:
        lines.append(f"outer = {D.outer[0]}.{D.outer[1] + 1}")
    for lab, (site, k) in D.pins:
        lines.append(f"region {lab} = {site}.{k + 1}")
    return "\n".join(lines) + "\n"


def _corner_str(c) -> str:
    return f"{c[0]}.{c[1] + 1}"


def _corner_parse(s: str):
    site, k = s.rsplit(".", 1)
    return site, int(k) - 1


def to_json(D: Diagram) -> dict:
    return {
        "schema": SCHEMA,
        "id": D.name,
        "crossings": [{"label": c.label, "arcs": list(c.arcs), "over": list(c.over)} for c in D.crossings],
        "vertices": [{"label": v.label, "arcs": list(v.arcs)} for v in D.vertices],
        "loops": D.free_loops,
        "outer": None if D.outer is None else _corner_str(D.outer),
        "regions": {lab: _corner_str(c) for lab, c in D.pins},
    }


def from_json(data: dict) -> Diagram:
    if data.get("schema") != SCHEMA:
        raise DiagramError(f"unsupported schema {data.get('schema')!r}")
    return Diagram(
        tuple(Crossing(c["label"], tuple(c["arcs"]), tuple(c["over"])) for c in data["crossings"]),
        tuple(Vertex(v["label"], tuple(v["arcs"])) for v in data["vertices"]),
        None if data.get("outer") is None else _corner_parse(data["outer"]),
        tuple((lab, _corner_parse(c)) for lab, c in data.get("regions", {}).items()),
        data.get("loops", 0),
        name=data.get("id", ""),
    )
