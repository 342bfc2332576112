"""
Plain-text triangulation files.

::

    # comment
    tets 1
    b b 0:3:2031 0:2:1302
    meridian 0

Each tetrahedron line lists faces 0..3; an entry is ``b`` for a boundary face
or ``t:f:abcd`` meaning "glued to face f of tetrahedron t, with vertices
0,1,2,3 sent to a,b,c,d".
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from .triangulation import (Gluing, GluingTable, MarkedTriangulation, Triangulation,
                            TriangulationError, build, check_gluing)


class TriangulationParseError(TriangulationError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _parse_entry(tok: str, lineno: int):
    if tok == "b":
        return None
    parts = tok.split(":")
    if len(parts) != 3 or len(parts[2]) != 4 or not all(p.isdigit() for p in parts):
        raise TriangulationParseError(f"bad face entry {tok!r}", lineno)
    return Gluing(int(parts[0]), int(parts[1]), tuple(int(c) for c in parts[2]))


def parse(text: str):
    """Parse triangulation text; return ``(GluingTable, meridian or None)``."""
    n = None
    rows, row_lines = [], []
    meridian = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if n is None:
            if len(words) != 2 or words[0] != "tets" or not words[1].isdigit():
                raise TriangulationParseError("expected header 'tets <n>'", lineno)
            n = int(words[1])
            continue
        if words[0] == "meridian":
            if len(words) != 2 or not words[1].isdigit():
                raise TriangulationParseError("expected 'meridian <edge>'", lineno)
            if meridian is not None:
                raise TriangulationParseError("duplicate meridian line", lineno)
            meridian = int(words[1])
            continue
        if meridian is not None:
            raise TriangulationParseError("tetrahedron line after meridian line", lineno)
        if len(words) != 4:
            raise TriangulationParseError("expected four face entries", lineno)
        rows.append(tuple(_parse_entry(w, lineno) for w in words))
        row_lines.append(lineno)
    if n is None:
        raise TriangulationParseError("missing 'tets <n>' header")
    if len(rows) != n:
        raise TriangulationParseError(f"header declares {n} tetrahedra but {len(rows)} given")
    table = GluingTable(n, tuple(rows))
    for t, row in enumerate(rows):
        for f, g in enumerate(row):
            if g is None:
                continue
            try:
                check_gluing(table, t, f, g)
            except TriangulationError as exc:
                raise TriangulationParseError(str(exc), row_lines[t]) from None
    return table, meridian


def format_table(table: GluingTable, meridian: Optional[int] = None) -> str:
    lines = [f"tets {table.n}"]
    for row in table.gluings:
        lines.append(" ".join(
            "b" if g is None else f"{g.tet}:{g.face}:{''.join(map(str, g.perm))}" for g in row))
    if meridian is not None:
        lines.append(f"meridian {meridian}")
    return "\n".join(lines) + "\n"


def loads(text: str):
    """Parse text into a Triangulation, or a MarkedTriangulation if a meridian is given."""
    table, meridian = parse(text)
    tri = build(table)
    if meridian is None:
        return tri
    return MarkedTriangulation(tri, meridian)


def load(path):
    return loads(Path(path).read_text())


def dumps(obj) -> str:
    if isinstance(obj, MarkedTriangulation):
        return format_table(obj.tri.table, obj.meridian)
    if isinstance(obj, Triangulation):
        return format_table(obj.table)
    return format_table(obj)


def dump(obj, path) -> None:
    Path(path).write_text(dumps(obj))
