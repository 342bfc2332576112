"""
LP and fixed-form MPS writers, plus readers for the files they produce.

All coefficients are written as exact decimal integers.  Crosscap metadata
(tetrahedra, big-M, mode, objective scale) travels in a comment line so that
a written model reads back as an identical :class:`MipProblem`.

In fixed-form MPS every number has a 12-character field; big-M values of
larger programs do not fit, so each COLUMNS/RHS/BOUNDS line carries a single
entry and the reader splits on whitespace.
"""
from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .model import BINARY, CONTINUOUS, INTEGER, Constraint, MipProblem, Variable, _row

_SENSES = {"=": "=", "<=": "<=", ">=": ">="}


def _int(c) -> int:
    c = Fraction(c)
    if c.denominator != 1:
        raise ValueError(f"non-integer coefficient {c}; scale the model first")
    return c.numerator


def _meta(p: MipProblem) -> str:
    items = [f"name={p.name}", f"scale={p.objective_scale}"]
    if p.n is not None:
        items += [f"n={p.n}", f"bigm={p.bigm}", f"mode={p.mode}"]
    return " ".join(items)


def _parse_meta(words) -> dict:
    kw = {}
    for w in words:
        k, _, v = w.partition("=")
        if k == "name":
            kw["name"] = v
        elif k == "mode":
            kw["mode"] = v
        elif k == "scale":
            kw["objective_scale"] = int(v)
        elif k in ("n", "bigm"):
            kw[k] = int(v)
    return kw


def _expr(p: MipProblem, coeffs, width=72) -> list:
    """Linear expression wrapped over several lines."""
    terms = []
    for k, (j, c) in enumerate(coeffs):
        c = _int(c)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = p.variables[j].name if mag == 1 else f"{mag} {p.variables[j].name}"
        terms.append(("- " if c < 0 else "") + body if k == 0 else f"{sign} {body}")
    if not terms:
        terms = [f"0 {p.variables[0].name}"] if p.variables else ["0"]
    lines, cur = [], ""
    for t in terms:
        if cur and len(cur) + len(t) + 1 > width:
            lines.append(cur)
            cur = "   " + t
        else:
            cur = f"{cur} {t}" if cur else t
    lines.append(cur)
    return lines


def lp_text(p: MipProblem) -> str:
    out = [f"\\ {_meta(p)}", "Maximize"]
    head = _expr(p, p.objective)
    out.append(" obj: " + head[0])
    out.extend(head[1:])
    out.append("Subject To")
    for c in p.constraints:
        lines = _expr(p, c.coeffs)
        lines[-1] += f" {c.sense} {_int(c.rhs)}"
        out.append(f" {c.name}: " + lines[0])
        out.extend(lines[1:])
    out.append("Bounds")
    for v in p.variables:
        lo, hi = v.bounds()
        lo = _int(lo)
        if hi is None:
            out.append(f" {v.name} >= {lo}")
        else:
            out.append(f" {lo} <= {v.name} <= {_int(hi)}")
    gen = [v.name for v in p.variables if v.kind == INTEGER]
    bins = [v.name for v in p.variables if v.kind == BINARY]
    for title, names in (("General", gen), ("Binary", bins)):
        if names:
            out.append(title)
            for k in range(0, len(names), 8):
                out.append(" " + " ".join(names[k:k + 8]))
    out.append("End")
    return "\n".join(out) + "\n"


_TERM = re.compile(r"([+-])?\s*(\d+)?\s*([A-Za-z_][\w.]*)")


def _parse_expr(text, index):
    coeffs = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m:
            raise ValueError(f"cannot parse LP expression near {text[pos:pos + 20]!r}")
        sign, num, name = m.groups()
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        j = index(name)
        coeffs[j] = coeffs.get(j, 0) + c
        pos = m.end()
        while pos < len(text) and text[pos] == " ":
            pos += 1
    return coeffs


def parse_lp(text: str) -> MipProblem:
    """Read an LP file of the shape written by :func:`lp_text`."""
    meta, section, stmts = {}, None, {"obj": [], "cons": [], "bounds": [], "gen": [], "bin": []}
    heads = {"maximize": "obj", "maximise": "obj", "subject to": "cons", "bounds": "bounds",
             "general": "gen", "generals": "gen", "binary": "bin", "binaries": "bin", "end": None}
    for raw in text.splitlines():
        line = raw.strip()
        if line.startswith("\\"):
            meta.update(_parse_meta(line[1:].split()))
            continue
        if not line:
            continue
        if line.lower() in heads:
            section = heads[line.lower()]
            continue
        if section in ("obj", "cons"):
            if re.match(r"^[A-Za-z_][\w.]*:", line):
                stmts[section].append(line)
            else:
                stmts[section][-1] += " " + line
        elif section is not None:
            stmts[section].append(line)

    names = []
    for line in stmts["bounds"]:
        toks = line.split()
        names.append(toks[0] if toks[1] == ">=" else toks[2])
    pos = {nm: j for j, nm in enumerate(names)}
    gen = {w for line in stmts["gen"] for w in line.split()}
    bins = {w for line in stmts["bin"] for w in line.split()}
    variables = []
    for line in stmts["bounds"]:
        toks = line.split()
        if toks[1] == ">=":
            nm, lo, hi = toks[0], Fraction(toks[2]), None
        else:
            nm, lo, hi = toks[2], Fraction(toks[0]), Fraction(toks[4])
        if nm in bins:
            variables.append(Variable(nm, BINARY))
        else:
            variables.append(Variable(nm, INTEGER if nm in gen else CONTINUOUS, lo, hi))
    objective = {}
    for line in stmts["obj"]:
        objective = _parse_expr(line.split(":", 1)[1], pos.__getitem__)
    cons = []
    for line in stmts["cons"]:
        name, body = line.split(":", 1)
        m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+)\s*$", body)
        cons.append(Constraint(name.strip(), _row(_parse_expr(m.group(1), pos.__getitem__).items()),
                               _SENSES[m.group(2)], Fraction(int(m.group(3)))))
    return MipProblem(tuple(variables), tuple(cons), _row(objective.items()), **meta)


def _field(s, width=8):
    if len(s) > width:
        raise ValueError(f"name {s!r} longer than {width} characters for fixed MPS")
    return s.ljust(width)


def _entry(name, row, value) -> str:
    return f"    {_field(name)}  {_field(row)}  {value:>12}"


def mps_text(p: MipProblem) -> str:
    out = [f"* {_meta(p)}", f"NAME          {p.name}", "OBJSENSE", "    MAX", "ROWS", " N  obj"]
    kind = {"=": "E", "<=": "L", ">=": "G"}
    for c in p.constraints:
        out.append(f" {kind[c.sense]}  {c.name}")
    cols = [[] for _ in p.variables]
    for j, c in p.objective:
        cols[j].append(("obj", _int(c)))
    for con in p.constraints:
        for j, c in con.coeffs:
            cols[j].append((con.name, _int(c)))
    out.append("COLUMNS")
    in_int = False
    for j, v in enumerate(p.variables):
        want = v.kind != CONTINUOUS
        if want != in_int:
            tag = "'INTORG'" if want else "'INTEND'"
            out.append(f"    MARKER                 'MARKER'                 {tag}")
            in_int = want
        entries = cols[j] or [("obj", 0)]
        for row, c in entries:
            out.append(_entry(v.name, row, c))
    if in_int:
        out.append("    MARKER                 'MARKER'                 'INTEND'")
    out.append("RHS")
    for con in p.constraints:
        if con.rhs:
            out.append(_entry("RHS", con.name, _int(con.rhs)))
    out.append("BOUNDS")
    for v in p.variables:
        if v.kind == BINARY:
            out.append(f" BV BND       {_field(v.name).rstrip()}")
            continue
        lo, hi = v.bounds()
        if lo:
            out.append(f" LO BND       {_field(v.name)}  {_int(lo):>12}")
        if hi is None:
            out.append(f" PL BND       {_field(v.name).rstrip()}")
        else:
            out.append(f" UP BND       {_field(v.name)}  {_int(hi):>12}")
    out.append("ENDATA")
    return "\n".join(out) + "\n"


def parse_mps(text: str) -> MipProblem:
    """Read a fixed-form MPS file of the shape written by :func:`mps_text`."""
    meta, section = {}, None
    rows, order = {}, []
    names, kinds, coeffs = [], {}, {}
    rhs, bounds = {}, {}
    in_int = False
    sense = {"E": "=", "L": "<=", "G": ">="}
    for raw in text.splitlines():
        if raw.startswith("*"):
            meta.update(_parse_meta(raw[1:].split()))
            continue
        if not raw.strip():
            continue
        if not raw.startswith(" "):
            section = raw.split()[0]
            if section == "NAME" and len(raw.split()) > 1:
                meta.setdefault("name", raw.split()[1])
            continue
        toks = raw.split()
        if section == "ROWS":
            if toks[0] != "N":
                rows[toks[1]] = sense[toks[0]]
                order.append(toks[1])
        elif section == "COLUMNS":
            if len(toks) >= 3 and toks[1] == "'MARKER'":
                in_int = toks[2] == "'INTORG'"
                continue
            for k in range(1, len(toks) - 1, 2):
                col = toks[0]
                if col not in kinds:
                    names.append(col)
                    kinds[col] = INTEGER if in_int else CONTINUOUS
                coeffs[(col, toks[k])] = int(toks[k + 1])
        elif section == "RHS":
            for k in range(1, len(toks) - 1, 2):
                rhs[toks[k]] = int(toks[k + 1])
        elif section == "BOUNDS":
            bounds.setdefault(toks[2], []).append((toks[0], int(toks[3]) if len(toks) > 3 else None))
    pos = {nm: j for j, nm in enumerate(names)}
    variables = []
    for nm in names:
        lo, hi, kind = Fraction(0), None, kinds[nm]
        for typ, val in bounds.get(nm, []):
            if typ == "BV":
                kind = BINARY
            elif typ == "LO":
                lo = Fraction(val)
            elif typ == "UP":
                hi = Fraction(val)
        variables.append(Variable(nm, kind) if kind == BINARY else Variable(nm, kind, lo, hi))
    objective = _row((pos[c], v) for (c, r), v in coeffs.items() if r == "obj")
    cons = tuple(Constraint(r, _row((pos[c], v) for (c, rr), v in coeffs.items() if rr == r),
                            rows[r], Fraction(rhs.get(r, 0))) for r in order)
    return MipProblem(tuple(variables), cons, objective, **meta)


def export_lp(p: MipProblem, sink) -> None:
    _write(lp_text(p), sink)


def export_mps(p: MipProblem, sink) -> None:
    _write(mps_text(p), sink)


def _write(text, sink):
    if hasattr(sink, "write"):
        sink.write(text)
    else:
        Path(sink).write_text(text)
