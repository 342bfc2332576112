"""Command-line front end.

Exit codes: 0 success, 1 internal error, 2 parse error, 3 unsuitable input
(no meridian, unsuitable or inefficient triangulation), 4 budget exhausted,
5 I/O error.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .hilbert import DEFAULT_MAX_CANDIDATES, EnumerationAborted
from .milp import BOUNDED, EXACT, UnsuitableTriangulation, build_ip
from .milp.export import lp_text, mps_text
from .milp.solve import DEFAULT_NODE_BUDGET
from .pipeline import (METHODS, MODES, BudgetExhausted, EfficiencyError, result_document, run)
from .triangulation import MarkedTriangulation, TriangulationError, build, is_suitable_structure
from .tri_format import TriangulationParseError, parse

EXIT_OK, EXIT_INTERNAL, EXIT_PARSE, EXIT_UNSUITABLE, EXIT_BUDGET, EXIT_IO = 0, 1, 2, 3, 4, 5


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    command: str
    inputs: tuple
    method: str = "hilbert"
    mode: str = "strict"
    node_budget: int = DEFAULT_NODE_BUDGET
    max_candidates: int = DEFAULT_MAX_CANDIDATES
    output: Optional[str] = None
    export_format: str = "lp"
    bigm: str = "exact"
    timing: bool = True
    jobs: int = 1
    as_json: bool = False

    def validate(self):
        if self.method not in METHODS:
            raise CliError(f"unknown method {self.method}", EXIT_PARSE)
        if self.mode not in MODES:
            raise CliError(f"unknown mode {self.mode}", EXIT_PARSE)
        if self.command != "crosscap" and len(self.inputs) != 1:
            raise CliError(f"{self.command} takes exactly one input file", EXIT_PARSE)
        if self.node_budget < 1 or self.max_candidates < 1 or self.jobs < 1:
            raise CliError("budgets and --jobs must be positive", EXIT_PARSE)


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}", EXIT_IO) from None


def _load(path):
    """(Triangulation, meridian or None) from a file, mapping failures to exit codes."""
    try:
        table, meridian = parse(_read(path))
        return build(table), meridian
    except TriangulationParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None
    except TriangulationError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from None


def _marked(path) -> MarkedTriangulation:
    tri, meridian = _load(path)
    if meridian is None:
        raise CliError(f"{path}: no meridian line", EXIT_UNSUITABLE)
    try:
        m = MarkedTriangulation(tri, meridian)
    except TriangulationError as exc:
        raise CliError(f"{path}: {exc}", EXIT_UNSUITABLE) from None
    if not is_suitable_structure(tri, meridian):
        raise CliError(f"{path}: triangulation is not suitable", EXIT_UNSUITABLE)
    return m


def _emit(text, output):
    if output is None:
        sys.stdout.write(text)
        return
    try:
        with open(output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"{output}: {exc.strerror}", EXIT_IO) from None


def cmd_skeleton(cfg: RunConfig) -> int:
    tri, meridian = _load(cfg.inputs[0])
    s = tri.summary()
    suitable = meridian is not None and meridian < s["edges"] and is_suitable_structure(tri, meridian)
    if cfg.as_json:
        s["meridian"] = meridian
        s["suitable"] = suitable
        _emit(json.dumps(s, indent=2, sort_keys=True) + "\n", cfg.output)
    else:
        _emit(f"vertices={s['vertices']} edges={s['edges']} faces={s['faces']} "
              f"boundaryFaces={s['boundaryFaces']} suitable={str(suitable).lower()}\n", cfg.output)
    return EXIT_OK


def _crosscap_one(args):
    path, cfg = args
    try:
        m = _marked(path)
        res, seconds = run(m, cfg.method, cfg.mode, cfg.node_budget, cfg.max_candidates)
        doc = result_document(res, m, seconds if cfg.timing else None)
        doc["input"] = path
        return doc, EXIT_OK
    except CliError as exc:
        return {"input": path, "error": str(exc)}, exc.code
    except (UnsuitableTriangulation, EfficiencyError) as exc:
        return {"input": path, "error": str(exc)}, EXIT_UNSUITABLE
    except (BudgetExhausted, EnumerationAborted) as exc:
        return {"input": path, "error": str(exc)}, EXIT_BUDGET


def cmd_crosscap(cfg: RunConfig) -> int:
    work = [(p, cfg) for p in cfg.inputs]
    if cfg.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_crosscap_one, work))
    else:
        results = [_crosscap_one(w) for w in work]
    for doc, code in results:
        if code:
            print(f"error: {doc['error']}", file=sys.stderr)
    docs = [d for d, _ in results]
    payload = docs[0] if len(docs) == 1 else docs
    if len(docs) > 1 or not results[0][1]:
        _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", cfg.output)
    return max(code for _, code in results)


def cmd_export(cfg: RunConfig) -> int:
    m = _marked(cfg.inputs[0])
    p = build_ip(m, EXACT if cfg.bigm == "exact" else BOUNDED)
    text = lp_text(p) if cfg.export_format == "lp" else mps_text(p)
    _emit(text, cfg.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="crosscap", description="Crosscap numbers of knots "
                                 "from triangulated knot complements.")
    sub = ap.add_subparsers(dest="command", required=True)

    sk = sub.add_parser("skeleton", help="summarise the skeleton of a triangulation")
    sk.add_argument("input")
    sk.add_argument("--json", action="store_true", dest="as_json")
    sk.add_argument("--output", "-o")

    cc = sub.add_parser("crosscap", help="compute a crosscap result as JSON")
    cc.add_argument("inputs", nargs="+")
    cc.add_argument("--method", choices=METHODS, default="hilbert")
    cc.add_argument("--mode", choices=MODES, default="strict")
    cc.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    cc.add_argument("--max-candidates", type=int, default=DEFAULT_MAX_CANDIDATES)
    cc.add_argument("--output", "-o")
    cc.add_argument("--jobs", type=int, default=1)
    cc.add_argument("--no-timing", action="store_false", dest="timing")

    ex = sub.add_parser("export", help="write the integer program as LP or MPS")
    ex.add_argument("input")
    ex.add_argument("--bigm", choices=("exact", "10000"), default="exact")
    ex.add_argument("--format", choices=("lp", "mps"), default="lp", dest="export_format")
    ex.add_argument("--output", "-o")
    return ap


def config_from_args(ns) -> RunConfig:
    d = vars(ns).copy()
    cmd = d.pop("command")
    inputs = tuple(d.pop("inputs", None) or (d.pop("input"),))
    d.pop("input", None)
    return RunConfig(cmd, inputs, **d)


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = config_from_args(ns)
    try:
        cfg.validate()
        handler = {"skeleton": cmd_skeleton, "crosscap": cmd_crosscap, "export": cmd_export}
        return handler[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except Exception as exc:  # noqa: BLE001 - report and map to the internal code
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
