"""
Crosscap numbers from fundamental surfaces or from integer programs.

Three routes are offered:

* ``crosscap_hilbert`` enumerates fundamental normal surfaces and compares
  the least non-orientable genus ``g_n`` found among spanning ones with the
  least orientable genus ``g_o``.  By Clark's inequality C <= 2 g_o + 1, so
  the answer is exact when ``g_n <= 2 g_o`` (or ``g_o = 0``) and a pair
  ``{2 g_o, 2 g_o + 1}`` otherwise.
* ``crosscap_ip_exact`` maximises Euler characteristic over spanning
  surfaces with an exact integer program.
* ``crosscap_ip_bounded`` does the same with a small big-M and floating
  point relaxations; its answer is only an upper bound.

Both integer-program routes need an efficient triangulation (no normal
2-sphere) except the bounded one, which never claims optimality.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field
from typing import Optional

from .hilbert import DEFAULT_MAX_CANDIDATES, fundamental_surfaces, has_normal_sphere_obstruction
from .milp import (ABORTED, BOUNDED, EXACT, INFEASIBLE, OPTIMAL, UNBOUNDED, UnsuitableTriangulation,
                   build_ip, solve_exact, solve_float, verify_solution_exact)
from .milp.solve import DEFAULT_NODE_BUDGET
from .normal_coords import edge_weight
from .surface import NormalSurface, is_spanning
from .triangulation import MarkedTriangulation, check_suitable_structure
from .tri_format import dumps

HILBERT = "hilbert"
IP_EXACT = "ip-exact"
IP_BOUNDED = "ip-bounded"
METHODS = (HILBERT, IP_EXACT, IP_BOUNDED)

STRICT = "strict"
REFINED = "refined"
MODES = (STRICT, REFINED)

JSON_SAFE_INT = 2 ** 53


class PipelineError(RuntimeError):
    pass


class EfficiencyError(PipelineError):
    """The triangulation contains a normal 2-sphere."""


class BudgetExhausted(PipelineError):
    pass


class InternalError(PipelineError):
    """A situation the theory rules out, such as no orientable spanning surface."""


@dataclass(frozen=True)
class CrosscapResult:
    kind: str                       # Exact | Pair | UpperBound | Infinity
    values: tuple
    method: str
    mode: str = STRICT
    witness: Optional[tuple] = None
    components: tuple = ()
    details: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.kind == "Pair":
            assert len(self.values) == 2 and self.values[1] == self.values[0] + 1
        elif self.kind in ("Exact", "UpperBound"):
            assert len(self.values) == 1 and self.values[0] >= 0
        elif self.kind == "Infinity":
            assert not self.values
        else:
            raise ValueError(f"unknown result kind {self.kind!r}")

    def __str__(self):
        if self.kind == "Pair":
            return f"Pair({self.values[0]}, {self.values[1]})"
        if self.kind == "Infinity":
            return "Infinity"
        return f"{self.kind}({self.values[0]})"


def _json_int(x):
    return str(x) if abs(x) >= JSON_SAFE_INT else x


def triangulation_hash(m: MarkedTriangulation) -> str:
    return hashlib.sha256(dumps(m).encode()).hexdigest()


def result_document(result: CrosscapResult, m: MarkedTriangulation,
                    seconds: Optional[float] = None) -> dict:
    doc = {
        "method": result.method,
        "mode": result.mode,
        "kind": result.kind,
        "values": [_json_int(v) for v in result.values],
        "witness": None if result.witness is None else [_json_int(x) for x in result.witness],
        "components": [c.to_dict() for c in result.components],
        "details": {k: _json_int(v) if isinstance(v, int) and not isinstance(v, bool) else v
                    for k, v in result.details.items()},
        "triangulation": {"sha256": triangulation_hash(m), "tetrahedra": m.tri.size,
                          "meridian": m.meridian},
    }
    if seconds is not None:
        doc["timing"] = {"seconds": round(seconds, 6)}
    return doc


def result_json(result: CrosscapResult, m: MarkedTriangulation,
                seconds: Optional[float] = None) -> str:
    return json.dumps(result_document(result, m, seconds), indent=2, sort_keys=True) + "\n"


# -- shared rules -------------------------------------------------------------

def _surface_chi(components) -> int:
    return sum(c.euler for c in components)


def _surface_orientable(components) -> bool:
    return all(c.orientable for c in components)


def interpret_surface(components, ip_mode: str = EXACT):
    """(kind, values) from the components of a spanning surface.

    Non-orientable: 1 - chi.  Orientable: the pair {1 - chi, 2 - chi} for the
    exact program, or the single bound 2 - chi for the bounded one.
    """
    if not components or any(c.closed for c in components):
        raise ValueError("surface is not spanning (empty or has closed components)")
    chi = _surface_chi(components)
    if not _surface_orientable(components):
        return ("Exact" if ip_mode == EXACT else "UpperBound"), (1 - chi,)
    if ip_mode == EXACT:
        return "Pair", (1 - chi, 2 - chi)
    return "UpperBound", (2 - chi,)


def hilbert_rule(g_n: Optional[int], g_o: int):
    """Output rule comparing the least non-orientable genus with the least orientable one."""
    if g_o == 0:
        return "Exact", (0,)
    if g_n is not None and g_n <= 2 * g_o:
        return "Exact", (g_n,)
    return "Pair", (2 * g_o, 2 * g_o + 1)


def _is_disc(components) -> bool:
    return (len(components) == 1 and components[0].orientable and components[0].euler == 1
            and components[0].boundary == 1)


def _require_suitable(m):
    if not isinstance(m, MarkedTriangulation) or not check_suitable_structure(m):
        raise UnsuitableTriangulation("triangulation is not suitable for crosscap computation")


def _spanning_surface(m: MarkedTriangulation, vector):
    """Drop closed components; return (vector, surface, components)."""
    surface = NormalSurface(m.tri, vector)
    stripped = surface.without_closed_components()
    if edge_weight(m.tri, stripped, m.meridian) != edge_weight(m.tri, vector, m.meridian):
        raise InternalError("removing closed components changed the meridian weight")
    if stripped != surface.vector:
        surface = NormalSurface(m.tri, stripped)
    if not is_spanning(m, stripped, surface):
        raise InternalError("optimal surface is not spanning")
    return stripped, surface, tuple(surface.classify())


# -- algorithms ---------------------------------------------------------------

def crosscap_hilbert(m: MarkedTriangulation, mode: str = STRICT,
                     max_candidates: int = DEFAULT_MAX_CANDIDATES) -> CrosscapResult:
    _require_suitable(m)
    surfaces = fundamental_surfaces(m.tri, max_candidates)
    if has_normal_sphere_obstruction(m.tri, surfaces):
        raise EfficiencyError("triangulation has a normal 2-sphere; it is not efficient")
    best_n, best_o = None, None
    spanning = 0
    for v, S in surfaces:
        if not is_spanning(m, v, S):
            continue
        spanning += 1
        comps = tuple(S.classify())
        if len(comps) != 1:
            raise InternalError("fundamental surface is disconnected")
        g = comps[0].genus
        if comps[0].orientable:
            if best_o is None or g < best_o[0]:
                best_o = (g, v, comps)
        elif best_n is None or g < best_n[0]:
            best_n = (g, v, comps)
    if best_o is None:
        raise InternalError("no orientable spanning surface among fundamental surfaces")
    g_o = best_o[0]
    g_n = None if best_n is None else best_n[0]
    kind, values = hilbert_rule(g_n, g_o)
    wit = best_n if (kind == "Exact" and g_o != 0) else best_o
    details = {"g_o": g_o, "g_n": "inf" if g_n is None else g_n,
               "fundamental": len(surfaces), "spanning": spanning}
    return CrosscapResult(kind, values, HILBERT, mode, wit[1], wit[2], details)


def crosscap_ip_exact(m: MarkedTriangulation, mode: str = STRICT,
                      node_budget: int = DEFAULT_NODE_BUDGET, check_efficiency: bool = True,
                      max_candidates: int = DEFAULT_MAX_CANDIDATES) -> CrosscapResult:
    _require_suitable(m)
    if check_efficiency and has_normal_sphere_obstruction(m.tri, max_candidates=max_candidates):
        raise EfficiencyError("triangulation has a normal 2-sphere; it is not efficient")
    ip = build_ip(m, EXACT)
    out = solve_exact(ip, node_budget, collect_optima=(mode == REFINED))
    if out.status == ABORTED:
        raise BudgetExhausted(f"branch and bound exceeded {node_budget} nodes")
    if out.status != OPTIMAL:
        raise InternalError(f"exact integer program is {out.status}")
    vec, _, comps = _spanning_surface(m, ip.normal_vector(out.solution))
    kind, values = interpret_surface(comps, EXACT)
    details = {"chi": _surface_chi(comps), "orientable": _surface_orientable(comps),
               "nodes": out.nodes, "bigm": ip.bigm}
    if mode == REFINED:
        if kind == "Pair":
            # Another optimum reached by the search may be non-orientable.
            for sol in out.optima:
                v2, _, c2 = _spanning_surface(m, ip.normal_vector(sol))
                if not _surface_orientable(c2):
                    vec, comps = v2, c2
                    kind, values = interpret_surface(comps, EXACT)
                    details["refinement"] = "non-orientable optimum"
                    break
        if kind == "Pair" and _is_disc(comps):
            kind, values = "Exact", (0,)
            details["refinement"] = "spanning disc"
        details["optima_scanned"] = len(out.optima)
    return CrosscapResult(kind, values, IP_EXACT, mode, vec, comps, details)


def crosscap_ip_bounded(m: MarkedTriangulation, mode: str = STRICT,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> CrosscapResult:
    _require_suitable(m)
    ip = build_ip(m, BOUNDED)
    out = solve_float(ip, node_budget)
    if out.status == ABORTED:
        raise BudgetExhausted(f"branch and bound exceeded {node_budget} nodes")
    details = {"nodes": out.nodes, "bigm": ip.bigm, "solver": out.status}
    if out.status in (UNBOUNDED, INFEASIBLE):
        return CrosscapResult("Infinity", (), IP_BOUNDED, mode, details=details)
    if not verify_solution_exact(ip, out.solution):
        details["verified"] = False
        return CrosscapResult("Infinity", (), IP_BOUNDED, mode, details=details)
    details["verified"] = True
    vec, _, comps = _spanning_surface(m, ip.normal_vector(out.solution))
    kind, values = interpret_surface(comps, BOUNDED)
    details["chi"] = _surface_chi(comps)
    details["orientable"] = _surface_orientable(comps)
    if mode == REFINED and _is_disc(comps):
        kind, values = "Exact", (0,)
        details["refinement"] = "spanning disc"
    return CrosscapResult(kind, values, IP_BOUNDED, mode, vec, comps, details)


def run(m: MarkedTriangulation, method: str = HILBERT, mode: str = STRICT,
        node_budget: int = DEFAULT_NODE_BUDGET, max_candidates: int = DEFAULT_MAX_CANDIDATES):
    """Dispatch on ``method``; return ``(result, seconds)``."""
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}")
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    if method == HILBERT:
        res = crosscap_hilbert(m, mode, max_candidates)
    elif method == IP_EXACT:
        res = crosscap_ip_exact(m, mode, node_budget, max_candidates=max_candidates)
    else:
        res = crosscap_ip_bounded(m, mode, node_budget)
    return res, time.perf_counter() - start
