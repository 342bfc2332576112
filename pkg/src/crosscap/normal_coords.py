"""
Standard triangle-quadrilateral coordinates and the linear constraints on them.

Coordinates come in blocks of seven per tetrahedron::

    t0 t1 t2 t3 q0 q1 q2

Triangle type ``j`` cuts off vertex ``j``.  Quadrilateral type ``k``
separates the vertex pair {0, k+1} from the complementary pair, so ``q0`` is
01|23, ``q1`` is 02|13 and ``q2`` is 03|12.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .triangulation import (EDGES, MarkedTriangulation, Triangulation, edge_index, face_vertices,
                            is_suitable_structure)

QUAD_PAIRS = (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2)))


def tri_col(t: int, v: int) -> int:
    return 7 * t + v


def quad_col(t: int, k: int) -> int:
    return 7 * t + 4 + k


_SEPARATING = {frozenset(side): k for k, pair in enumerate(QUAD_PAIRS) for side in pair}


def quad_separating(a: int, b: int) -> int:
    """Quad type whose two sides are {a, b} and its complement."""
    return _SEPARATING[frozenset((a, b))]


def quads_meeting_edge(a: int, b: int) -> tuple:
    """The two quad types that cut tetrahedron edge {a, b}."""
    sep = quad_separating(a, b)
    return tuple(k for k in range(3) if k != sep)


def discs_meeting_edge(t: int, e: int) -> tuple:
    """Columns of the four disc types of tetrahedron ``t`` that cut its edge ``e``."""
    a, b = EDGES[e]
    return (tri_col(t, a), tri_col(t, b)) + tuple(quad_col(t, k) for k in quads_meeting_edge(a, b))


def arc_discs(t: int, f: int, v: int) -> tuple:
    """(triangle column, quad column) of the disc types in ``t`` that produce the
    normal arc around corner ``v`` of face ``f``."""
    return tri_col(t, v), quad_col(t, quad_separating(v, f))


def matching_equations(tri: Triangulation) -> list:
    """Rows of the matching equations, three per internal face class."""
    n = tri.size
    rows = []
    for (t, f), g in tri.internal_faces:
        for v in face_vertices(f):
            row = [0] * (7 * n)
            for c in arc_discs(t, f, v):
                row[c] += 1
            for c in arc_discs(g.tet, g.face, g.perm[v]):
                row[c] -= 1
            rows.append(row)
    return rows


def euler_functional(tri: Triangulation) -> list:
    """Exact rational coefficients c with c . v the Euler characteristic of v.

    Each disc contributes one face, one per edge lying in a boundary face and
    a half per edge lying in an internal face, and 1/d per corner on an edge
    of degree d.
    """
    n = tri.size
    row = [Fraction(0)] * (7 * n)
    for t in range(n):
        def half_or_one(f):
            return Fraction(1) if tri.is_boundary_face(t, f) else Fraction(1, 2)

        def corner(a, b):
            return Fraction(1, tri.edge_degree(t, edge_index(a, b)))

        for v in range(4):
            others = [w for w in range(4) if w != v]
            verts = sum(corner(v, w) for w in others)
            edges = sum(half_or_one(f) for f in others)
            row[tri_col(t, v)] = verts - edges + 1
        for k, (p, q) in enumerate(QUAD_PAIRS):
            verts = sum(corner(a, b) for a in p for b in q)
            edges = sum(half_or_one(f) for f in range(4))
            row[quad_col(t, k)] = verts - edges + 1
    return row


def scaled_euler_functional(tri: Triangulation):
    """Integer row and positive scale ``L`` with row == L * euler_functional(tri)."""
    chi = euler_functional(tri)
    scale = lcm(1, *(c.denominator for c in chi))
    return [int(c * scale) for c in chi], scale


def meridian_instance(m: MarkedTriangulation) -> tuple:
    """The lowest-index tetrahedron edge ``(t, e)`` in the meridian's class."""
    inst = m.tri.skeleton.edge_classes[m.meridian].instances
    if not inst:
        raise RuntimeError("meridian edge class has no tetrahedron edges")
    t, e, _ = min(inst)
    return t, e


def spanning_equation(m: MarkedTriangulation) -> list:
    """Row selecting the four disc types in one tetrahedron that cut the meridian."""
    if not is_suitable_structure(m.tri, m.meridian):
        raise ValueError("triangulation is not suitable for the spanning equation")
    t, e = meridian_instance(m)
    row = [0] * (7 * m.tri.size)
    for c in discs_meeting_edge(t, e):
        row[c] = 1
    return row


def edge_weight(tri: Triangulation, v: Sequence[int], edge: int) -> int:
    """Number of times the surface ``v`` cuts edge class ``edge``."""
    t, e, _ = tri.skeleton.edge_classes[edge].instances[0]
    return sum(v[c] for c in discs_meeting_edge(t, e))


def edge_weight_at(v: Sequence[int], t: int, e: int) -> int:
    return sum(v[c] for c in discs_meeting_edge(t, e))


def quad_groups(n: int) -> list:
    return [tuple(quad_col(t, k) for k in range(3)) for t in range(n)]


def satisfies_quad_constraints(v: Sequence[int], n: int) -> bool:
    return all(sum(1 for c in g if v[c]) <= 1 for g in quad_groups(n))


def is_admissible(tri: Triangulation, v: Sequence[int]) -> bool:
    n = tri.size
    if len(v) != 7 * n:
        raise ValueError(f"vector has length {len(v)}, expected {7 * n}")
    if any(int(x) != x or x < 0 for x in v):
        return False
    for row in matching_equations(tri):
        if sum(a * x for a, x in zip(row, v) if a):
            return False
    return satisfies_quad_constraints(v, n)


def evaluate(row: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * x for a, x in zip(row, v) if a), Fraction(0))


@dataclass(frozen=True)
class ConstraintSystem:
    matching: tuple
    spanning: tuple
    chi: tuple
    quad_groups: tuple

    @classmethod
    def of(cls, m: MarkedTriangulation) -> "ConstraintSystem":
        tri = m.tri
        return cls(tuple(tuple(r) for r in matching_equations(tri)),
                   tuple(spanning_equation(m)),
                   tuple(euler_functional(tri)),
                   tuple(quad_groups(tri.size)))

    def to_json(self) -> str:
        return json.dumps({
            "matching": [[str(a) for a in r] for r in self.matching],
            "spanning": [str(a) for a in self.spanning],
            "chi": [str(a) for a in self.chi],
            "quadGroups": [list(g) for g in self.quad_groups],
        })

    @classmethod
    def from_json(cls, text: str) -> "ConstraintSystem":
        d = json.loads(text)
        return cls(tuple(tuple(int(a) for a in r) for r in d["matching"]),
                   tuple(int(a) for a in d["spanning"]),
                   tuple(Fraction(a) for a in d["chi"]),
                   tuple(tuple(g) for g in d["quadGroups"]))
