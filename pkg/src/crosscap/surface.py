"""
Rebuilding a normal surface from its coordinates and reading off its topology.

Parallel discs are stacked by distance from the tetrahedron vertices.  Along
a tetrahedron edge {a, b} (a < b) the cut points are numbered from ``a``:
first the triangles at ``a`` (copy 0 nearest ``a``), then the quadrilaterals
cutting the edge, then the triangles at ``b`` (copy 0 nearest ``b``).
Quadrilateral copies are numbered from the side of the quad containing
vertex 0.  On a face, the normal arcs around a corner ``v`` are numbered by
distance from ``v``; arc ``i`` ends at cut point ``i`` (counted from ``v``)
on both face edges through ``v``.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .normal_coords import (QUAD_PAIRS, edge_weight, is_admissible, quad_col, quad_separating,
                            quads_meeting_edge, tri_col)
from .triangulation import (EDGES, MarkedTriangulation, Triangulation, _UnionFind, edge_index,
                            face_vertices)


class NotAdmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class ComponentSummary:
    closed: bool
    orientable: bool
    euler: int
    boundary: int
    genus: int
    discs: int

    def to_dict(self) -> dict:
        return asdict(self)


def _quad_side_of(k: int, v: int) -> bool:
    """True if vertex ``v`` lies on the vertex-0 side of quad type ``k``."""
    return v in QUAD_PAIRS[k][0]


def _disc_cycle(dtype: int):
    """Reference cyclic order of a disc type's corners, as tetrahedron vertex pairs."""
    if dtype < 4:
        a, b, c = (w for w in range(4) if w != dtype)
        return [(dtype, a), (dtype, b), (dtype, c)]
    (p1, p2), (p3, p4) = QUAD_PAIRS[dtype - 4]
    return [(p1, p3), (p1, p4), (p2, p4), (p2, p3)]


def _arc_directions(dtype: int):
    """For each arc of a disc type, keyed by (face, corner), the direction (+1/-1)
    the reference cycle runs along it, where +1 means from the edge towards the
    lower-numbered other face vertex to the edge towards the higher one."""
    cycle = _disc_cycle(dtype)
    out = {}
    for i in range(len(cycle)):
        e1, e2 = cycle[i], cycle[(i + 1) % len(cycle)]
        v = (set(e1) & set(e2)).pop()
        w1 = e1[0] if e1[1] == v else e1[1]
        w2 = e2[0] if e2[1] == v else e2[1]
        f = ({0, 1, 2, 3} - {v, w1, w2}).pop()
        out[(f, v)] = 1 if w1 < w2 else -1
    return out


_DIRECTIONS = [_arc_directions(d) for d in range(7)]


class NormalSurface:
    """The disc complex of an admissible normal coordinate vector."""

    def __init__(self, tri: Triangulation, vector: Sequence[int]):
        if not is_admissible(tri, vector):
            raise NotAdmissibleError("vector is not an admissible normal surface")
        self.tri = tri
        self.vector = tuple(int(x) for x in vector)
        self._build()

    # -- construction -------------------------------------------------------

    def _quad(self, t):
        """(quad type, count) of the non-zero quad in tetrahedron t, or (None, 0)."""
        for k in range(3):
            c = self.vector[quad_col(t, k)]
            if c:
                return k, c
        return None, 0

    def _edge_points(self, t, e):
        a, b = EDGES[e]
        k, c = self._quad(t)
        qc = c if k is not None and k in quads_meeting_edge(a, b) else 0
        return self.vector[tri_col(t, a)] + qc + self.vector[tri_col(t, b)]

    def _arc_count(self, t, f, v):
        k, c = self._quad(t)
        qc = c if k is not None and k == quad_separating(v, f) else 0
        return self.vector[tri_col(t, v)] + qc

    def _arc_disc(self, t, f, v, i):
        """Disc id owning arc number ``i`` around corner ``v`` of face ``f`` of ``t``."""
        nt = self.vector[tri_col(t, v)]
        if i < nt:
            return self.disc_id[(t, v, i)]
        k, c = self._quad(t)
        j = i - nt
        copy = j if _quad_side_of(k, v) else c - 1 - j
        return self.disc_id[(t, 4 + k, copy)]

    def _point(self, t, v, w, i):
        """Flat id of the i-th cut point from ``v`` on tetrahedron edge {v, w}."""
        e = edge_index(v, w)
        return self.point_base[(t, e)] + (i if v < w else self.point_count[(t, e)] - 1 - i)

    def _build(self):
        tri, vec = self.tri, self.vector
        n = tri.size
        self.discs = []
        self.disc_id = {}
        for t in range(n):
            for d in range(7):
                for copy in range(vec[7 * t + d]):
                    self.disc_id[(t, d, copy)] = len(self.discs)
                    self.discs.append((t, d, copy))

        self.point_base, self.point_count = {}, {}
        total = 0
        for t in range(n):
            for e in range(6):
                self.point_base[(t, e)] = total
                self.point_count[(t, e)] = self._edge_points(t, e)
                total += self.point_count[(t, e)]
        self.num_points = total

        # arcs: (t, f, v, i) -> (disc, endpoint on lower edge, endpoint on higher edge)
        self.arcs = []
        self.arc_index = {}
        for t in range(n):
            for f in range(4):
                for v in face_vertices(f):
                    w, x = (u for u in face_vertices(f) if u != v)
                    for i in range(self._arc_count(t, f, v)):
                        self.arc_index[(t, f, v, i)] = len(self.arcs)
                        self.arcs.append((self._arc_disc(t, f, v, i),
                                          self._point(t, v, w, i), self._point(t, v, x, i)))

        # Pair arcs across internal faces; identify cut points likewise.
        self.arc_partner = [None] * len(self.arcs)
        self.arc_flip = [1] * len(self.arcs)
        points = _UnionFind(self.num_points)
        for (t, f), g in tri.internal_faces:
            for v in face_vertices(f):
                w, x = (u for u in face_vertices(f) if u != v)
                s = 1 if g.perm[w] < g.perm[x] else -1
                for i in range(self._arc_count(t, f, v)):
                    a = self.arc_index[(t, f, v, i)]
                    b = self.arc_index[(g.tet, g.face, g.perm[v], i)]
                    self.arc_partner[a], self.arc_partner[b] = b, a
                    self.arc_flip[a] = self.arc_flip[b] = s
            fv = face_vertices(f)
            for a_, b_ in ((fv[0], fv[1]), (fv[0], fv[2]), (fv[1], fv[2])):
                for i in range(self.point_count[(t, edge_index(a_, b_))]):
                    points.union(self._point(t, a_, b_, i),
                                 self._point(g.tet, g.perm[a_], g.perm[b_], i))
        self.point_class = [points.find(p) for p in range(self.num_points)]

        comp = _UnionFind(len(self.discs))
        for a, b in enumerate(self.arc_partner):
            if b is not None:
                comp.union(self.arcs[a][0], self.arcs[b][0])
        roots = {}
        self.component_of = []
        for d in range(len(self.discs)):
            r = comp.find(d)
            roots.setdefault(r, len(roots))
            self.component_of.append(roots[r])
        self.num_components = len(roots)

        self.disc_arcs = defaultdict(list)
        for a, (d, _, _) in enumerate(self.arcs):
            self.disc_arcs[d].append(a)

    # -- topology -----------------------------------------------------------

    def _arc_direction(self, a):
        t, f, v, _ = self._arc_key(a)
        d = self.discs[self.arcs[a][0]][1]
        return _DIRECTIONS[d][(f, v)]

    def _arc_key(self, a):
        if not hasattr(self, "_arc_keys"):
            self._arc_keys = {i: k for k, i in self.arc_index.items()}
        return self._arc_keys[a]

    def component_orientable(self, c: int, seed: Optional[int] = None) -> bool:
        """Propagate disc orientations through component ``c``, starting from the
        ``seed``-th disc of the component (default the first)."""
        members = [d for d, k in enumerate(self.component_of) if k == c]
        start = members[0 if seed is None else seed % len(members)]
        orient = {start: 1}
        queue = deque([start])
        while queue:
            d = queue.popleft()
            for a in self.disc_arcs[d]:
                b = self.arc_partner[a]
                if b is None:
                    continue
                other = self.arcs[b][0]
                # Glued edges must be traversed in opposite directions.
                want = -orient[d] * self._arc_direction(a) * self.arc_flip[a] * self._arc_direction(b)
                if other not in orient:
                    orient[other] = want
                    queue.append(other)
                elif orient[other] != want:
                    return False
        return True

    def classify(self) -> list:
        """Per-component summaries, ordered by each component's first disc."""
        out = []
        for c in range(self.num_components):
            discs = [d for d, k in enumerate(self.component_of) if k == c]
            arcs = [a for d in discs for a in self.disc_arcs[d]]
            bd = [a for a in arcs if self.arc_partner[a] is None]
            edges = len(bd) + (len(arcs) - len(bd)) // 2
            verts = {self.point_class[p] for a in arcs for p in self.arcs[a][1:]}
            euler = len(verts) - edges + len(discs)
            curves = _UnionFind(self.num_points)
            for a in bd:
                curves.union(self.point_class[self.arcs[a][1]], self.point_class[self.arcs[a][2]])
            boundary = len({curves.find(self.point_class[self.arcs[a][1]]) for a in bd})
            orientable = self.component_orientable(c)
            if orientable:
                twice = 2 - euler - boundary
                if twice % 2:
                    raise RuntimeError("orientable component with odd 2 - chi - b")
                genus = twice // 2
            else:
                genus = 2 - euler - boundary
            out.append(ComponentSummary(boundary == 0, orientable, euler, boundary, genus,
                                        len(discs)))
        return out

    def component_vector(self, c: int) -> tuple:
        out = [0] * len(self.vector)
        for d, k in enumerate(self.component_of):
            if k == c:
                t, dtype, _ = self.discs[d]
                out[7 * t + dtype] += 1
        return tuple(out)

    def euler_char(self) -> int:
        return sum(s.euler for s in self.classify())

    def without_closed_components(self) -> tuple:
        """Coordinates of the surface with every closed component deleted."""
        out = [0] * len(self.vector)
        for c, summary in enumerate(self.classify()):
            if not summary.closed:
                for i, x in enumerate(self.component_vector(c)):
                    out[i] += x
        return tuple(out)


def reconstruct(tri: Triangulation, v: Sequence[int]) -> NormalSurface:
    return NormalSurface(tri, v)


def classify(surface: NormalSurface) -> list:
    return surface.classify()


def is_spanning(m: MarkedTriangulation, v: Sequence[int], surface: Optional[NormalSurface] = None) -> bool:
    """No closed components and exactly one point on the meridian edge."""
    if edge_weight(m.tri, v, m.meridian) != 1:
        return False
    surface = surface or NormalSurface(m.tri, v)
    return not any(s.closed for s in surface.classify())


def summaries_to_json(summaries) -> str:
    return json.dumps([s.to_dict() for s in summaries])
