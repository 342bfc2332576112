"""
Generalised 3-manifold triangulations built from face gluings.

Tetrahedron vertices are labelled 0..3 and face ``f`` is the face opposite
vertex ``f``.  A gluing of face ``f`` of tetrahedron ``t`` onto face ``f2`` of
tetrahedron ``t2`` is described by a permutation ``perm`` of {0,1,2,3}
(stored as the tuple of images) with ``perm[f] == f2``; vertex ``v`` of the
face is identified with vertex ``perm[v]`` of the partner face.

Edges of a tetrahedron are numbered in the order of :data:`EDGES`.  Vertex,
edge and face classes are numbered by first appearance when scanning
tetrahedra in order and, within a tetrahedron, sub-simplices in order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

EDGES = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
EDGE_INDEX = {e: i for i, e in enumerate(EDGES)}
IDENTITY = (0, 1, 2, 3)


class TriangulationError(ValueError):
    """Raised for malformed gluing tables or violated preconditions."""


def edge_index(a: int, b: int) -> int:
    return EDGE_INDEX[(a, b) if a < b else (b, a)]


def face_vertices(f: int) -> tuple:
    """The three vertices of face ``f`` in increasing order."""
    return tuple(v for v in range(4) if v != f)


def perm_inverse(p: Sequence[int]) -> tuple:
    inv = [0] * 4
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def perm_sign(p: Sequence[int]) -> int:
    sign = 1
    for i in range(4):
        for j in range(i + 1, 4):
            if p[i] > p[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class Gluing:
    tet: int
    face: int
    perm: tuple


@dataclass(frozen=True)
class GluingTable:
    """Face pairings of ``n`` tetrahedra; ``gluings[t][f]`` is a Gluing or None."""

    n: int
    gluings: tuple

    @classmethod
    def from_lists(cls, rows) -> "GluingTable":
        """Build from nested lists of ``None`` or ``(tet, face, perm)`` triples."""
        out = []
        for row in rows:
            if len(row) != 4:
                raise TriangulationError("every tetrahedron needs four face entries")
            out.append(tuple(None if g is None else Gluing(int(g[0]), int(g[1]), tuple(g[2]))
                             for g in row))
        table = cls(len(out), tuple(out))
        table.validate()
        return table

    def validate(self) -> None:
        if len(self.gluings) != self.n:
            raise TriangulationError(f"expected {self.n} tetrahedra, got {len(self.gluings)}")
        for t, row in enumerate(self.gluings):
            for f, g in enumerate(row):
                if g is None:
                    continue
                check_gluing(self, t, f, g)

    def to_lists(self):
        return [[None if g is None else (g.tet, g.face, g.perm) for g in row]
                for row in self.gluings]


def check_gluing(table: GluingTable, t: int, f: int, g: Gluing) -> None:
    if sorted(g.perm) != [0, 1, 2, 3]:
        raise TriangulationError(f"tetrahedron {t} face {f}: {g.perm} is not a permutation")
    if not 0 <= g.tet < table.n or not 0 <= g.face < 4:
        raise TriangulationError(f"tetrahedron {t} face {f}: partner out of range")
    if g.perm[f] != g.face:
        raise TriangulationError(
            f"tetrahedron {t} face {f}: permutation does not carry face {f} onto face {g.face}")
    if (g.tet, g.face) == (t, f):
        raise TriangulationError(f"tetrahedron {t} face {f} is glued to itself")
    back = table.gluings[g.tet][g.face]
    if back is None or (back.tet, back.face) != (t, f) or back.perm != perm_inverse(g.perm):
        raise TriangulationError(f"tetrahedron {t} face {f}: gluing is not involutive")


class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # Keep the smaller index as root so numbering follows first appearance.
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _number_classes(uf: _UnionFind, size: int):
    """Return (class of each instance, list of instance lists) numbered by first appearance."""
    index = {}
    of = [0] * size
    members = []
    for i in range(size):
        r = uf.find(i)
        if r not in index:
            index[r] = len(members)
            members.append([])
        of[i] = index[r]
        members[index[r]].append(i)
    return of, members


@dataclass(frozen=True)
class EdgeClass:
    index: int
    # (tet, edge number, sign): sign +1 if the instance's (low, high) vertex
    # order agrees with the class orientation of its first instance.
    instances: tuple
    boundary: bool

    @property
    def degree(self) -> int:
        return len(self.instances)


@dataclass(frozen=True)
class BoundaryComponent:
    faces: tuple          # (tet, face) pairs
    vertices: tuple       # vertex class indices
    edges: tuple          # edge class indices

    @property
    def euler_char(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)


@dataclass(frozen=True)
class Skeleton:
    vertex_of: tuple      # vertex_of[t][v]
    vertex_classes: tuple  # tuple of tuples of (tet, vertex)
    vertex_boundary: tuple
    edge_of: tuple        # edge_of[t][e]
    edge_classes: tuple   # EdgeClass
    face_of: tuple        # face_of[t][f]
    face_classes: tuple   # tuple of tuples of (tet, face)
    orientable: bool
    valid: bool           # False if some edge is identified with itself in reverse


@dataclass(frozen=True)
class Triangulation:
    table: GluingTable
    skeleton: Skeleton
    boundary_components: tuple = field(default=())

    @property
    def size(self) -> int:
        return self.table.n

    def gluing(self, t: int, f: int) -> Optional[Gluing]:
        return self.table.gluings[t][f]

    def is_boundary_face(self, t: int, f: int) -> bool:
        return self.table.gluings[t][f] is None

    def edge_class(self, t: int, e: int) -> EdgeClass:
        return self.skeleton.edge_classes[self.skeleton.edge_of[t][e]]

    def edge_degree(self, t: int, e: int) -> int:
        return self.edge_class(t, e).degree

    @property
    def internal_faces(self):
        """Internal face classes as ((t, f), Gluing) with (t, f) the smaller instance."""
        out = []
        for cls in self.skeleton.face_classes:
            if len(cls) == 2:
                t, f = cls[0]
                out.append(((t, f), self.table.gluings[t][f]))
        return out

    def summary(self) -> dict:
        sk = self.skeleton
        return {
            "tetrahedra": self.size,
            "vertices": len(sk.vertex_classes),
            "edges": len(sk.edge_classes),
            "faces": len(sk.face_classes),
            "boundaryFaces": sum(1 for c in sk.face_classes if len(c) == 1),
            "boundaryComponents": [
                {"vertices": len(b.vertices), "edges": len(b.edges), "faces": len(b.faces),
                 "euler": b.euler_char} for b in self.boundary_components],
            "orientable": sk.orientable,
            "valid": sk.valid,
        }


def build(table: GluingTable) -> Triangulation:
    """Compute the skeleton and boundary components of a gluing table."""
    table.validate()
    n = table.n

    vuf = _UnionFind(4 * n)
    for t, row in enumerate(table.gluings):
        for f, g in enumerate(row):
            if g is None:
                continue
            for v in face_vertices(f):
                vuf.union(4 * t + v, 4 * g.tet + g.perm[v])
    vertex_flat, vertex_members = _number_classes(vuf, 4 * n)

    face_boundary = [[g is None for g in row] for row in table.gluings]

    # Edge classes with orientations, by breadth-first search over gluings.
    edge_flat = [-1] * (6 * n)
    edge_sign = [0] * (6 * n)
    edge_members = []
    valid = True
    for start in range(6 * n):
        if edge_flat[start] >= 0:
            continue
        k = len(edge_members)
        members = []
        edge_flat[start], edge_sign[start] = k, 1
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            members.append(cur)
            t, e = divmod(cur, 6)
            a, b = EDGES[e]
            for f in range(4):
                if f in (a, b):
                    continue
                g = table.gluings[t][f]
                if g is None:
                    continue
                pa, pb = g.perm[a], g.perm[b]
                nxt = 6 * g.tet + edge_index(pa, pb)
                s = edge_sign[cur] * (1 if pa < pb else -1)
                if edge_flat[nxt] < 0:
                    edge_flat[nxt], edge_sign[nxt] = k, s
                    queue.append(nxt)
                elif edge_sign[nxt] != s:
                    valid = False
        edge_members.append(sorted(members))

    edge_classes = []
    for k, members in enumerate(edge_members):
        boundary = False
        inst = []
        for m in members:
            t, e = divmod(m, 6)
            a, b = EDGES[e]
            if any(face_boundary[t][f] for f in range(4) if f not in (a, b)):
                boundary = True
            inst.append((t, e, edge_sign[m]))
        edge_classes.append(EdgeClass(k, tuple(inst), boundary))

    vertex_boundary = []
    for members in vertex_members:
        vertex_boundary.append(any(face_boundary[m // 4][f] for m in members
                                   for f in range(4) if f != m % 4))

    fuf = _UnionFind(4 * n)
    for t, row in enumerate(table.gluings):
        for f, g in enumerate(row):
            if g is not None:
                fuf.union(4 * t + f, 4 * g.tet + g.face)
    face_flat, face_members = _number_classes(fuf, 4 * n)

    # Orientability: propagate tetrahedron orientations across gluings.
    orient = [0] * n
    orientable = True
    for s in range(n):
        if orient[s]:
            continue
        orient[s] = 1
        queue = deque([s])
        while queue:
            t = queue.popleft()
            for f, g in enumerate(table.gluings[t]):
                if g is None:
                    continue
                want = -orient[t] * perm_sign(g.perm)
                if orient[g.tet] == 0:
                    orient[g.tet] = want
                    queue.append(g.tet)
                elif orient[g.tet] != want:
                    orientable = False

    skeleton = Skeleton(
        vertex_of=tuple(tuple(vertex_flat[4 * t:4 * t + 4]) for t in range(n)),
        vertex_classes=tuple(tuple(divmod(m, 4) for m in members) for members in vertex_members),
        vertex_boundary=tuple(vertex_boundary),
        edge_of=tuple(tuple(edge_flat[6 * t:6 * t + 6]) for t in range(n)),
        edge_classes=tuple(edge_classes),
        face_of=tuple(tuple(face_flat[4 * t:4 * t + 4]) for t in range(n)),
        face_classes=tuple(tuple(divmod(m, 4) for m in members) for members in face_members),
        orientable=orientable,
        valid=valid,
    )
    return Triangulation(table, skeleton, _boundary_components(table, skeleton))


def _boundary_components(table: GluingTable, sk: Skeleton) -> tuple:
    bfaces = [(t, f) for t in range(table.n) for f in range(4) if table.gluings[t][f] is None]
    if not bfaces:
        return ()
    pos = {bf: i for i, bf in enumerate(bfaces)}
    uf = _UnionFind(len(bfaces))
    first_face_on_edge = {}
    for (t, f) in bfaces:
        a, b, c = face_vertices(f)
        for x, y in ((a, b), (a, c), (b, c)):
            k = sk.edge_of[t][edge_index(x, y)]
            if k in first_face_on_edge:
                uf.union(first_face_on_edge[k], pos[(t, f)])
            else:
                first_face_on_edge[k] = pos[(t, f)]
    _, members = _number_classes(uf, len(bfaces))
    comps = []
    for group in members:
        faces = tuple(bfaces[i] for i in group)
        verts, edges = set(), set()
        for (t, f) in faces:
            fv = face_vertices(f)
            verts.update(sk.vertex_of[t][v] for v in fv)
            edges.update(sk.edge_of[t][edge_index(x, y)]
                         for x, y in ((fv[0], fv[1]), (fv[0], fv[2]), (fv[1], fv[2])))
        comps.append(BoundaryComponent(faces, tuple(sorted(verts)), tuple(sorted(edges))))
    return tuple(comps)


@dataclass(frozen=True)
class MarkedTriangulation:
    """A triangulation together with the edge class marked as the meridian."""

    tri: Triangulation
    meridian: int

    def __post_init__(self):
        classes = self.tri.skeleton.edge_classes
        if not 0 <= self.meridian < len(classes):
            raise TriangulationError(f"meridian {self.meridian} is not an edge class")
        if not classes[self.meridian].boundary:
            raise TriangulationError(f"meridian {self.meridian} is not a boundary edge")


def is_suitable_structure(tri: Triangulation, meridian: Optional[int]) -> bool:
    """One vertex, one two-triangle torus boundary containing the meridian edge."""
    sk = tri.skeleton
    if not sk.valid or len(sk.vertex_classes) != 1 or len(tri.boundary_components) != 1:
        return False
    bc = tri.boundary_components[0]
    if (len(bc.vertices), len(bc.edges), len(bc.faces)) != (1, 3, 2):
        return False
    return meridian is not None and meridian in bc.edges


def check_suitable_structure(m: MarkedTriangulation) -> bool:
    return is_suitable_structure(m.tri, m.meridian)


def _boundary_faces_at_edge(tri: Triangulation, k: int):
    """Boundary faces containing edge class ``k`` as (tet, face, start, end) with
    (start, end) the tetrahedron vertices following the class orientation."""
    out = []
    for (t, e, sign) in tri.skeleton.edge_classes[k].instances:
        a, b = EDGES[e]
        start, end = (a, b) if sign > 0 else (b, a)
        for f in range(4):
            if f not in (a, b) and tri.is_boundary_face(t, f):
                out.append((t, f, start, end))
    return out


def layer_table(tri: Triangulation, edge: int) -> GluingTable:
    """Gluing table with one new tetrahedron layered on boundary edge class ``edge``.

    The new tetrahedron's edge 01 is glued onto ``edge``; its faces 3 (012) and
    2 (013) are glued onto the two boundary faces meeting that edge, and its
    edge 23 becomes a new boundary edge.
    """
    classes = tri.skeleton.edge_classes
    if not 0 <= edge < len(classes) or not classes[edge].boundary:
        raise TriangulationError(f"edge {edge} is not a boundary edge")
    faces = _boundary_faces_at_edge(tri, edge)
    distinct = {(t, f) for (t, f, _, _) in faces}
    if len(faces) != 2 or len(distinct) != 2:
        raise TriangulationError(
            f"edge {edge} does not meet two distinct boundary faces")
    n = tri.size
    rows = tri.table.to_lists()
    new_row = [None, None, None, None]
    for new_face, (t, f, s, e) in zip((3, 2), faces):
        other = ({0, 1, 2, 3} - {s, e, f}).pop()
        images = [0] * 4
        images[0], images[1] = s, e
        images[5 - new_face] = other     # vertex 2 for face 3, vertex 3 for face 2
        images[new_face] = f
        perm = tuple(images)
        new_row[new_face] = (t, f, perm)
        rows[t][f] = (n, new_face, perm_inverse(perm))
    rows.append(new_row)
    return GluingTable.from_lists(rows)


def layer(m, edge: int):
    """Layer a new tetrahedron onto a boundary edge.

    Accepts a :class:`MarkedTriangulation` (the meridian is carried over to
    its edge class in the new triangulation) or a bare :class:`Triangulation`.
    """
    if isinstance(m, Triangulation):
        return build(layer_table(m, edge))
    if edge == m.meridian:
        raise TriangulationError("layering on the meridian would bury it in the interior")
    new = build(layer_table(m.tri, edge))
    t, e, _ = m.tri.skeleton.edge_classes[m.meridian].instances[0]
    return MarkedTriangulation(new, new.skeleton.edge_of[t][e])
