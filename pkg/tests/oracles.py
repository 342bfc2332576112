"""Independent reference computations used by the tests.

None of these reuse the package's algorithms: classes are orbits found by
plain graph search, cone points come from exhaustive box enumeration, and
integer optima from enumerating every feasible point.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

PAIRS = [(a, b) for a, b in combinations(range(4), 2)]


def _orbits(nodes, links):
    adj = {x: [] for x in nodes}
    for a, b in links:
        adj[a].append(b)
        adj[b].append(a)
    seen, out = set(), []
    for x in nodes:
        if x in seen:
            continue
        stack, comp = [x], []
        seen.add(x)
        while stack:
            y = stack.pop()
            comp.append(y)
            for z in adj[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        out.append(sorted(comp))
    return out


def skeleton_orbits(rows):
    """Vertex, edge and face orbits of a gluing table given as nested lists of
    ``None`` or ``(tet, face, perm)``."""
    n = len(rows)
    vlinks, elinks, flinks = [], [], []
    for t, row in enumerate(rows):
        for f, g in enumerate(row):
            if g is None:
                continue
            u, ff, p = g
            flinks.append(((t, f), (u, ff)))
            for v in range(4):
                if v != f:
                    vlinks.append(((t, v), (u, p[v])))
            for a, b in PAIRS:
                if f not in (a, b):
                    elinks.append(((t, (a, b)), (u, tuple(sorted((p[a], p[b]))))))
    verts = _orbits([(t, v) for t in range(n) for v in range(4)], vlinks)
    edges = _orbits([(t, e) for t in range(n) for e in PAIRS], elinks)
    faces = _orbits([(t, f) for t in range(n) for f in range(4)], flinks)
    return verts, edges, faces


def box_points(rows, dim, bound, groups=(), fixed=()):
    """All integer x in [0, bound]^dim with rows . x = 0, at most one non-zero
    entry per group, and ``row . x = rhs`` for each ``(row, rhs)`` in ``fixed``."""
    eqs = [(np.array(r, dtype=np.int64), 0) for r in rows]
    eqs += [(np.array(r, dtype=np.int64), rhs) for r, rhs in fixed]
    pts = np.zeros((1, 0), dtype=np.int64)
    group_of = {}
    for gi, g in enumerate(groups):
        for c in g:
            group_of[c] = gi
    for j in range(dim):
        vals = np.arange(bound + 1, dtype=np.int64)
        pts = np.hstack([np.repeat(pts, bound + 1, axis=0),
                         np.tile(vals, len(pts))[:, None]])
        keep = np.ones(len(pts), dtype=bool)
        for a, rhs in eqs:
            part = pts @ a[:j + 1]
            rest = a[j + 1:]
            lo = bound * rest[rest < 0].sum()
            hi = bound * rest[rest > 0].sum()
            need = rhs - part
            keep &= (need >= lo) & (need <= hi)
        if j in group_of:
            cols = [c for c in groups[group_of[j]] if c <= j]
            keep &= np.count_nonzero(pts[:, cols], axis=1) <= 1
        pts = pts[keep]
    return pts


def minimal_points(pts):
    """Non-zero points not dominating another non-zero point of the set.

    Points are visited by increasing coordinate sum; anything dominating a
    point of the set also dominates a minimal one, so comparing against the
    minimal points found so far suffices.
    """
    pts = pts[pts.any(axis=1)]
    pts = pts[np.argsort(pts.sum(axis=1), kind="stable")]
    mins = np.zeros((0, pts.shape[1]), dtype=pts.dtype)
    for x in pts:
        if not (mins <= x).all(axis=1).any():
            mins = np.vstack([mins, x])
    return sorted(tuple(int(c) for c in m) for m in mins)


def decomposable(pts, basis):
    """For each box point, whether it is a non-negative integer combination of ``basis``."""
    basis = [np.array(b) for b in basis]
    order = np.argsort(pts.sum(axis=1), kind="stable")
    ok = {}
    for i in order:
        x = pts[i]
        key = tuple(int(c) for c in x)
        if not x.any():
            ok[key] = True
            continue
        ok[key] = any((b <= x).all() and ok.get(tuple(int(c) for c in x - b), False)
                      for b in basis)
    return ok


def brute_force_max(costs, points):
    """Largest value of ``costs . x`` over ``points`` (exact), with an argmax."""
    best, arg = None, None
    for x in points:
        v = sum((Fraction(c) * int(xi) for c, xi in zip(costs, x) if c), Fraction(0))
        if best is None or v > best:
            best, arg = v, tuple(int(c) for c in x)
    return best, arg
