"""
Hilbert bases of cones {x >= 0 : A x = 0} and fundamental normal surfaces.

The basis is built by cutting the non-negative orthant with one equation at
a time.  Given the Hilbert basis ``H`` of the current cone and a new linear
form ``a``, the completion step repeatedly adds sums ``x + y`` with
``a(x) > 0 > a(y)`` unless the sum is reducible by an element already in hand,
where ``g`` reduces ``s`` when ``g <= s`` coordinatewise and ``a(g)`` lies
between 0 and ``a(s)``.  When no new sums survive, the elements with
``a = 0`` contain the Hilbert basis of the smaller cone.  Sums are formed in
rounds; within a round candidates are graded by coordinate sum so that a
candidate is only ever reduced by strictly smaller vectors.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .normal_coords import matching_equations, quad_groups
from .surface import NormalSurface
from .triangulation import Triangulation

DEFAULT_MAX_CANDIDATES = 10 ** 6


class EnumerationAborted(RuntimeError):
    """The working set grew beyond the configured cap."""


@dataclass(frozen=True)
class Cone:
    dimension: int
    equalities: tuple

    @classmethod
    def of(cls, tri: Triangulation) -> "Cone":
        return cls(7 * tri.size, tuple(tuple(r) for r in matching_equations(tri)))

    def contains(self, x: Sequence[int]) -> bool:
        return all(c >= 0 for c in x) and all(
            sum(a * c for a, c in zip(row, x)) == 0 for row in self.equalities)


def _reducible(cands, cvals, pool, pvals, chunk=2048):
    """Mask of candidates conformally reducible by some pool element (other than an equal copy)."""
    out = np.zeros(len(cands), dtype=bool)
    if not len(pool) or not len(cands):
        return out
    for s in range(0, len(cands), chunk):
        c, v = cands[s:s + chunk], cvals[s:s + chunk]
        le = (pool[None, :, :] <= c[:, None, :]).all(axis=2)
        ne = (pool[None, :, :] != c[:, None, :]).any(axis=2)
        pv, cv = pvals[None, :], v[:, None]
        sign_ok = ((pv >= 0) & (cv >= pv)) | ((pv <= 0) & (cv <= pv))
        out[s:s + chunk] = (le & ne & sign_ok).any(axis=1)
    return out


def _minimal(vectors):
    """Drop vectors dominating another (coordinatewise) distinct vector."""
    if not len(vectors):
        return vectors
    zeros = np.zeros(len(vectors), dtype=np.int64)
    keep = ~_reducible(vectors, zeros, vectors, zeros)
    return vectors[keep]


def _admissible_mask(vectors, groups):
    keep = np.ones(len(vectors), dtype=bool)
    for g in groups:
        keep &= np.count_nonzero(vectors[:, g], axis=1) <= 1
    return keep


def _cut(basis, row, groups, max_candidates):
    """Hilbert basis of (current cone) cut by row . x = 0, from the current basis."""
    vals = basis @ row
    if not vals.any():
        return basis
    elems, evals = basis, vals
    # Pairs still to be summed: (new positives x all negatives) and (old positives x new negatives).
    new_from = 0
    while True:
        pos_all = np.nonzero(evals > 0)[0]
        neg_all = np.nonzero(evals < 0)[0]
        pos_new, neg_new = pos_all[pos_all >= new_from], neg_all[neg_all >= new_from]
        pos_old = pos_all[pos_all < new_from]
        pairs = []
        if len(pos_new) and len(neg_all):
            pairs.append(np.array(np.meshgrid(pos_new, neg_all, indexing="ij")).reshape(2, -1))
        if len(pos_old) and len(neg_new):
            pairs.append(np.array(np.meshgrid(pos_old, neg_new, indexing="ij")).reshape(2, -1))
        if not pairs:
            break
        i, j = np.concatenate(pairs, axis=1)
        if len(i) > max_candidates:
            raise EnumerationAborted(
                f"Hilbert basis enumeration aborted: {len(i)} pair sums exceed cap {max_candidates}")
        cands = elems[i] + elems[j]
        cvals = evals[i] + evals[j]
        if groups:
            keep = _admissible_mask(cands, groups)
            cands, cvals = cands[keep], cvals[keep]
        if len(cands):
            cands, first = np.unique(cands, axis=0, return_index=True)
            cvals = cvals[first]
        keep = ~_reducible(cands, cvals, elems, evals)
        cands, cvals = cands[keep], cvals[keep]
        # Within the round, reduce only by strictly lower-degree candidates.
        order = np.argsort(cands.sum(axis=1), kind="stable")
        cands, cvals = cands[order], cvals[order]
        degree = cands.sum(axis=1)
        keep = np.ones(len(cands), dtype=bool)
        for deg in np.unique(degree):
            lower = degree < deg
            here = degree == deg
            if lower.any():
                keep[here] = ~_reducible(cands[here], cvals[here], cands[lower], cvals[lower])
        cands, cvals = cands[keep], cvals[keep]
        if not len(cands):
            break
        new_from = len(elems)
        elems = np.concatenate([elems, cands])
        evals = np.concatenate([evals, cvals])
        if len(elems) > max_candidates:
            raise EnumerationAborted(
                f"Hilbert basis enumeration aborted: {len(elems)} elements exceed cap {max_candidates}")
    return _minimal(elems[evals == 0])


def hilbert_basis(cone: Cone, max_candidates: int = DEFAULT_MAX_CANDIDATES,
                  exclusive_groups: Sequence[Sequence[int]] = ()) -> list:
    """Minimal non-zero integer points of ``cone``, sorted lexicographically.

    ``exclusive_groups`` lists coordinate groups of which at most one entry may
    be non-zero.  Any summand of a vector respecting the groups respects them
    too, so vectors breaking them are dropped as soon as they appear and the
    result is exactly the basis elements that respect the groups.
    """
    d = cone.dimension
    if d == 0:
        return []
    groups = [list(g) for g in exclusive_groups]
    rows = [np.array(r, dtype=np.int64) for r in cone.equalities if any(r)]
    basis = np.eye(d, dtype=np.int64)
    while rows:
        # Cut next with the equation generating the fewest pair sums.
        costs = []
        for r in rows:
            v = basis @ r
            costs.append(int((v > 0).sum()) * int((v < 0).sum()))
        k = int(np.argmin(costs))
        basis = _cut(basis, rows.pop(k), groups, max_candidates)
    return sorted(tuple(int(c) for c in v) for v in basis)


def fundamental_surfaces(tri: Triangulation, max_candidates: int = DEFAULT_MAX_CANDIDATES) -> list:
    """Hilbert basis elements obeying the quadrilateral constraints, each with its surface."""
    basis = hilbert_basis(Cone.of(tri), max_candidates, exclusive_groups=quad_groups(tri.size))
    return [(v, NormalSurface(tri, v)) for v in basis]


def has_normal_sphere_obstruction(tri: Triangulation, surfaces: Optional[list] = None,
                                  max_candidates: int = DEFAULT_MAX_CANDIDATES) -> bool:
    """True if some fundamental surface has a closed component with positive Euler characteristic."""
    if surfaces is None:
        surfaces = fundamental_surfaces(tri, max_candidates)
    return any(s.closed and s.euler > 0 for _, S in surfaces for s in S.classify())


def write_basis(vectors, path) -> None:
    Path(path).write_text("".join(" ".join(map(str, v)) + "\n" for v in vectors))


def read_basis(path) -> list:
    lines = (line.split("#", 1)[0] for line in Path(path).read_text().splitlines())
    return [tuple(int(x) for x in line.split()) for line in lines if line.strip()]
