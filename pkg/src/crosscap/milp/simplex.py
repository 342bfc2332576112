"""
Exact two-phase primal simplex on an integer tableau.

Every tableau row is kept as a list of Python integers standing for one
equation; scaling a row by a positive number leaves the equation alone, so
rows are combined fraction-free and divided by their gcd after each pivot.
The objective row carries an explicit coefficient for ``z`` so that its value
can be read off as ``rhs / zc``.  Pivoting follows Dantzig's rule and falls
back to Bland's rule once a run of degenerate pivots passes a threshold.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Optional, Sequence

OPTIMAL = "Optimal"
INFEASIBLE = "Infeasible"
UNBOUNDED = "Unbounded"

STALL_THRESHOLD = 50


@dataclass
class LpResult:
    status: str
    x: Optional[list] = None          # Fractions, original variables
    value: Optional[Fraction] = None
    pivots: int = 0


def _reduce(row):
    g = 0
    for a in row:
        if a:
            g = gcd(g, a)
            if g == 1:
                return row
    if g > 1:
        return [a // g for a in row]
    return row


class _Tableau:
    def __init__(self, rows, basis, ncols):
        self.rows = rows          # each: ncols coefficients + rhs
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def set_objective(self, costs):
        """Install ``maximise costs . x``; costs are integers over the columns."""
        obj = [-c for c in costs] + [1, 0]     # coefficients, zc, rhs
        for r, b in enumerate(self.basis):
            if obj[b]:
                row = self.rows[r]
                ab, ob = row[b], obj[b]
                obj = _reduce([ab * x - ob * y for x, y in zip(obj, self._padded(row))])
        self.obj = obj

    # The objective row has one extra entry (zc) before the rhs.
    def _padded(self, row):
        return row[:-1] + [0, row[-1]]

    def value(self) -> Fraction:
        return Fraction(self.obj[-1], self.obj[-2])

    def run(self, allowed, max_pivots=None) -> str:
        bland = False
        stall = 0
        while True:
            obj = self.obj
            if bland:
                q = next((j for j in range(self.ncols) if allowed[j] and obj[j] < 0), None)
            else:
                q, best = None, 0
                for j in range(self.ncols):
                    if allowed[j] and obj[j] < best:
                        q, best = j, obj[j]
            if q is None:
                return OPTIMAL
            p = None
            for r, row in enumerate(self.rows):
                a = row[q]
                if a <= 0:
                    continue
                if p is None:
                    p = r
                    continue
                lhs, rhs = row[-1] * self.rows[p][q], self.rows[p][-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[r] < self.basis[p]):
                    p = r
            if p is None:
                return UNBOUNDED
            stall = stall + 1 if self.rows[p][-1] == 0 else 0
            if stall > STALL_THRESHOLD:
                bland = True
            self.pivot_obj(p, q)
            if max_pivots is not None and self.pivots > max_pivots:
                raise RuntimeError("simplex pivot limit exceeded")

    def pivot_obj(self, p, q):
        prow = self.rows[p]
        if prow[q] < 0:
            prow = [-a for a in prow]
        prow = _reduce(prow)
        self.rows[p] = prow
        apq = prow[q]
        for r, row in enumerate(self.rows):
            if r != p and row[q]:
                arq = row[q]
                self.rows[r] = _reduce([apq * a - arq * b for a, b in zip(row, prow)])
        oq = self.obj[q]
        if oq:
            self.obj = _reduce([apq * a - oq * b for a, b in zip(self.obj, self._padded(prow))])
        self.basis[p] = q
        self.pivots += 1

    def solution(self, count) -> list:
        x = [Fraction(0)] * count
        for r, b in enumerate(self.basis):
            if b < count:
                row = self.rows[r]
                x[b] = Fraction(row[-1], row[b])
        return x


def solve_lp(rows: Sequence, senses: Sequence[str], rhs: Sequence, costs: Sequence,
             lower: Sequence, upper: Sequence, max_pivots: Optional[int] = None) -> LpResult:
    """Maximise ``costs . x`` subject to ``rows[i] . x (sense) rhs[i]`` and
    ``lower <= x <= upper`` (``upper`` entries may be None).

    ``rows`` are sparse sequences of ``(column, coefficient)`` pairs.  All
    arithmetic is exact.
    """
    nx = len(costs)
    lower = [Fraction(v) for v in lower]
    cons = []
    for row, s, b in zip(rows, senses, rhs):
        b = Fraction(b) - sum((Fraction(a) * lower[j] for j, a in row), Fraction(0))
        cons.append((dict(row), s, b))
    for j, u in enumerate(upper):
        if u is not None:
            u = Fraction(u) - lower[j]
            if u < 0:
                return LpResult(INFEASIBLE)
            cons.append(({j: 1}, "<=", u))

    # Standard form with rhs >= 0: structural | slack/surplus | artificial.
    std = []
    for coeffs, s, b in cons:
        if b < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            b = -b
            s = {"<=": ">=", ">=": "<="}.get(s, s)
        std.append((coeffs, s, b))
    nslack = sum(1 for _, s, _ in std if s != "=")
    nart = sum(1 for _, s, _ in std if s != "<=")
    ncols = nx + nslack + nart
    rows_out, basis = [], []
    sk, ak = nx, nx + nslack
    for coeffs, s, b in std:
        den = lcm(b.denominator, *(Fraction(a).denominator for a in coeffs.values()))
        dense = [0] * (ncols + 1)
        for j, a in coeffs.items():
            dense[j] += int(a * den)
        if s == "<=":
            dense[sk] = den
            basis.append(sk)
            sk += 1
        else:
            if s == ">=":
                dense[sk] = -den
                sk += 1
            dense[ak] = den
            basis.append(ak)
            ak += 1
        dense[-1] = int(b * den)
        rows_out.append(dense)

    tab = _Tableau(rows_out, basis, ncols)
    is_art = [j >= nx + nslack for j in range(ncols)]
    if nart:
        tab.set_objective([-1 if is_art[j] else 0 for j in range(ncols)])
        tab.run([True] * ncols, max_pivots)
        if tab.value() < 0:
            return LpResult(INFEASIBLE, pivots=tab.pivots)
        # Drive zero-valued artificials out of the basis; drop redundant rows.
        r = 0
        while r < len(tab.rows):
            if is_art[tab.basis[r]]:
                row = tab.rows[r]
                q = next((j for j in range(ncols) if not is_art[j] and row[j]), None)
                if q is None:
                    del tab.rows[r]
                    del tab.basis[r]
                    continue
                tab.pivot_obj(r, q)
            r += 1
    dense_cost = [0] * ncols
    cden = lcm(1, *(Fraction(c).denominator for c in costs))
    for j, c in enumerate(costs):
        dense_cost[j] = int(Fraction(c) * cden)
    tab.set_objective(dense_cost)
    status = tab.run([not a for a in is_art], max_pivots)
    if status == UNBOUNDED:
        return LpResult(UNBOUNDED, pivots=tab.pivots)
    xs = tab.solution(nx)
    x = [xs[j] + lower[j] for j in range(nx)]
    value = sum((Fraction(c) * v for c, v in zip(costs, x)), Fraction(0))
    return LpResult(OPTIMAL, x, value, tab.pivots)
