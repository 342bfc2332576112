"""
Best-first branch and bound over LP relaxations.

The same driver runs with two relaxation back ends: the exact simplex of
:mod:`.simplex`, and scipy's HiGHS interface for the limited-precision mode.
Nodes are expanded in order of LP bound (ties by creation order), and the
branching variable is the most fractional integer variable, ties going to
the lowest index.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .model import CONTINUOUS, MipProblem, verify_solution_exact
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve_lp

ABORTED = "Aborted"

DEFAULT_NODE_BUDGET = 200000
FLOAT_TOL = 1e-6
FLOAT_COEFF_LIMIT = 2 ** 53


class PrecisionError(ValueError):
    """A coefficient is too large to be represented faithfully in floating point."""


@dataclass
class SolveOutcome:
    status: str
    solution: Optional[tuple] = None
    objective: Optional[Fraction] = None
    nodes: int = 0
    optima: list = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _ExactBackend:
    integral_tol = 0

    def __init__(self, p: MipProblem):
        self.rows = [c.coeffs for c in p.constraints]
        self.senses = [c.sense for c in p.constraints]
        self.rhs = [c.rhs for c in p.constraints]
        self.costs = [Fraction(0)] * p.num_vars
        for j, c in p.objective:
            self.costs[j] = c

    def solve(self, lower, upper):
        r = solve_lp(self.rows, self.senses, self.rhs, self.costs, lower, upper)
        return r.status, r.x, r.value

    @staticmethod
    def frac(v):
        return abs(v - round(v))

    @staticmethod
    def floor(v):
        return math.floor(v)


class _FloatBackend:
    integral_tol = FLOAT_TOL

    def __init__(self, p: MipProblem):
        import numpy as np
        from scipy.optimize import linprog
        from scipy.sparse import csr_matrix

        if p.max_abs_coefficient() > FLOAT_COEFF_LIMIT:
            raise PrecisionError("coefficient exceeds 2^53; refusing limited-precision solve")
        self._np, self._linprog = np, linprog
        nv = p.num_vars
        ub, ubr, eq, eqr = [], [], [], []
        for c in p.constraints:
            row = np.zeros(nv)
            for j, a in c.coeffs:
                row[j] = float(a)
            if c.sense == "=":
                eq.append(row)
                eqr.append(float(c.rhs))
            elif c.sense == "<=":
                ub.append(row)
                ubr.append(float(c.rhs))
            else:
                ub.append(-row)
                ubr.append(-float(c.rhs))
        self.a_ub = csr_matrix(np.array(ub)) if ub else None
        self.b_ub = np.array(ubr) if ub else None
        self.a_eq = csr_matrix(np.array(eq)) if eq else None
        self.b_eq = np.array(eqr) if eq else None
        self.costs = np.zeros(nv)
        for j, c in p.objective:
            self.costs[j] = float(c)

    def solve(self, lower, upper):
        c = self.costs
        bounds = [(float(lo), None if hi is None else float(hi)) for lo, hi in zip(lower, upper)]
        res = self._linprog(-c, A_ub=self.a_ub, b_ub=self.b_ub, A_eq=self.a_eq, b_eq=self.b_eq,
                            bounds=bounds, method="highs",
                            options={"primal_feasibility_tolerance": 1e-9,
                                     "dual_feasibility_tolerance": 1e-9})
        if res.status == 2:
            return INFEASIBLE, None, None
        if res.status == 3:
            return UNBOUNDED, None, None
        if res.status != 0:
            raise RuntimeError(f"LP backend failed: {res.message}")
        return OPTIMAL, list(res.x), float(c @ res.x)

    @staticmethod
    def frac(v):
        return abs(v - round(v))

    @staticmethod
    def floor(v):
        return math.floor(v + FLOAT_TOL)


def _integral_objective(p: MipProblem) -> bool:
    return all(Fraction(c).denominator == 1 and p.variables[j].kind != CONTINUOUS
               for j, c in p.objective)


def _branch_and_bound(p: MipProblem, backend, node_budget, collect_optima, max_optima):
    lower0, upper0 = [], []
    for v in p.variables:
        lo, hi = v.bounds()
        lower0.append(lo)
        upper0.append(hi)
    integral = _integral_objective(p)
    int_vars = [j for j, v in enumerate(p.variables) if v.kind != CONTINUOUS]
    tol = backend.integral_tol

    status, x, val = backend.solve(lower0, upper0)
    nodes = 1
    if status == INFEASIBLE:
        return SolveOutcome(INFEASIBLE, nodes=nodes)
    if status == UNBOUNDED:
        # With rational data a feasible integer program with an unbounded
        # relaxation is itself unbounded, so only feasibility remains to decide.
        feas = _branch_and_bound_feasible(p, backend, node_budget)
        if feas.status == OPTIMAL:
            return SolveOutcome(UNBOUNDED, nodes=nodes + feas.nodes)
        feas.nodes += nodes
        return feas

    incumbent, best = None, None
    optima = []
    counter = 0
    heap = [(-val, counter, lower0, upper0, x, val)]

    def prune(bound):
        if best is None:
            return False
        if integral and not collect_optima:
            return backend.floor(bound) <= best
        if collect_optima:
            return bound < best - tol if tol else bound < best
        return bound <= best + tol

    while heap:
        _, _, lower, upper, x, val = heapq.heappop(heap)
        if prune(val):
            continue
        # most fractional integer variable, ties to lowest index
        j, worst = None, tol
        for k in int_vars:
            f = backend.frac(x[k])
            if f > worst:
                j, worst = k, f
        if j is None:
            cand = tuple(int(round(v)) for v in x) if tol else tuple(
                int(v) if p.variables[k].kind != CONTINUOUS else v for k, v in enumerate(x))
            cval = p.objective_value(cand) if tol else val
            if best is None or cval > best:
                incumbent, best = cand, cval
                optima = [cand]
            elif collect_optima and cval == best and cand not in optima and len(optima) < max_optima:
                optima.append(cand)
            continue
        for lo_j, hi_j in ((lower[j], backend.floor(x[j])), (backend.floor(x[j]) + 1, upper[j])):
            if hi_j is not None and lo_j > hi_j:
                continue
            if nodes >= node_budget:
                return SolveOutcome(ABORTED, incumbent, best, nodes, optima)
            lo2, hi2 = list(lower), list(upper)
            lo2[j], hi2[j] = lo_j, hi_j
            s, cx, cv = backend.solve(lo2, hi2)
            nodes += 1
            if s != OPTIMAL or prune(cv):
                continue
            counter += 1
            heapq.heappush(heap, (-cv, counter, lo2, hi2, cx, cv))
    if incumbent is None:
        return SolveOutcome(INFEASIBLE, nodes=nodes)
    return SolveOutcome(OPTIMAL, incumbent, Fraction(best), nodes, optima)


def _branch_and_bound_feasible(p: MipProblem, backend, node_budget):
    zero = MipProblem(p.variables, p.constraints, (), p.name)
    return _branch_and_bound(zero, type(backend)(zero), node_budget, False, 1)


def solve_exact(p: MipProblem, node_budget: int = DEFAULT_NODE_BUDGET,
                collect_optima: bool = False, max_optima: int = 64) -> SolveOutcome:
    """Provably optimal solution in exact rational arithmetic.

    With ``collect_optima`` the search does not prune nodes whose bound ties
    the incumbent and records up to ``max_optima`` distinct optimal points it
    reaches (not necessarily all of them).
    """
    return _branch_and_bound(p, _ExactBackend(p), node_budget, collect_optima, max_optima)


def solve_float(p: MipProblem, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveOutcome:
    """Candidate solution from floating-point relaxations, rounded to integers.

    The result carries no optimality guarantee; callers should check it with
    :func:`verify_solution_exact`.
    """
    out = _branch_and_bound(p, _FloatBackend(p), node_budget, False, 1)
    if out.solution is not None:
        out.objective = p.objective_value(out.solution)
    return out


__all__ = ["SolveOutcome", "solve_exact", "solve_float", "verify_solution_exact",
           "PrecisionError", "OPTIMAL", "INFEASIBLE", "UNBOUNDED", "ABORTED"]
