"""Mixed integer programs, and the crosscap programs built from a marked triangulation."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from ..normal_coords import (matching_equations, quad_col, scaled_euler_functional,
                             spanning_equation, tri_col)
from ..triangulation import MarkedTriangulation, check_suitable_structure

EXACT = "exact"
BOUNDED = "bounded"
BOUNDED_BIGM = 10000

INTEGER = "integer"
BINARY = "binary"
CONTINUOUS = "continuous"


class UnsuitableTriangulation(ValueError):
    pass


@dataclass(frozen=True)
class Variable:
    name: str
    kind: str = INTEGER
    lower: Fraction = Fraction(0)
    upper: Optional[Fraction] = None

    def bounds(self):
        if self.kind == BINARY:
            return Fraction(0), Fraction(1)
        return self.lower, self.upper


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: tuple      # ((variable index, Fraction), ...) sorted by index
    sense: str         # "=", "<=", ">="
    rhs: Fraction

    def activity(self, x) -> Fraction:
        return sum((c * x[j] for j, c in self.coeffs), Fraction(0))

    def holds(self, x) -> bool:
        lhs = self.activity(x)
        if self.sense == "=":
            return lhs == self.rhs
        if self.sense == "<=":
            return lhs <= self.rhs
        return lhs >= self.rhs


def _row(pairs) -> tuple:
    return tuple(sorted((j, Fraction(c)) for j, c in pairs if c))


@dataclass(frozen=True)
class MipProblem:
    """Maximise ``objective . x`` subject to ``constraints`` over ``variables``."""

    variables: tuple
    constraints: tuple
    objective: tuple            # ((variable index, Fraction), ...)
    name: str = "mip"
    # Crosscap programs only: tetrahedra, big-M, mode and the factor by which
    # the objective exceeds the Euler characteristic.
    n: Optional[int] = None
    bigm: Optional[int] = None
    mode: Optional[str] = None
    objective_scale: int = 1
    family_counts: dict = field(default_factory=dict, compare=False, hash=False)

    @classmethod
    def create(cls, variables, constraints, objective, **kw) -> "MipProblem":
        """Build from plain data: constraints as (name, {index: coeff}, sense, rhs)."""
        vs = tuple(v if isinstance(v, Variable) else Variable(*v) for v in variables)
        cs = tuple(c if isinstance(c, Constraint) else
                   Constraint(c[0], _row(c[1].items()), c[2], Fraction(c[3])) for c in constraints)
        obj = _row(objective.items()) if isinstance(objective, dict) else _row(objective)
        return cls(vs, cs, obj, **kw)

    @property
    def num_vars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        for j, v in enumerate(self.variables):
            if v.name == name:
                return j
        raise KeyError(name)

    def objective_value(self, x) -> Fraction:
        return sum((c * x[j] for j, c in self.objective), Fraction(0))

    def euler_value(self, x) -> Fraction:
        return self.objective_value(x) / self.objective_scale

    def normal_vector(self, x) -> tuple:
        """The 7n normal coordinates of a crosscap-program assignment."""
        return tuple(int(x[j]) for j in range(7 * self.n))

    def max_abs_coefficient(self) -> Fraction:
        vals = [abs(c) for con in self.constraints for _, c in con.coeffs]
        vals += [abs(con.rhs) for con in self.constraints]
        vals += [abs(c) for _, c in self.objective]
        return max(vals, default=Fraction(0))

    def same_model(self, other: "MipProblem") -> bool:
        return (self.variables == other.variables and self.constraints == other.constraints
                and self.objective == other.objective)


def exact_bigm(n: int) -> int:
    """Coordinate bound n * 2^(7n+2) for fundamental surfaces."""
    return n * 2 ** (7 * n + 2)


def variable_names(n: int) -> list:
    names = ["" for _ in range(10 * n)]
    for t in range(n):
        for j in range(4):
            names[tri_col(t, j)] = f"t_{t}_{j}"
        for k in range(3):
            names[quad_col(t, k)] = f"q_{t}_{k}"
            names[7 * n + 3 * t + k] = f"b_{t}_{k}"
    return names


def build_ip(m: MarkedTriangulation, mode: str = EXACT) -> MipProblem:
    """The crosscap integer program on a suitable marked triangulation."""
    if not check_suitable_structure(m):
        raise UnsuitableTriangulation("triangulation is not suitable (one vertex, "
                                      "two-triangle torus boundary, meridian on it)")
    if mode not in (EXACT, BOUNDED):
        raise ValueError(f"unknown mode {mode!r}")
    tri = m.tri
    n = tri.size
    bigm = exact_bigm(n) if mode == EXACT else BOUNDED_BIGM
    names = variable_names(n)
    variables = [Variable(names[j], INTEGER) for j in range(7 * n)]
    variables += [Variable(names[j], BINARY) for j in range(7 * n, 10 * n)]

    cons = []
    for r, row in enumerate(matching_equations(tri)):
        cons.append(Constraint(f"m{r}", _row(enumerate(row)), "=", Fraction(0)))
    cons.append(Constraint("span", _row(enumerate(spanning_equation(m))), "=", Fraction(1)))
    for t in range(n):
        for k in range(3):
            b = 7 * n + 3 * t + k
            cons.append(Constraint(f"big{t}_{k}", _row([(b, bigm), (quad_col(t, k), -1)]),
                                   ">=", Fraction(0)))
    for t in range(n):
        cons.append(Constraint(f"ex{t}", _row((7 * n + 3 * t + k, 1) for k in range(3)),
                               "<=", Fraction(1)))
    chi, scale = scaled_euler_functional(tri)
    counts = {"matching": 3 * len(tri.internal_faces), "spanning": 1, "bigm": 3 * n,
              "exclusive": n}
    return MipProblem(tuple(variables), tuple(cons), _row(enumerate(chi)), name="crosscap",
                      n=n, bigm=bigm, mode=mode, objective_scale=scale, family_counts=counts)


def verify_solution_exact(p: MipProblem, x) -> bool:
    """Check an assignment against every bound, integrality and constraint exactly."""
    if len(x) != p.num_vars:
        return False
    vals = []
    for v, xv in zip(p.variables, x):
        try:
            f = Fraction(xv)
        except (TypeError, ValueError):
            return False
        if v.kind in (INTEGER, BINARY) and f.denominator != 1:
            return False
        lo, hi = v.bounds()
        if (lo is not None and f < lo) or (hi is not None and f > hi):
            return False
        vals.append(f)
    return all(c.holds(vals) for c in p.constraints)
