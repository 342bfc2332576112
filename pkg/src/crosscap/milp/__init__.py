"""Integer programs for the crosscap number: model, exact and float solvers, export."""
from .model import (BOUNDED, BOUNDED_BIGM, EXACT, Constraint, MipProblem, UnsuitableTriangulation,
                    Variable, build_ip, exact_bigm, verify_solution_exact)
from .solve import (ABORTED, INFEASIBLE, OPTIMAL, UNBOUNDED, PrecisionError, SolveOutcome,
                    solve_exact, solve_float)

__all__ = ["BOUNDED", "BOUNDED_BIGM", "EXACT", "Constraint", "MipProblem", "UnsuitableTriangulation",
           "Variable", "build_ip", "exact_bigm", "verify_solution_exact", "ABORTED", "INFEASIBLE",
           "OPTIMAL", "UNBOUNDED", "PrecisionError", "SolveOutcome", "solve_exact", "solve_float"]
