"""Solvers for stochastic continuous-time algebraic Riccati equations."""

from ._core import (
    Problem,
    ScareError,
    SolveReport,
    SolverConfig,
    benchmark,
    feedback_gain,
    mean_square_stable,
    nres,
    parse_problem,
    read_problem,
    residual,
    rlinear_rate,
    scalar_scare_solve,
    solve,
    solve_care,
    solve_lyapunov,
)

SOLVERS = ("fpc", "nt", "mnt", "fpc-nt", "fpc-mnt", "gl-fp")

__all__ = [
    "Problem",
    "SOLVERS",
    "ScareError",
    "SolveReport",
    "SolverConfig",
    "benchmark",
    "feedback_gain",
    "mean_square_stable",
    "nres",
    "parse_problem",
    "read_problem",
    "residual",
    "rlinear_rate",
    "scalar_scare_solve",
    "solve",
    "solve_care",
    "solve_lyapunov",
]
