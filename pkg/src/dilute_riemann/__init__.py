"""Exact Riemann solver for the dilute settled-regime suspension film model."""
from .errors import (
    DomainError,
    NoAdmissibleSolution,
    NonConvergenceError,
    NoSignChangeError,
    RootFindingError,
)
from .model import ModelParams, State, check_structure, flux, jacobian, jacobian_eigensystem
from .riemann import RiemannData, Wave, WaveStructure, sample_solution, solve_riemann
from .rootfind import RootProblem, solve_root

__all__ = [
    "DomainError", "NoAdmissibleSolution", "NonConvergenceError", "NoSignChangeError",
    "RootFindingError", "ModelParams", "State", "check_structure", "flux", "jacobian",
    "jacobian_eigensystem", "RiemannData", "Wave", "WaveStructure", "sample_solution",
    "solve_riemann", "RootProblem", "solve_root",
]
