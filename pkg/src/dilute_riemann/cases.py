"""The two settled-regime Riemann data sets and their scalar Newton problems.

Both right states are fixed by their height; the concentration is the root
of a scalar equation.  ``PRINTED_*`` hold the approximate roots as they
were originally printed, kept for comparison only: the data sets use the
converged roots.
"""
from __future__ import annotations

import math

from .model import ModelParams, State
from .riemann import RiemannData
from .rootfind import RootProblem, RootResult, solve_root

CASE_C = 2.307
PARAMS = ModelParams(CASE_C)

SHOCK_LEFT = State(1.0, 0.1)
SHOCK_RIGHT_H = 0.2
SHOCK_BRACKET = (1e-6, 0.0999)
PRINTED_N2S = 0.0777100325

RAREFACTION_LEFT = State(0.4, 0.08)
RAREFACTION_RIGHT_H = 1.0
RAREFACTION_BRACKET = (0.08, 0.2)
PRINTED_N2R = 0.0972723141


def shock_case_residual(n: float, p: ModelParams = PARAMS) -> float:
    """1.24 (n - 0.1) - sqrt(2/C) ((0.2 n)^1.5 - 0.1^1.5); 1.24 = h^2 + h h_p + h_p^2."""
    hl, nl, h = SHOCK_LEFT.h, SHOCK_LEFT.n, SHOCK_RIGHT_H
    q = h * h + h * hl + hl * hl
    return q * (n - nl) - p.locus_coef * ((h * n) ** 1.5 - (hl * nl) ** 1.5)


def shock_case_derivative(n: float, p: ModelParams = PARAMS) -> float:
    hl, h = SHOCK_LEFT.h, SHOCK_RIGHT_H
    q = h * h + h * hl + hl * hl
    return q - 1.5 * p.locus_coef * h**1.5 * math.sqrt(n)


def rarefaction_case_residual(n: float, p: ModelParams = PARAMS) -> float:
    """0.08 sqrt(n) + (n - 0.08) sqrt(C/2) - n sqrt(0.2), the 2-curve at h = 1."""
    hl, nl, h = RAREFACTION_LEFT.h, RAREFACTION_LEFT.n, RAREFACTION_RIGHT_H
    return nl * math.sqrt(n / h) + (n - nl) * p.half_c_root - n * math.sqrt(nl / hl)


def rarefaction_case_derivative(n: float, p: ModelParams = PARAMS) -> float:
    hl, nl, h = RAREFACTION_LEFT.h, RAREFACTION_LEFT.n, RAREFACTION_RIGHT_H
    return 0.5 * nl / math.sqrt(n * h) + p.half_c_root - math.sqrt(nl / hl)


def solve_shock_case(p: ModelParams = PARAMS, **kw) -> RootResult:
    return solve_root(RootProblem(lambda n: shock_case_residual(n, p), SHOCK_BRACKET,
                                  df=lambda n: shock_case_derivative(n, p), **kw))


def solve_rarefaction_case(p: ModelParams = PARAMS, **kw) -> RootResult:
    return solve_root(RootProblem(lambda n: rarefaction_case_residual(n, p), RAREFACTION_BRACKET,
                                  df=lambda n: rarefaction_case_derivative(n, p), **kw))


def shock_data(p: ModelParams = PARAMS) -> RiemannData:
    return RiemannData(SHOCK_LEFT, State(SHOCK_RIGHT_H, solve_shock_case(p).root))


def rarefaction_data(p: ModelParams = PARAMS) -> RiemannData:
    return RiemannData(RAREFACTION_LEFT, State(RAREFACTION_RIGHT_H, solve_rarefaction_case(p).root))
