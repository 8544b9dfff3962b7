"""Bracketed scalar root finding.

Newton iteration when a derivative is supplied, secant otherwise; any step
that leaves the current bracket, or fails to shrink it fast enough, is
replaced by bisection, so the iterate never leaves the initial bracket.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

from .errors import NoSignChangeError, NonConvergenceError

TOL_X = 1e-12
TOL_F = 1e-12
MAX_ITER = 100


@dataclass
class RootProblem:
    f: Callable[[float], float]
    bracket: tuple[float, float]
    df: Optional[Callable[[float], float]] = None
    tol_x: float = TOL_X
    tol_f: float = TOL_F
    max_iter: int = MAX_ITER
    x0: Optional[float] = None
    context: str = ""

    def __post_init__(self):
        lo, hi = map(float, self.bracket)
        if not lo <= hi:
            raise ValueError(f"bracket must satisfy lo <= hi, got {self.bracket}")
        if self.tol_x <= 0 or self.tol_f <= 0:
            raise ValueError("tolerances must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        self.bracket = (lo, hi)
        self.f_lo = float(self.f(lo))
        self.f_hi = float(self.f(hi))
        if self.f_lo * self.f_hi > 0 or math.isnan(self.f_lo * self.f_hi):
            raise NoSignChangeError(lo, hi, self.f_lo, self.f_hi, self.context)


class RootResult(NamedTuple):
    root: float
    residual: float
    iterations: int


def solve_root(rp: RootProblem) -> RootResult:
    a, b = rp.bracket
    fa, fb = rp.f_lo, rp.f_hi
    if fa == 0.0:
        return RootResult(a, 0.0, 0)
    if fb == 0.0:
        return RootResult(b, 0.0, 0)
    if b - a <= rp.tol_x:
        return _best(a, fa, b, fb, 0)

    if rp.x0 is not None and a < rp.x0 < b:
        x = rp.x0
    else:
        # false position start
        x = a - fa * (b - a) / (fb - fa)
        if not a < x < b:
            x = 0.5 * (a + b)
    x_prev = f_prev = None
    width_old = b - a

    for it in range(1, rp.max_iter + 1):
        fx = float(rp.f(x))
        if abs(fx) <= rp.tol_f:
            return RootResult(x, fx, it)
        if (fx < 0) == (fa < 0):
            a, fa = x, fx
        else:
            b, fb = x, fx
        if b - a <= rp.tol_x:
            return _best(a, fa, b, fb, it)

        x_new = None
        if rp.df is not None:
            d = float(rp.df(x))
            if d != 0.0 and math.isfinite(d):
                x_new = x - fx / d
        elif x_prev is not None and fx != f_prev:
            x_new = x - fx * (x - x_prev) / (fx - f_prev)

        # bisect when the step escapes, or the bracket stalls
        shrunk = (b - a) <= 0.5 * width_old
        if x_new is None or not (a < x_new < b) or x_new == x or (not shrunk and it % 3 == 0):
            x_new = 0.5 * (a + b)
            if x_new in (a, b):
                return _best(a, fa, b, fb, it)
        if it % 3 == 0:
            width_old = b - a
        x_prev, f_prev = x, fx
        x = x_new

    best = a if abs(fa) <= abs(fb) else b
    raise NonConvergenceError(best, min(fa, fb, key=abs), rp.max_iter, rp.context)


def _best(a, fa, b, fb, it):
    return RootResult(a, fa, it) if abs(fa) <= abs(fb) else RootResult(b, fb, it)


def find_root(f, lo, hi, df=None, **kw) -> float:
    """Convenience wrapper returning only the root."""
    return solve_root(RootProblem(f, (lo, hi), df=df, **kw)).root
