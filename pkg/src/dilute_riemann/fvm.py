"""First-order local Lax-Friedrichs (Rusanov) finite-volume oracle.

The scheme is monotone, so it converges to the entropy solution and can
arbitrate independently whether a constructed wave structure is right.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .errors import StateEscapeError
from .model import ModelParams, State, flux_arrays

ESCAPE_TOL = 1e-12
MAX_CFL = 0.9

Sampler = Callable[[np.ndarray, float], tuple[np.ndarray, np.ndarray]]

# 3-point Gauss-Legendre on [-1/2, 1/2]
_GL3_X = np.array([-math.sqrt(0.15), 0.0, math.sqrt(0.15)])
_GL3_W = np.array([5.0, 8.0, 5.0]) / 18.0


@dataclass
class Grid1D:
    x_lo: float
    x_hi: float
    h: np.ndarray
    n: np.ndarray
    t: float = 0.0
    # net amount of (h, n) that entered through the two boundaries so far
    boundary_inflow: np.ndarray = field(default_factory=lambda: np.zeros(2))
    steps: int = 0
    last_dt: float = 0.0

    def __post_init__(self):
        self.h = np.asarray(self.h, dtype=float)
        self.n = np.asarray(self.n, dtype=float)
        if self.h.shape != self.n.shape or self.h.ndim != 1 or self.h.size == 0:
            raise ValueError("h and n must be equal-length nonempty 1-D arrays")
        if not self.x_hi > self.x_lo:
            raise ValueError("x_hi must exceed x_lo")

    @property
    def cells(self) -> int:
        return self.h.size

    @property
    def dx(self) -> float:
        return (self.x_hi - self.x_lo) / self.cells

    @property
    def centers(self) -> np.ndarray:
        return self.x_lo + (np.arange(self.cells) + 0.5) * self.dx

    def mass(self) -> np.ndarray:
        return np.array([self.h.sum(), self.n.sum()]) * self.dx

    @classmethod
    def riemann(cls, left: State, right: State, cells: int, x_lo=-1.0, x_hi=2.0,
                x0: float = 0.0) -> "Grid1D":
        """Piecewise-constant data, exact cell averages around the jump at ``x0``."""
        edges = x_lo + np.arange(cells + 1) * ((x_hi - x_lo) / cells)
        frac = np.clip((x0 - edges[:-1]) / (edges[1:] - edges[:-1]), 0.0, 1.0)
        h = frac * left.h + (1 - frac) * right.h
        n = frac * left.n + (1 - frac) * right.n
        return cls(x_lo, x_hi, h, n)

    @classmethod
    def from_cell_averages(cls, fn: Callable[[np.ndarray], tuple], cells: int,
                           x_lo: float, x_hi: float) -> "Grid1D":
        g = cls(x_lo, x_hi, np.zeros(cells), np.zeros(cells))
        h, n = cell_average(lambda x: fn(x), g.centers, g.dx)
        g.h, g.n = h, n
        return g


def cell_average(fn, centers: np.ndarray, dx: float):
    """Averages of a vectorised ``fn(x) -> (h, n)`` over cells, 3-point Gauss."""
    x = centers[:, None] + dx * _GL3_X[None, :]
    h, n = fn(x.ravel())
    h = np.asarray(h, dtype=float).reshape(x.shape) @ _GL3_W
    n = np.asarray(n, dtype=float).reshape(x.shape) @ _GL3_W
    return h, n


def max_speed(g: Grid1D) -> float:
    # lambda2 = h^2 bounds lambda1 everywhere in Omega
    return float(np.max(g.h * g.h))


def llf_step(g: Grid1D, p: ModelParams = ModelParams(), cfl: float = 0.8,
             dt_max: float = math.inf) -> Grid1D:
    """One Rusanov update with zero-gradient boundaries; returns a new grid."""
    if not 0 < cfl <= MAX_CFL:
        raise ValueError(f"cfl must lie in (0, {MAX_CFL}], got {cfl!r}")
    smax = max_speed(g)
    if smax <= 0:
        raise ValueError("all cells are dry; the time step is undefined")
    dx = g.dx
    dt = min(cfl * dx / smax, dt_max)

    h = np.concatenate(([g.h[0]], g.h, [g.h[-1]]))
    n = np.concatenate(([g.n[0]], g.n, [g.n[-1]]))
    fh, fn = flux_arrays(h, n, p.C)
    lam = h * h
    a = np.maximum(lam[:-1], lam[1:])
    Fh = 0.5 * (fh[:-1] + fh[1:]) - 0.5 * a * (h[1:] - h[:-1])
    Fn = 0.5 * (fn[:-1] + fn[1:]) - 0.5 * a * (n[1:] - n[:-1])

    r = dt / dx
    h_new = g.h - r * (Fh[1:] - Fh[:-1])
    n_new = g.n - r * (Fn[1:] - Fn[:-1])

    bad = (h_new < -ESCAPE_TOL) | (n_new < -ESCAPE_TOL) | (n_new > h_new + ESCAPE_TOL)
    if bad.any():
        i = int(np.argmax(bad))
        raise StateEscapeError(
            f"cell {i} left Omega at t={g.t + dt!r}: h={h_new[i]!r}, n={n_new[i]!r}")
    np.maximum(h_new, 0.0, out=h_new)
    np.clip(n_new, 0.0, h_new, out=n_new)

    inflow = g.boundary_inflow + dt * np.array([Fh[0] - Fh[-1], Fn[0] - Fn[-1]])
    return replace(g, h=h_new, n=n_new, t=g.t + dt, boundary_inflow=inflow,
                   steps=g.steps + 1, last_dt=dt)


def evolve(g: Grid1D, T: float, p: ModelParams = ModelParams(), cfl: float = 0.8) -> Grid1D:
    """Advance to time ``T`` exactly; the last step is shortened to land on it."""
    while g.t < T:
        g = llf_step(g, p, cfl, dt_max=T - g.t)
        if T - g.t <= 1e-14 * max(1.0, T):
            g.t = T
    return g


def l1_distance(g: Grid1D, exact: Sampler) -> float:
    """sum over cells of (|h - h_ex| + |n - n_ex|) dx, exact side cell-averaged."""
    h_ex, n_ex = cell_average(lambda x: exact(x, g.t), g.centers, g.dx)
    return float(np.sum(np.abs(g.h - h_ex) + np.abs(g.n - n_ex)) * g.dx)


def empirical_orders(cells, errors) -> list[float]:
    """log2-style observed orders between consecutive refinement levels."""
    out = []
    for (n0, e0), (n1, e1) in zip(zip(cells, errors), zip(cells[1:], errors[1:])):
        out.append(math.log(e0 / e1) / math.log(n1 / n0) if e0 > 0 and e1 > 0 else math.nan)
    return out


def fitted_order(cells, errors) -> float:
    slope = np.polyfit(np.log(np.asarray(cells, float)), np.log(np.asarray(errors, float)), 1)[0]
    return float(-slope)


@dataclass
class RefinementStudy:
    cells: list[int]
    errors: list[float]

    @property
    def orders(self) -> list[float]:
        return empirical_orders(self.cells, self.errors)

    @property
    def fitted_order(self) -> float:
        """Least-squares slope of -log(error) against log(N).

        Shock-dominated errors jitter with the sub-cell position of the
        discontinuity, so consecutive-pair orders are noisy; the fit is not.
        """
        return fitted_order(self.cells, self.errors)

    @property
    def monotone(self) -> bool:
        return all(b < a for a, b in zip(self.errors, self.errors[1:]))


def refinement_study(make_grid: Callable[[int], Grid1D], exact: Sampler, T: float,
                     ladder=(500, 1000, 2000, 4000), p: ModelParams = ModelParams(),
                     cfl: float = 0.8) -> RefinementStudy:
    errors = [l1_distance(evolve(make_grid(N), T, p, cfl), exact) for N in ladder]
    return RefinementStudy(list(ladder), errors)


def riemann_sampler(ws) -> Sampler:
    """Exact field of a wave structure as a function of (x, t)."""
    def sample(x, t):
        x = np.asarray(x, dtype=float)
        if t <= 0:
            return ws.evaluate(np.where(x < 0, -np.inf, np.inf))
        return ws.evaluate(x / t)
    return sample
