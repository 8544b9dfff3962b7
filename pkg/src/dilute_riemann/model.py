"""Conservation-law system for the settled-regime dilute suspension film.

Unknowns are the film height ``h`` and the integrated particle
concentration ``n = phi * h``.  The system reads

    h_t + (h**3 / 3)_x = 0
    n_t + (sqrt(2 / (9 C)) * (n h)**1.5)_x = 0

with buoyancy parameter ``C``.  The admissible phase space is
``Omega = {h > 0, 0 <= n < h}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError

DEFAULT_C = 2.307

# Omega classification slack for states produced by internal root solves.
OMEGA_EPS = 1e-12
# "Nonzero" threshold for the genuine-nonlinearity expressions.
GNL_EPS = 1e-14


@dataclass(frozen=True)
class State:
    """A point ``(h, n)`` of phase space."""

    h: float
    n: float

    def __post_init__(self):
        if not (math.isfinite(self.h) and math.isfinite(self.n)):
            raise DomainError(f"non-finite state ({self.h!r}, {self.n!r})")

    @property
    def phi(self) -> float:
        """Particle volume fraction ``n / h``."""
        return self.n / self.h

    def in_omega(self, eps: float = 0.0) -> bool:
        """Strict membership in Omega, with optional slack for computed states."""
        return self.h > 0 and self.n >= -eps and self.n < self.h + eps

    def in_closure(self) -> bool:
        return self.h >= 0 and self.n >= 0 and self.n <= self.h

    def as_tuple(self) -> tuple[float, float]:
        return (self.h, self.n)

    def __iter__(self):
        yield self.h
        yield self.n

    def __str__(self):
        return f"({self.h!r}, {self.n!r})"


@dataclass(frozen=True)
class ModelParams:
    """Buoyancy parameter and the constants derived from it on demand."""

    C: float = DEFAULT_C

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C > 0):
            raise ValueError(f"buoyancy parameter must be positive, got {self.C!r}")

    @property
    def flux_coef(self) -> float:
        """sqrt(2 / (9 C)), the coefficient of the particle flux."""
        return math.sqrt(2.0 / (9.0 * self.C))

    @property
    def inv_2c(self) -> float:
        return 1.0 / (2.0 * self.C)

    @property
    def locus_coef(self) -> float:
        """sqrt(2 / C), the coefficient in the Hugoniot locus."""
        return math.sqrt(2.0 / self.C)

    @property
    def half_c_root(self) -> float:
        """sqrt(C / 2), appears in the 2-rarefaction curve."""
        return math.sqrt(self.C / 2.0)


class FluxVector(NamedTuple):
    f_h: float
    f_n: float


class EigenPair(NamedTuple):
    lambda1: float
    lambda2: float
    r1: tuple[float, float]
    r2: tuple[float, float]


class StructureReport(NamedTuple):
    strictly_hyperbolic: bool
    gnl_field1: bool | None  # None on the n = 0 boundary, where it is undefined
    gnl_field2: bool
    boundary: bool


def require_omega(U: State, what: str = "state") -> None:
    """Raise DomainError unless ``U`` is strictly inside Omega."""
    if not (U.h > 0 and 0 <= U.n < U.h):
        raise DomainError(f"{what} {U} is outside Omega = {{h > 0, 0 <= n < h}}")


def require_closure(U: State, what: str = "state") -> None:
    if U.h < 0 or U.n < 0 or U.n > U.h:
        raise DomainError(f"{what} {U} is outside the closure of Omega")


# -- array kernels (used by the finite-volume scheme and vectorised samplers)

def flux_arrays(h, n, C: float = DEFAULT_C):
    h = np.asarray(h, dtype=float)
    n = np.asarray(n, dtype=float)
    return h**3 / 3.0, math.sqrt(2.0 / (9.0 * C)) * (n * h) ** 1.5


def lambda1_arrays(h, n, C: float = DEFAULT_C):
    h = np.asarray(h, dtype=float)
    return np.sqrt(h**3 * np.asarray(n, dtype=float) / (2.0 * C))


def lambda2_arrays(h):
    return np.asarray(h, dtype=float) ** 2


# -- pointwise operations

def flux(U: State, p: ModelParams = ModelParams()) -> FluxVector:
    require_closure(U)
    f_h = U.h**3 / 3.0
    nh = U.n * U.h
    f_n = p.flux_coef * nh * math.sqrt(nh) if nh > 0 else 0.0
    return FluxVector(f_h, f_n)


def jacobian(U: State, p: ModelParams = ModelParams()) -> np.ndarray:
    """Analytic flux Jacobian DF(U); lower triangular."""
    require_closure(U)
    h, n = U.h, U.n
    return np.array([
        [h * h, 0.0],
        [math.sqrt(n**3 * h * p.inv_2c), math.sqrt(h**3 * n * p.inv_2c)],
    ])


def lambda1(U: State, p: ModelParams = ModelParams()) -> float:
    return math.sqrt(U.h**3 * U.n * p.inv_2c)


def lambda2(U: State) -> float:
    return U.h * U.h


def jacobian_eigensystem(U: State, p: ModelParams = ModelParams()) -> EigenPair:
    """Eigenvalues and right eigenvectors of DF(U).

    ``r1 = (0, 1)`` and ``r2 = (h**2 - lambda1, sqrt(n**3 h / (2C)))``,
    neither normalised.
    """
    require_omega(U)
    l1 = lambda1(U, p)
    l2 = lambda2(U)
    r2 = (l2 - l1, math.sqrt(U.n**3 * U.h * p.inv_2c))
    return EigenPair(l1, l2, (0.0, 1.0), r2)


def gnl_expressions(U: State, p: ModelParams = ModelParams()) -> tuple[float, float]:
    """(grad lambda1 . r1, grad lambda2 . r2); the first is inf at n = 0."""
    h, n = U.h, U.n
    g1 = 0.5 * math.sqrt(h**3 * p.inv_2c / n) if n > 0 else math.inf
    g2 = 2.0 * h * (h * h - lambda1(U, p))
    return g1, g2


def check_structure(U: State, p: ModelParams = ModelParams()) -> StructureReport:
    require_omega(U)
    l1, l2 = lambda1(U, p), lambda2(U)
    g1, g2 = gnl_expressions(U, p)
    boundary = U.n == 0
    return StructureReport(
        strictly_hyperbolic=l1 < l2,
        gnl_field1=None if boundary else abs(g1) > GNL_EPS,
        gnl_field2=abs(g2) > GNL_EPS,
        boundary=boundary,
    )
