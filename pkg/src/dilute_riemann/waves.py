"""Wave curves: Hugoniot locus, shock speeds, Lax admissibility, rarefactions.

Conventions: ``Up`` is the anchor (left) state, ``U`` the candidate right
state.  Families are the integers 1 and 2; ``None`` stands for "neither".
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    CoincidentStatesError,
    DegenerateShockError,
    DomainError,
    NotOnLocusError,
    OutOfFanError,
    PoleError,
)
from .model import ModelParams, State, lambda1, lambda2, require_omega
from .rootfind import RootProblem, solve_root

RH_TOL = 1e-9
SPEED_MATCH_TOL = 1e-9


@dataclass(frozen=True)
class ShockCandidate:
    left: State
    right: State
    speed: float
    rh_residual: float
    family: Optional[int]
    admissible: bool


@dataclass
class CurveSample:
    """Polyline through phase space with per-point speed and admissibility.

    For a Hugoniot locus ``s`` is the shock speed; for a rarefaction curve it
    is the characteristic speed of the curve's family (the fan coordinate).
    """

    kind: str
    anchor: State
    h: np.ndarray
    n: np.ndarray
    lambda1: np.ndarray
    lambda2: np.ndarray
    s: np.ndarray
    adm1: np.ndarray
    adm2: np.ndarray
    meta: dict = field(default_factory=dict)

    @property
    def inside(self) -> np.ndarray:
        """Mask of samples strictly inside Omega."""
        return (self.h > 0) & (self.n >= 0) & (self.n < self.h)

    def __len__(self):
        return len(self.h)

    def states(self) -> list[State]:
        return [State(float(a), float(b)) for a, b in zip(self.h, self.n)]


def _check_nonneg(U: State, what: str) -> None:
    if U.h < 0 or U.n < 0:
        raise DomainError(f"{what} {U} has a negative component")


EPS = np.finfo(float).eps


def _pow15(x: float) -> float:
    return x * math.sqrt(x) if x > 0 else 0.0


# -- Hugoniot locus ----------------------------------------------------------

def hugoniot_residual(U: State, Up: State, p: ModelParams = ModelParams()) -> float:
    """(n - n_p)(h^2 + h h_p + h_p^2) - sqrt(2/C) ((n h)^1.5 - (n_p h_p)^1.5)."""
    _check_nonneg(U, "state")
    _check_nonneg(Up, "anchor")
    q = U.h * U.h + U.h * Up.h + Up.h * Up.h
    return (U.n - Up.n) * q - p.locus_coef * (_pow15(U.n * U.h) - _pow15(Up.n * Up.h))


def locus_n(h: float, Up: State, p: ModelParams = ModelParams(), **root_kw) -> float:
    """Concentration on the Hugoniot locus of ``Up`` at film height ``h``.

    At fixed ``h`` the residual is concave in ``n`` and negative at ``n = 0``,
    so it has at most two roots, split by its maximiser ``n_max`` where it is
    positive.  The anchor always sits on the rising side (it needs
    ``phi_p < 2C``), hence the branch through ``Up`` is the root on
    ``[0, n_max]``.  For small ``h`` that root can exceed ``h``: the branch
    has left Omega there, and callers decide what to do with such points.
    """
    if h <= 0:
        raise DomainError(f"locus requested at non-positive h={h!r}")
    q = h * h + h * Up.h + Up.h * Up.h
    kappa = p.locus_coef
    c15 = kappa * _pow15(h)
    pp = _pow15(Up.n * Up.h)

    def f(n):
        return (n - Up.n) * q - c15 * _pow15(n) + kappa * pp

    def df(n):
        return q - 1.5 * c15 * math.sqrt(max(n, 0.0))

    hi = (q / (1.5 * c15)) ** 2
    # scale-aware tolerances: the speed from the n-equation divides
    # the residual by (n - n_p), so an absolute 1e-12 is too loose for small states
    scale = q * hi + kappa * pp
    root_kw.setdefault("tol_f", 8 * EPS * scale)
    root_kw.setdefault("tol_x", 8 * EPS * hi)
    root_kw.setdefault("context", f"Hugoniot locus at h={h!r}")
    return solve_root(RootProblem(f, (0.0, hi), df=df, x0=min(Up.n, hi), **root_kw)).root


def rh_speeds(U: State, Up: State, p: ModelParams = ModelParams()) -> tuple[float, float]:
    """Shock speed implied by each Rankine-Hugoniot component separately."""
    if U.h == Up.h or U.n == Up.n:
        raise DegenerateShockError(f"RH speed undefined for {Up} -> {U}")
    s_h = (U.h * U.h + U.h * Up.h + Up.h * Up.h) / 3.0
    s_n = p.flux_coef * (_pow15(U.n * U.h) - _pow15(Up.n * Up.h)) / (U.n - Up.n)
    return s_h, s_n


def shock_speed(U: State, Up: State, p: ModelParams = ModelParams(),
                rh_tol: float = RH_TOL) -> float:
    """Discontinuity speed between ``Up`` (left) and ``U`` (right).

    Evaluated from the eliminated form
    ``(2/(81C))^(1/4) sqrt(Q ((nh)^1.5 - (n_p h_p)^1.5) / (n - n_p))`` and
    cross-checked against ``Q / 3`` from the h-equation.
    """
    if U == Up:
        raise CoincidentStatesError(f"shock speed undefined for coincident states {U}")
    if U.n == Up.n or U.h == Up.h:
        raise DegenerateShockError(f"shock speed degenerate for {Up} -> {U}")
    res = hugoniot_residual(U, Up, p)
    if abs(res) > rh_tol:
        raise NotOnLocusError(f"{U} is not on the Hugoniot locus of {Up} (residual {res:.3e})")
    q = U.h * U.h + U.h * Up.h + Up.h * Up.h
    ratio = q * (_pow15(U.n * U.h) - _pow15(Up.n * Up.h)) / (U.n - Up.n)
    if ratio < 0:
        raise NotOnLocusError(f"negative speed radicand for {Up} -> {U}")
    s = (2.0 / (81.0 * p.C)) ** 0.25 * math.sqrt(ratio)
    if abs(s - q / 3.0) >= SPEED_MATCH_TOL:
        raise NotOnLocusError(
            f"RH components disagree for {Up} -> {U}: {s!r} vs {q / 3.0!r}")
    return s


def entropy_admissible(U: State, Up: State, s: float,
                       p: ModelParams = ModelParams()) -> Optional[int]:
    """Lax family of the jump ``Up -> U`` at speed ``s`` (strict inequalities)."""
    l1p, l2p = lambda1(Up, p), lambda2(Up)
    l1, l2 = lambda1(U, p), lambda2(U)
    if l1 < s < min(l1p, l2):
        return 1
    if max(l1p, l2) < s < l2p:
        return 2
    return None


def classify_shock(U: State, Up: State, p: ModelParams = ModelParams(),
                   rh_tol: float = RH_TOL) -> ShockCandidate:
    res = hugoniot_residual(U, Up, p)
    try:
        s = shock_speed(U, Up, p, rh_tol)
    except (NotOnLocusError, DegenerateShockError, CoincidentStatesError):
        s = math.nan
    fam = entropy_admissible(U, Up, s, p) if math.isfinite(s) else None
    return ShockCandidate(Up, U, s, res, fam, fam is not None)


def hugoniot_locus(Up: State, p: ModelParams = ModelParams(), h_range=(0.01, 1.5),
                   count: int = 200, h_values=None) -> CurveSample:
    """Sample the locus branch through ``Up`` with entropy flags per point.

    Samples outside Omega are kept (see :func:`locus_n`) but never flagged
    admissible.
    """
    require_omega(Up, "anchor")
    if h_values is None:
        lo, hi = h_range
        if not 0 < lo <= hi:
            raise ValueError(f"h range must lie in (0, inf), got {h_range}")
        if count < 2:
            raise ValueError("count must be at least 2")
        h_values = np.linspace(lo, hi, count)
    hs = np.asarray(h_values, dtype=float)
    ns = np.array([locus_n(float(h), Up, p) for h in hs])
    s = np.full(hs.shape, np.nan)
    adm1 = np.zeros(hs.shape, dtype=bool)
    adm2 = np.zeros(hs.shape, dtype=bool)
    for i, (h, n) in enumerate(zip(hs, ns)):
        if h == Up.h:
            continue
        s[i] = (h * h + h * Up.h + Up.h * Up.h) / 3.0
        if not n < h:
            continue
        fam = entropy_admissible(State(float(h), float(n)), Up, s[i], p)
        adm1[i] = fam == 1
        adm2[i] = fam == 2
    return CurveSample(
        "hugoniot", Up, hs, ns,
        np.sqrt(hs**3 * ns / (2 * p.C)), hs**2, s, adm1, adm2,
    )


# -- rarefaction curves -----------------------------------------------------

def rarefaction2_invariant(U: State, p: ModelParams = ModelParams()) -> float:
    """``(sqrt(C/2) - sqrt(n/h)) / n``, constant along every 2-integral curve.

    This is the integration constant ``e^A`` of the closed-form curve.
    """
    if U.n <= 0:
        raise DomainError(f"2-rarefaction invariant needs n > 0, got {U}")
    return (p.half_c_root - math.sqrt(U.n / U.h)) / U.n


def rarefaction2_h_of_n(Up: State, n: float, p: ModelParams = ModelParams()) -> float:
    """h on the 2-integral curve through ``Up``, closed form.

    Raises PoleError at or past ``n sqrt(n_p/h_p) = (n - n_p) sqrt(C/2)``;
    beyond it the squared formula lands on a spurious branch.
    """
    require_omega(Up, "anchor")
    if Up.n <= 0:
        raise DomainError("2-rarefaction curve needs an anchor with n_p > 0")
    inner = n * math.sqrt(Up.n / Up.h) - (n - Up.n) * p.half_c_root
    if inner <= 0:
        raise PoleError(f"2-rarefaction curve through {Up} has its pole at or before n={n!r}")
    return n * Up.n * Up.n / (inner * inner)


def rarefaction2_identity_residual(U: State, Up: State, p: ModelParams = ModelParams()) -> float:
    """h (n sqrt(n_p/h_p) - (n - n_p) sqrt(C/2))^2 - n n_p^2."""
    inner = U.n * math.sqrt(Up.n / Up.h) - (U.n - Up.n) * p.half_c_root
    return U.h * inner * inner - U.n * Up.n * Up.n


def rarefaction2_n_of_h(Up: State, h: float, p: ModelParams = ModelParams(), **root_kw) -> float:
    """Inverse of :func:`rarefaction2_h_of_n`, by a bracketed root solve.

    Solves ``sqrt(C/2) - sqrt(n/h) - k n = 0`` for ``n`` in ``[0, h]`` with
    ``k`` the invariant of ``Up``; the left side is strictly decreasing.
    """
    k = rarefaction2_invariant(Up, p)
    a = p.half_c_root
    rh = math.sqrt(h)

    def f(n):
        return a - math.sqrt(n) / rh - k * n

    def df(n):
        return -0.5 / (math.sqrt(n) * rh) - k if n > 0 else -math.inf

    root_kw.setdefault("context", f"2-rarefaction curve at h={h!r}")
    lo, hi = 0.0, h
    guess = None
    if h > 0:
        guess = float(rarefaction2_n_of_h_closed(Up, h, p))
        guess = guess if 0 < guess < h else None
    return solve_root(RootProblem(f, (lo, hi), df=df, x0=guess, **root_kw)).root


def rarefaction2_n_of_h_closed(Up: State, h, p: ModelParams = ModelParams()):
    """Vectorised closed-form inverse: ``sqrt(n)`` solves ``k m^2 + m/sqrt(h) - a = 0``."""
    k = rarefaction2_invariant(Up, p)
    a = p.half_c_root
    h = np.asarray(h, dtype=float)
    inv = 1.0 / np.sqrt(h)
    m = 2.0 * a / (inv + np.sqrt(inv * inv + 4.0 * k * a))
    return m * m


@dataclass(frozen=True)
class RarefactionCurve:
    anchor: State
    family: int
    params: ModelParams = ModelParams()

    def __post_init__(self):
        if self.family not in (1, 2):
            raise ValueError(f"family must be 1 or 2, got {self.family!r}")
        require_omega(self.anchor, "anchor")

    @property
    def integration_constant(self) -> Optional[float]:
        return rarefaction2_invariant(self.anchor, self.params) if self.family == 2 else None

    def sample(self, h_range=(0.0, 1.0), count: int = 200, h_values=None) -> CurveSample:
        if self.family == 1:
            return rarefaction1_curve(self.anchor, self.params, count)
        return rarefaction2_curve(self.anchor, self.params, h_range, count, h_values)


def rarefaction1_curve(Up: State, p: ModelParams = ModelParams(), count: int = 200) -> CurveSample:
    """Vertical segment ``h = h_p``, ``n_p <= n < h_p``."""
    require_omega(Up, "anchor")
    ns = np.linspace(Up.n, Up.h, count, endpoint=False)
    hs = np.full(ns.shape, Up.h)
    l1 = np.sqrt(hs**3 * ns / (2 * p.C))
    return CurveSample(
        "rarefaction1", Up, hs, ns, l1, hs**2, l1.copy(),
        l1 > lambda1(Up, p), np.zeros(ns.shape, dtype=bool),
    )


def rarefaction2_curve(Up: State, p: ModelParams = ModelParams(), h_range=(0.0, 1.0),
                       count: int = 200, h_values=None) -> CurveSample:
    """Family-2 integral curve through ``Up`` on the admissible side ``h >= h_p``."""
    require_omega(Up, "anchor")
    if h_values is None:
        lo, hi = max(h_range[0], Up.h), h_range[1]
        if hi < lo:
            raise ValueError(f"h range {h_range} lies below the anchor height {Up.h}")
        h_values = np.linspace(lo, hi, count)
    hs = np.asarray(h_values, dtype=float)
    ns = np.array([Up.n if h == Up.h else rarefaction2_n_of_h(Up, float(h), p) for h in hs])
    l2 = hs**2
    return CurveSample(
        "rarefaction2", Up, hs, ns, np.sqrt(hs**3 * ns / (2 * p.C)), l2, l2.copy(),
        np.zeros(hs.shape, dtype=bool), l2 > lambda2(Up),
    )


# -- self-similar fans --------------------------------------------------------

def _snap(xi: float, edge: float, rel: float = 1e-12) -> float:
    # 0.4**2 is 0.16000000000000003: treat xi this close as the edge itself
    return edge if abs(xi - edge) <= rel * abs(edge) else xi


def sample_fan(Up: State, family: int, xi: float, p: ModelParams = ModelParams()) -> State:
    """State inside a ``family`` rarefaction fan emanating from ``Up`` at ``xi = x/t``."""
    require_omega(Up, "anchor")
    if family == 2:
        edge = lambda2(Up)
        xi = _snap(xi, edge)
        if xi < edge:
            raise OutOfFanError(f"xi={xi!r} lies left of the 2-fan edge {edge!r}")
        if xi == edge:
            return Up
        h = math.sqrt(xi)
        return State(h, rarefaction2_n_of_h(Up, h, p))
    if family == 1:
        edge = lambda1(Up, p)
        xi = _snap(xi, edge)
        if xi < edge:
            raise OutOfFanError(f"xi={xi!r} lies left of the 1-fan edge {edge!r}")
        if xi == edge:
            return Up
        n = 2.0 * p.C * xi * xi / Up.h**3
        if n >= Up.h:
            raise OutOfFanError(f"xi={xi!r} drives the 1-fan out of Omega (n={n!r})")
        return State(Up.h, n)
    raise ValueError(f"family must be 1 or 2, got {family!r}")


def fan_arrays(Up: State, family: int, xi, p: ModelParams = ModelParams()):
    """Vectorised fan states (closed forms, no root solves)."""
    xi = np.asarray(xi, dtype=float)
    if family == 2:
        h = np.sqrt(xi)
        return h, rarefaction2_n_of_h_closed(Up, h, p)
    if family == 1:
        return np.full(xi.shape, Up.h), 2.0 * p.C * xi * xi / Up.h**3
    raise ValueError(f"family must be 1 or 2, got {family!r}")
