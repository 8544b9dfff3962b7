"""Riemann problem: compose admissible simple waves and sample U(x/t)."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NoAdmissibleSolution, RootFindingError
from .model import ModelParams, State, lambda1, lambda2, require_closure, require_omega
from .rootfind import RootProblem, solve_root
from . import waves as wv

MEMBERSHIP_TOL = 1e-8
# After the residual test, the curve point re-solved at the same h must
# agree with the data to this absolute tolerance in n.
CONFIRM_TOL = 1e-6

# Wave-pair appearance marks.  A pair (w, w) stands for the single wave w.
ALLOWED, CONDITIONAL, EXCLUDED = "allowed", "conditional", "excluded"
_TAGS = ("1R", "2R", "1S", "2S")
SEQUENCE_TABLE = {(a, b): EXCLUDED for a in _TAGS for b in _TAGS}
SEQUENCE_TABLE.update({
    ("1R", "1R"): CONDITIONAL,
    ("1R", "2R"): CONDITIONAL,
    ("2R", "2R"): ALLOWED,
    ("2S", "2S"): ALLOWED,
})


@dataclass(frozen=True)
class RiemannData:
    left: State
    right: State

    def __post_init__(self):
        require_closure(self.left, "left state")
        require_closure(self.right, "right state")


@dataclass(frozen=True)
class Wave:
    family: int
    kind: str  # "shock" | "rarefaction"
    speed: Optional[float] = None
    xi: Optional[tuple[float, float]] = None

    @property
    def tag(self) -> str:
        return f"{self.family}{'S' if self.kind == 'shock' else 'R'}"

    @property
    def span(self) -> tuple[float, float]:
        if self.kind == "shock":
            return (self.speed, self.speed)
        return self.xi

    def to_dict(self) -> dict:
        d = {"family": self.family, "kind": self.kind}
        if self.kind == "shock":
            d["speed"] = self.speed
        else:
            d["xi"] = list(self.xi)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Wave":
        if d["kind"] == "shock":
            return cls(int(d["family"]), "shock", speed=float(d["speed"]))
        if d["kind"] == "rarefaction":
            lo, hi = d["xi"]
            return cls(int(d["family"]), "rarefaction", xi=(float(lo), float(hi)))
        raise ValueError(f"unknown wave kind {d['kind']!r}")


@dataclass(frozen=True)
class WaveStructure:
    """Constant states ``states[i]`` separated by ``waves[i]``."""

    states: tuple[State, ...]
    waves: tuple[Wave, ...] = ()
    conditional: bool = False
    params: ModelParams = field(default=ModelParams(), compare=False)

    def __post_init__(self):
        if len(self.states) != len(self.waves) + 1:
            raise ValueError("a wave structure needs exactly one more state than waves")

    @property
    def left(self) -> State:
        return self.states[0]

    @property
    def right(self) -> State:
        return self.states[-1]

    def edges(self) -> list[float]:
        """All wave speeds and fan edges, left to right."""
        out = []
        for w in self.waves:
            lo, hi = w.span
            out.extend([lo] if lo == hi else [lo, hi])
        return out

    def evaluate(self, xi):
        """Vectorised U(xi); fan states from closed forms."""
        xi = np.asarray(xi, dtype=float)
        h = np.full(xi.shape, self.right.h)
        n = np.full(xi.shape, self.right.n)
        for i in range(len(self.waves) - 1, -1, -1):
            w, left = self.waves[i], self.states[i]
            lo, hi = w.span
            if w.kind == "rarefaction":
                inside = (xi >= lo) & (xi < hi)
                if inside.any():
                    fh, fn = wv.fan_arrays(left, w.family, xi[inside], self.params)
                    h[inside], n[inside] = fh, fn
            before = xi < lo
            h[before], n[before] = left.h, left.n
        return h, n

    def shifted(self, delta: float) -> "WaveStructure":
        """Same structure with every wave moved by ``delta`` in xi (validation hook)."""
        return _ShiftedStructure(self.states, self.waves, self.conditional, self.params, delta)

    def to_dict(self) -> dict:
        return {
            "states": [[s.h, s.n] for s in self.states],
            "waves": [w.to_dict() for w in self.waves],
            "conditional": self.conditional,
        }

    def to_json(self, **extra) -> str:
        d = self.to_dict()
        d.update(extra)
        return json.dumps(d, indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict, params: ModelParams = ModelParams()) -> "WaveStructure":
        states = tuple(State(float(h), float(n)) for h, n in d["states"])
        waves = tuple(Wave.from_dict(w) for w in d["waves"])
        return cls(states, waves, bool(d.get("conditional", False)), params)

    @classmethod
    def from_json(cls, text: str, params: Optional[ModelParams] = None) -> "WaveStructure":
        d = json.loads(text)
        if params is None:
            params = ModelParams(float(d["C"])) if "C" in d else ModelParams()
        return cls.from_dict(d, params)


@dataclass(frozen=True)
class _ShiftedStructure(WaveStructure):
    delta: float = 0.0

    def evaluate(self, xi):
        return WaveStructure.evaluate(self, np.asarray(xi, dtype=float) - self.delta)

    def edges(self) -> list[float]:
        return [e + self.delta for e in WaveStructure.edges(self)]


def sequence_mark(ws: WaveStructure) -> str:
    tags = [w.tag for w in ws.waves]
    if not tags:
        return ALLOWED
    if len(tags) == 1:
        return SEQUENCE_TABLE[(tags[0], tags[0])]
    if len(tags) == 2:
        return SEQUENCE_TABLE[(tags[0], tags[1])]
    return EXCLUDED


def _two_shock(L: State, R: State, p: ModelParams, tol: float):
    if not R.h < L.h:
        return None, {"reason": "2-shock needs h_right < h_left"}
    res = wv.hugoniot_residual(R, L, p)
    if abs(res) > tol:
        return None, {"reason": "not on the Hugoniot locus", "residual": res}
    try:
        n_ref = wv.locus_n(R.h, L, p)
    except RootFindingError as exc:
        return None, {"reason": f"locus refinement failed: {exc}", "residual": res}
    if abs(n_ref - R.n) > CONFIRM_TOL:
        return None, {"reason": "locus refinement disagrees", "residual": res,
                      "n_on_curve": n_ref}
    on_curve = State(R.h, n_ref)
    s = wv.shock_speed(on_curve, L, p)
    fam = wv.entropy_admissible(on_curve, L, s, p)
    if fam != 2:
        return None, {"reason": "2-entropy inequality fails", "residual": res, "speed": s}
    return WaveStructure((L, R), (Wave(2, "shock", speed=s),), False, p), None


def _two_rarefaction(L: State, R: State, p: ModelParams, tol: float):
    if not R.h > L.h:
        return None, {"reason": "2-rarefaction needs h_right > h_left"}
    res = wv.rarefaction2_identity_residual(R, L, p)
    if abs(res) > tol:
        return None, {"reason": "not on the 2-rarefaction curve", "residual": res}
    try:
        n_ref = wv.rarefaction2_n_of_h(L, R.h, p)
    except RootFindingError as exc:
        return None, {"reason": f"curve refinement failed: {exc}", "residual": res}
    if abs(n_ref - R.n) > CONFIRM_TOL:
        return None, {"reason": "curve refinement disagrees", "residual": res,
                      "n_on_curve": n_ref}
    wave = Wave(2, "rarefaction", xi=(lambda2(L), lambda2(R)))
    return WaveStructure((L, R), (wave,), False, p), None


def _one_rarefaction(L: State, R: State, p: ModelParams, tol: float):
    if abs(R.h - L.h) > tol:
        return None, {"reason": "1-rarefaction needs h_right = h_left", "dh": R.h - L.h}
    if not L.n < R.n < R.h:
        return None, {"reason": "1-rarefaction needs n_left < n_right < h"}
    wave = Wave(1, "rarefaction", xi=(lambda1(L, p), lambda1(R, p)))
    return WaveStructure((L, R), (wave,), True, p), None


def _one_two_rarefaction(L: State, R: State, p: ModelParams, tol: float):
    if not R.h > L.h:
        return None, {"reason": "1-rarefaction + 2-rarefaction needs h_right > h_left"}
    k = wv.rarefaction2_invariant(R, p)
    a = p.half_c_root
    rh = math.sqrt(L.h)

    # n * (invariant(h_left, n) - k): strictly decreasing in n
    def f(n):
        return a - math.sqrt(n) / rh - k * n

    try:
        n1 = solve_root(RootProblem(f, (L.n, L.h), context="middle state")).root
    except RootFindingError:
        return None, {"reason": "no middle state with n_left < n_1 < h_left",
                      "invariant_right": k, "invariant_left": wv.rarefaction2_invariant(L, p)}
    if not L.n < n1 < L.h:
        return None, {"reason": "middle state outside (n_left, h_left)", "n_1": n1}
    M = State(L.h, n1)
    w1 = Wave(1, "rarefaction", xi=(lambda1(L, p), lambda1(M, p)))
    w2 = Wave(2, "rarefaction", xi=(lambda2(M), lambda2(R)))
    return WaveStructure((L, M, R), (w1, w2), True, p), None


def solve_riemann(data: RiemannData, p: ModelParams = ModelParams(),
                  tol: float = MEMBERSHIP_TOL) -> WaveStructure:
    """Weak solution built from the allowed wave sequences only.

    Candidates are tried in order: constant state, single 2-shock, single
    2-rarefaction, single 1-rarefaction, then 1-rarefaction followed by
    2-rarefaction.  Sequences containing a 1-shock, or mixing a shock with
    a rarefaction, are never produced.  Raises NoAdmissibleSolution with a
    per-candidate report when nothing fits.
    """
    L, R = data.left, data.right
    require_omega(L, "left state")
    require_omega(R, "right state")
    if L == R:
        return WaveStructure((L,), (), False, p)
    report = {}
    for name, build in (("2-shock", _two_shock),
                        ("2-rarefaction", _two_rarefaction),
                        ("1-rarefaction", _one_rarefaction),
                        ("1-rarefaction+2-rarefaction", _one_two_rarefaction)):
        ws, why = build(L, R, p, tol)
        if ws is not None:
            return ws
        report[name] = why
    raise NoAdmissibleSolution(L, R, report)


def sample_solution(ws: WaveStructure, xi: float, p: Optional[ModelParams] = None) -> State:
    """U(xi) for one xi; on a shock ray the right state is returned."""
    p = ws.params if p is None else p
    for i, w in enumerate(ws.waves):
        lo, hi = w.span
        if xi < lo:
            return ws.states[i]
        if w.kind == "rarefaction" and xi < hi:
            return wv.sample_fan(ws.states[i], w.family, xi, p)
    return ws.states[-1]


def check_structure_invariants(ws: WaveStructure, rh_tol: float = MEMBERSHIP_TOL) -> list[str]:
    """Return the list of violated invariants (empty when the structure is sound)."""
    p = ws.params
    problems = []
    prev_hi = -math.inf
    for i, w in enumerate(ws.waves):
        lo, hi = w.span
        if not (lo > prev_hi and hi >= lo):
            problems.append(f"wave {i} does not move strictly right of its predecessor")
        prev_hi = hi
        L, R = ws.states[i], ws.states[i + 1]
        if w.kind == "shock":
            if abs(wv.hugoniot_residual(R, L, p)) > rh_tol:
                problems.append(f"shock {i} violates Rankine-Hugoniot")
            s_h = (R.h * R.h + R.h * L.h + L.h * L.h) / 3.0
            if abs(s_h - w.speed) > 1e-9:
                problems.append(f"shock {i} speed disagrees with the h-equation")
            if wv.entropy_admissible(R, L, w.speed, p) != w.family:
                problems.append(f"shock {i} fails its entropy inequality")
        else:
            lam = (lambda1(L, p), lambda1(R, p)) if w.family == 1 else (lambda2(L), lambda2(R))
            if not lam[0] < lam[1]:
                problems.append(f"rarefaction {i} speeds do not increase")
            if abs(lam[0] - lo) > 1e-12 or abs(lam[1] - hi) > 1e-9:
                problems.append(f"rarefaction {i} fan edges differ from the eigenvalues")
    fams = [w.family for w in ws.waves]
    if len(set(fams)) != len(fams):
        problems.append("two waves of the same family")
    return problems
