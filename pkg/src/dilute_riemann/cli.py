"""Command-line interface.

    dilute-riemann curves   --left 1,0.1 --h-range 0.01:1.5:200 --out figs/
    dilute-riemann solve    --case shock --out run/
    dilute-riemann validate --case rarefaction

Settings come from built-in defaults, then an optional ``--config`` file of
``key=value`` lines (keys are the long flag names), then the flags.

Exit codes: 0 ok, 2 domain/usage error, 3 root-finding failure,
4 no admissible wave sequence, 5 validation failure.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import cases
from . import io
from .errors import DomainError, NoAdmissibleSolution, RootFindingError
from .film import film_height
from .fvm import Grid1D, evolve, refinement_study, riemann_sampler
from .model import ModelParams, State, check_structure, jacobian_eigensystem, require_omega
from .riemann import MEMBERSHIP_TOL, RiemannData, solve_riemann, sequence_mark
from .waves import hugoniot_locus, rarefaction1_curve, rarefaction2_curve

EXIT_OK, EXIT_DOMAIN, EXIT_ROOT, EXIT_NO_SOLUTION, EXIT_VALIDATION = 0, 2, 3, 4, 5


class ValidationFailed(Exception):
    pass


@dataclass
class RunConfig:
    C: float = cases.CASE_C
    left: Optional[tuple[float, float]] = None
    right: Optional[tuple[float, float]] = None
    h_range: tuple[float, float, int] = (0.01, 1.5, 200)
    grid: int = 1000
    domain: tuple[float, float] = (-1.0, 2.0)
    cfl: float = 0.8
    T: float = 1.0
    out: Optional[str] = None
    format: str = "csv"
    tol: float = MEMBERSHIP_TOL
    ladder: tuple[int, ...] = (500, 1000, 2000, 4000)
    threshold: float = 0.01
    perturb_speed: float = 0.0

    @property
    def params(self) -> ModelParams:
        return ModelParams(self.C)

    def state(self, which: str) -> State:
        v = getattr(self, which)
        if v is None:
            raise DomainError(f"--{which} h,n is required")
        U = State(*v)
        require_omega(U, f"{which} state")
        return U

    def header(self, *keys) -> dict:
        d = asdict(self)
        d.pop("out")
        keys = keys or tuple(d)
        return {k.replace("_", "-"): d[k] for k in keys if d[k] is not None}


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected h,n but got {text!r}")
    return float(parts[0]), float(parts[1])


def _interval(text: str) -> tuple[float, float]:
    lo, sep, hi = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected lo:hi but got {text!r}")
    return float(lo), float(hi)


def _h_range(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected lo:hi:count but got {text!r}")
    return float(parts[0]), float(parts[1]), int(parts[2])


def _ints(text: str) -> tuple[int, ...]:
    return tuple(int(v) for v in text.split(","))


PARSERS = {
    "C": float, "left": _pair, "right": _pair, "h_range": _h_range, "grid": int,
    "domain": _interval, "cfl": float, "T": float, "out": str, "format": str,
    "tol": float, "ladder": _ints, "threshold": float, "perturb_speed": float,
}


def read_config_file(path: str) -> dict:
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            key = key.strip().replace("-", "_")
            if not sep or key not in PARSERS and key != "case":
                raise DomainError(f"{path}:{lineno}: bad config line {raw.strip()!r}")
            values[key] = val.strip()
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--case", choices=("shock", "rarefaction"),
                        help="preset left/right states of a settled-regime data set")
    common.add_argument("--C", type=float, help="buoyancy parameter (default 2.307)")
    common.add_argument("--left", type=_pair, metavar="H,N")
    common.add_argument("--right", type=_pair, metavar="H,N")
    common.add_argument("--h-range", dest="h_range", type=_h_range, metavar="LO:HI:COUNT")
    common.add_argument("--grid", type=int, metavar="N", help="cells / sample points")
    common.add_argument("--domain", type=_interval, metavar="LO:HI")
    common.add_argument("--cfl", type=float)
    common.add_argument("--T", type=float, help="output time")
    common.add_argument("--out", help="output file (directory for curves/solve)")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--tol", type=float, help="curve-membership tolerance")

    parser = argparse.ArgumentParser(prog="dilute-riemann", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("curves", parents=[common], help="Hugoniot locus and rarefaction curves")
    sub.add_parser("solve", parents=[common], help="wave structure JSON and profile CSV")
    sub.add_parser("sample", parents=[common], help="exact profile at time T")
    sub.add_parser("simulate", parents=[common], help="finite-volume snapshot at time T")
    v = sub.add_parser("validate", parents=[common], help="finite-volume convergence check")
    v.add_argument("--ladder", type=_ints, metavar="N1,N2,...")
    v.add_argument("--threshold", type=float, help="largest acceptable finest-grid L1 error")
    v.add_argument("--perturb-speed", dest="perturb_speed", type=float,
                   help="shift the exact solution in x/t (negative control)")
    sub.add_parser("film-exact", parents=[common], help="dam-break film profile at time T")
    sub.add_parser("eigen", parents=[common], help="eigenstructure at the left state")
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig()
    merged = {}
    case = None
    if args.config:
        raw = read_config_file(args.config)
        case = raw.pop("case", None)
        merged.update({k: PARSERS[k](v) for k, v in raw.items()})
    case = args.case or case
    if case:
        data = cases.shock_data() if case == "shock" else cases.rarefaction_data()
        merged.setdefault("left", data.left.as_tuple())
        merged.setdefault("right", data.right.as_tuple())
    for k in PARSERS:
        v = getattr(args, k, None)
        if v is not None:
            merged[k] = v
    for k, v in merged.items():
        setattr(cfg, k, v)
    if cfg.format not in ("csv", "json"):
        raise DomainError(f"unknown format {cfg.format!r}")
    return cfg


def _emit(cfg: RunConfig, text: str) -> None:
    io.write_text(cfg.out, text, sys.stdout)


def _profile(cfg: RunConfig, x, h, n, header: dict) -> str:
    if cfg.format == "json":
        return io.profile_json(x, h, n, header)
    return io.profile_csv(x, h, n, header)


def _centers(cfg: RunConfig) -> np.ndarray:
    g = Grid1D(cfg.domain[0], cfg.domain[1], np.zeros(cfg.grid), np.zeros(cfg.grid))
    return g.centers


def cmd_eigen(cfg: RunConfig) -> int:
    U = cfg.state("left")
    p = cfg.params
    e = jacobian_eigensystem(U, p)
    st = check_structure(U, p)
    row = {"h": U.h, "n": U.n, "lambda1": e.lambda1, "lambda2": e.lambda2,
           "r1_h": e.r1[0], "r1_n": e.r1[1], "r2_h": e.r2[0], "r2_n": e.r2[1],
           "strictly_hyperbolic": st.strictly_hyperbolic,
           "gnl1": "undefined" if st.gnl_field1 is None else st.gnl_field1,
           "gnl2": st.gnl_field2}
    if cfg.format == "json":
        text = json.dumps({"config": cfg.header("C"), **row}, indent=2) + "\n"
    else:
        text = (io.comment_header(cfg.header("C")) + ",".join(row) + "\n"
                + ",".join(v if isinstance(v, str) else io.fmt(v) for v in row.values()) + "\n")
    _emit(cfg, text)
    return EXIT_OK


def cmd_curves(cfg: RunConfig) -> int:
    Up = cfg.state("left")
    p = cfg.params
    lo, hi, count = cfg.h_range
    header = cfg.header("C", "h_range")
    locus = hugoniot_locus(Up, p, (lo, hi), count)
    r1 = rarefaction1_curve(Up, p, count)
    files = {"hugoniot.csv": locus, "rarefaction1.csv": r1}
    if hi >= Up.h:
        files["rarefaction2.csv"] = rarefaction2_curve(Up, p, (lo, hi), count)
    outdir = cfg.out or "."
    os.makedirs(outdir, exist_ok=True)
    for name, curve in files.items():
        io.write_text(os.path.join(outdir, name), io.curve_csv(curve, header))
    return EXIT_OK


def _solve(cfg: RunConfig):
    data = RiemannData(cfg.state("left"), cfg.state("right"))
    return solve_riemann(data, cfg.params, cfg.tol)


def cmd_solve(cfg: RunConfig) -> int:
    ws = _solve(cfg)
    header = cfg.header("C", "tol", "T", "grid", "domain")
    outdir = cfg.out or "."
    os.makedirs(outdir, exist_ok=True)
    io.write_text(os.path.join(outdir, "solution.json"),
                  ws.to_json(C=cfg.C, sequence=sequence_mark(ws), config=header))
    x = _centers(cfg)
    h, n = riemann_sampler(ws)(x, cfg.T)
    io.write_text(os.path.join(outdir, "profile.csv"), io.profile_csv(x, h, n, header))
    return EXIT_OK


def cmd_sample(cfg: RunConfig) -> int:
    ws = _solve(cfg)
    x = _centers(cfg)
    h, n = riemann_sampler(ws)(x, cfg.T)
    _emit(cfg, _profile(cfg, x, h, n, cfg.header("C", "tol", "T", "grid", "domain")))
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    L, R = cfg.state("left"), cfg.state("right")
    g = evolve(Grid1D.riemann(L, R, cfg.grid, *cfg.domain), cfg.T, cfg.params, cfg.cfl)
    header = {"t": g.t, "N": g.cells, "cfl": cfg.cfl, "C": cfg.C, "domain": cfg.domain}
    _emit(cfg, _profile(cfg, g.centers, g.h, g.n, header))
    return EXIT_OK


def cmd_film_exact(cfg: RunConfig) -> int:
    x = _centers(cfg)
    h = film_height(x, cfg.T)
    _emit(cfg, _profile(cfg, x, h, np.zeros_like(h), cfg.header("T", "grid", "domain")))
    return EXIT_OK


def cmd_validate(cfg: RunConfig) -> int:
    ws = _solve(cfg)
    L, R = ws.left, ws.right
    exact = riemann_sampler(ws.shifted(cfg.perturb_speed) if cfg.perturb_speed else ws)
    study = refinement_study(lambda N: Grid1D.riemann(L, R, N, *cfg.domain), exact, cfg.T,
                             cfg.ladder, cfg.params, cfg.cfl)
    errors = study.errors
    orders = [math.nan] + study.orders
    monotone = study.monotone
    ok = monotone and errors[-1] < cfg.threshold
    header = cfg.header("C", "tol", "T", "domain", "cfl", "ladder", "threshold", "perturb_speed")
    header.update({"fitted-order": study.fitted_order, "monotone": monotone, "status": "pass" if ok else "fail"})
    if cfg.format == "json":
        text = json.dumps({"config": header, "N": list(cfg.ladder), "l1": errors,
                           "order": [None if math.isnan(o) else o for o in orders]},
                          indent=2) + "\n"
    else:
        text = io.comment_header(header) + "N,l1,order\n" + "".join(
            f"{N},{io.fmt(e)},{io.fmt(o)}\n" for N, e, o in zip(cfg.ladder, errors, orders))
    _emit(cfg, text)
    if not ok:
        raise ValidationFailed(text)
    return EXIT_OK


COMMANDS = {
    "curves": cmd_curves, "solve": cmd_solve, "sample": cmd_sample,
    "simulate": cmd_simulate, "validate": cmd_validate,
    "film-exact": cmd_film_exact, "eigen": cmd_eigen,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except (DomainError, ValueError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except RootFindingError as exc:
        print(f"root-finding failure: {exc}", file=sys.stderr)
        return EXIT_ROOT
    except NoAdmissibleSolution as exc:
        report = {"left": list(exc.left), "right": list(exc.right), "report": exc.report}
        print(json.dumps(report, indent=2, default=float), file=sys.stderr)
        return EXIT_NO_SOLUTION
    except ValidationFailed as exc:
        print("validation failed:\n" + str(exc), file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
