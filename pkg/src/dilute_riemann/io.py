"""CSV / JSON emission.  Floats use the shortest round-trip repr."""
from __future__ import annotations

import json
import math
from typing import Iterable, TextIO

import numpy as np

CURVE_HEADER = "h,n,lambda1,lambda2,s,adm1,adm2"
GRID_HEADER = "x,h,n"


def fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    x = float(x)
    if math.isnan(x):
        return "nan"
    return repr(x)


def comment_header(config: dict) -> str:
    return "".join(f"# {k}={_cfg_value(v)}\n" for k, v in config.items())


def _cfg_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return ",".join(_cfg_value(x) for x in v)
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def _rows(columns: Iterable) -> str:
    return "".join(",".join(fmt(v) for v in row) + "\n" for row in zip(*columns))


def curve_csv(curve, config: dict | None = None) -> str:
    meta = {"kind": curve.kind, "anchor": [curve.anchor.h, curve.anchor.n]}
    meta.update(config or {})
    cols = (curve.h, curve.n, curve.lambda1, curve.lambda2, curve.s, curve.adm1, curve.adm2)
    return comment_header(meta) + CURVE_HEADER + "\n" + _rows(cols)


def profile_csv(x, h, n, config: dict | None = None) -> str:
    return comment_header(config or {}) + GRID_HEADER + "\n" + _rows((x, h, n))


def grid_csv(g, p, cfl: float, config: dict | None = None) -> str:
    meta = {"t": float(g.t), "N": g.cells, "cfl": float(cfl), "C": float(p.C)}
    meta.update(config or {})
    return profile_csv(g.centers, g.h, g.n, meta)


def profile_json(x, h, n, config: dict | None = None) -> str:
    d = {"config": config or {}, "x": list(map(float, x)), "h": list(map(float, h)),
         "n": list(map(float, n))}
    return json.dumps(d, indent=2) + "\n"


def read_csv(text: str) -> tuple[dict, dict[str, np.ndarray]]:
    """Parse a file written by this module into (header dict, columns)."""
    meta, names, rows = {}, None, []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            k, _, v = line[1:].strip().partition("=")
            meta[k] = v
        elif names is None:
            names = line.split(",")
        else:
            rows.append(line.split(","))
    cols = {}
    for j, name in enumerate(names or []):
        vals = [r[j] for r in rows]
        if vals and vals[0] in ("true", "false"):
            cols[name] = np.array([v == "true" for v in vals])
        else:
            cols[name] = np.array([float(v) for v in vals])
    return meta, cols


def write_text(path, text: str, stream: TextIO | None = None) -> None:
    if path is None:
        (stream).write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
