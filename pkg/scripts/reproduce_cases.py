"""Reproduce the two settled-regime Riemann cases and the anchor (1, 0.1) locus tables.

Writes the curve tables, the solved wave structures and exact profiles
under ``--out`` (default ``runs/cases``) and prints a short summary.
"""
import argparse
import math
import os

import numpy as np

from dilute_riemann import cases, io
from dilute_riemann.fvm import Grid1D, riemann_sampler
from dilute_riemann.riemann import solve_riemann, sequence_mark
from dilute_riemann.waves import hugoniot_locus, rarefaction2_curve


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="runs/cases")
    ap.add_argument("--count", type=int, default=400)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    p = cases.PARAMS
    cfg = {"C": p.C}

    locus = hugoniot_locus(cases.SHOCK_LEFT, p, (0.01, 1.5), args.count)
    io.write_text(os.path.join(args.out, "hugoniot_1_0.1.csv"), io.curve_csv(locus, cfg))
    r2 = rarefaction2_curve(cases.RAREFACTION_LEFT, p, (0.4, 1.0), args.count)
    io.write_text(os.path.join(args.out, "rarefaction2_0.4_0.08.csv"), io.curve_csv(r2, cfg))

    print(f"1-admissible locus points: {int(locus.adm1.sum())} of {len(locus)}")
    band = (locus.h**2 > math.sqrt(1 / 46.14)) & (locus.h < 1)
    print(f"2-admissible inside the band: {int(locus.adm2[band].sum())} of {int(band.sum())}")

    for name, data, root, printed in (
        ("shock", cases.shock_data(), cases.solve_shock_case(), cases.PRINTED_N2S),
        ("rarefaction", cases.rarefaction_data(), cases.solve_rarefaction_case(), cases.PRINTED_N2R),
    ):
        ws = solve_riemann(data, p)
        io.write_text(os.path.join(args.out, f"{name}.json"),
                      ws.to_json(C=p.C, sequence=sequence_mark(ws)))
        x = Grid1D(-1.0, 2.0, np.zeros(600), np.zeros(600)).centers
        h, n = riemann_sampler(ws)(x, 1.0)
        io.write_text(os.path.join(args.out, f"{name}_profile.csv"),
                      io.profile_csv(x, h, n, {"C": p.C, "T": 1.0}))
        waves = ", ".join(f"{w.tag} {w.span}" for w in ws.waves)
        print(f"{name}: n2 = {root.root!r} ({root.iterations} it), printed {printed!r}, "
              f"diff {root.root - printed:+.2e}; waves: {waves}")


if __name__ == "__main__":
    main()
