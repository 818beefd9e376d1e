"""Command-line surface: classification, geometry export, zeros, predictions.

Exit codes: 0 success, 2 bad arguments, 3 unsupported parameter regime,
4 numerical failure.  Codes 3 and 4 print a JSON diagnostic to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import NumericalError, UnsupportedCaseError, VarJacobiError
from .params import ParamPair, classify
from .serialize import (
    FORMAT_TAG,
    contour_to_csv,
    contour_to_json,
    svg_scene,
    write_json,
    zeros_to_csv,
    zeros_to_json,
)


def _cmd_classify(args):
    tag = classify(ParamPair(args.A, args.B))
    print(str(tag))
    return 0


def _cmd_geometry(args):
    from .geometry import build_geometry, trace_level_curve

    pair = ParamPair(args.A, args.B)
    geo = build_geometry(pair)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    contours = list(geo.sigma) + list(geo.orth or [])
    if args.r is not None and args.r > 0:
        contours.append(trace_level_curve(pair, args.r, geometry=geo))
    doc = {
        "format": FORMAT_TAG,
        "A": args.A,
        "B": args.B,
        "case": str(geo.case),
        "zeta1": [geo.bp.zeta1.real, geo.bp.zeta1.imag],
        "zeta2": [geo.bp.zeta2.real, geo.bp.zeta2.imag],
        "x_star": geo.x_star,
        "contours": [contour_to_json(c) for c in contours],
    }
    write_json(doc, out / "geometry.json")
    palette = ["#0057b7", "#b22222", "#2e8b57", "#8844aa", "#cc7700"]
    for i, c in enumerate(contours):
        name = c.kind.lower() + (f"_r{c.r:g}" if c.kind == "GammaR" else "")
        contour_to_csv(c, out / f"{name}.csv")
    svg_scene([(c, palette[i % len(palette)]) for i, c in enumerate(contours)],
              [(np.array([geo.bp.zeta1, geo.bp.zeta2, 1.0, -1.0]), "#000000")],
              out / "geometry.svg")
    print(f"wrote geometry for case {geo.case} to {out}")
    return 0


def _cmd_zeros(args):
    from .engine import build_poly, find_zeros

    spec = build_poly(args.n, args.alpha, args.beta)
    zs = find_zeros(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    zeros_to_csv(zs, out / "zeros.csv")
    write_json(zeros_to_json(zs), out / "zeros.json")
    print(f"wrote {args.n} zeros (residual {zs.residual:.2e}) to {out}")
    return 0


def _cmd_predict(args):
    from .asympt import airy_predict, locate_region, predict, Region
    from .fields import FieldContext

    re, im = (float(t) for t in args.z.split(","))
    z = complex(re, im)
    pair = ParamPair(args.alpha / args.n, args.beta / args.n)
    ctx = FieldContext(pair)
    region = locate_region(ctx, z, args.side)
    if region in (Region.AIRY_1, Region.AIRY_2):
        pred = airy_predict(ctx, args.n, z, args.side)
    else:
        pred = predict(ctx, args.n, z, args.side)
    doc = {
        "format": FORMAT_TAG,
        "n": args.n,
        "alpha": args.alpha,
        "beta": args.beta,
        "z": [z.real, z.imag],
        "region": pred.region.value,
        "value": [float(complex(pred.value).real), float(complex(pred.value).imag)],
        "terms": {k: [float(complex(v).real), float(complex(v).imag)]
                  for k, v in pred.terms},
        "claimed_rel_error_order": pred.rel_error_order,
    }
    json.dump(doc, sys.stdout, indent=1)
    print()
    return 0


def _cmd_validate(args):
    from .engine import build_poly, counting_measure, find_zeros
    from .fields import FieldContext
    from .scenarios import Scenario
    from .validation import RParameter, compare_weak, estimate_r, mass_identities

    sc = Scenario.load(args.scenario)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    ctx = FieldContext(ParamPair(sc.A, sc.B))
    runs = []
    for n in sc.degrees:
        alpha, beta = sc.alpha_rule(n), sc.beta_rule(n)
        zs = find_zeros(build_poly(n, alpha, beta))
        if sc.r is not None:
            r_param = RParameter(sc.r, "given")
        else:
            r_param = estimate_r(alpha, n)
        r_use = r_param.r
        rep = compare_weak(counting_measure(zs), ctx, r_param)
        masses = mass_identities(ctx, 0.0 if math.isinf(r_use) else r_use)
        runs.append({
            "n": n,
            "alpha": alpha,
            "beta": beta,
            "r": r_use,
            "discrepancy": vars(rep),
            "masses": {k: v for k, v in vars(masses).items()},
        })
        zeros_to_csv(zs, out / f"zeros_n{n}.csv")
    doc = {"format": FORMAT_TAG, "scenario": sc.name, "A": sc.A, "B": sc.B, "runs": runs}
    write_json(doc, out / "validation.json")
    print(f"validated scenario {sc.name}: {len(runs)} run(s) -> {out}")
    return 0


def _cmd_figures(args):
    from .engine import build_poly, find_zeros
    from .geometry import build_geometry, trace_level_curve
    from .validation import estimate_r

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    from .scenarios import PAPER_SET

    for sc in PAPER_SET:
        pair = ParamPair(sc.A, sc.B)
        geo = build_geometry(pair)
        n = sc.degrees[0]
        alpha, beta = sc.alpha_rule(n), sc.beta_rule(n)
        zs = find_zeros(build_poly(n, alpha, beta))
        contours = [(c, "#0057b7") for c in geo.sigma]
        r_hat = estimate_r(alpha, n).r
        if str(geo.case) == "C3" and math.isfinite(r_hat) and r_hat > 0:
            contours.append((trace_level_curve(pair, r_hat, geometry=geo), "#2e8b57"))
        zeros_to_csv(zs, out / f"{sc.name}_zeros.csv")
        write_json(zeros_to_json(zs), out / f"{sc.name}_zeros.json")
        svg_scene(contours, [(zs.as_complex(), "#b22222")], out / f"{sc.name}.svg")
        print(f"{sc.name}: n={n} zeros + contours written")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="varjacobi",
        description="Jacobi polynomials with degree-proportional parameters: "
                    "trajectories, limit measures, strong asymptotics, zeros.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="region tag of the (A,B) parameter point")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("geometry", help="branch points and contours -> CSV/JSON/SVG")
    p.add_argument("--A", type=float, required=True)
    p.add_argument("--B", type=float, required=True)
    p.add_argument("--r", type=float, default=None, help="also trace the level-r loop")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_geometry)

    p = sub.add_parser("zeros", help="multiprecision zeros -> CSV/JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_zeros)

    p = sub.add_parser("predict", help="strong-asymptotics value at one point")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--z", required=True, help="RE,IM")
    p.add_argument("--side", choices=["plus", "minus"], default=None)
    p.set_defaults(fn=_cmd_predict)

    p = sub.add_parser("validate", help="scenario file -> weak-asymptotics report")
    p.add_argument("--scenario", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("figures", help="built-in degree-100 zero-cloud scenarios")
    p.add_argument("--paper-set", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=_cmd_figures)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "side", None):
        args.side = {"plus": "+", "minus": "-"}[args.side]
    try:
        return args.fn(args)
    except UnsupportedCaseError as exc:
        json.dump({"error": "unsupported case", "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 3
    except (NumericalError, VarJacobiError) as exc:
        json.dump({"error": type(exc).__name__, "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 4
    except ValueError as exc:
        json.dump({"error": "bad arguments", "detail": str(exc)}, sys.stderr)
        sys.stderr.write("\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
