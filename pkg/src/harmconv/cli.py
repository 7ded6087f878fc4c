"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage errors.
"""
from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import gallery, render
from .figures import RENDER_ORDER, load_map, render_figures, resolve_evaluator
from .harmonic import Direction, HarmonicMap, convolve, shear
from .series import AnalyticSeries, default_order, order_for_radius
from .verify import (
    DEFAULT_ANGLES,
    DEFAULT_RADII,
    DEFAULT_RMAX,
    BOUNDARY_SAMPLES,
    ClassMembershipError,
    DiskGrid,
    Pipeline,
    reports_json,
    run_theorem,
)


class UsageError(Exception):
    pass


def _order(args) -> int:
    return args.order if args.order is not None else default_order()


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _analytic(spec: str, order: int) -> AnalyticSeries:
    """Analytic function by name (z, l, koebe, z^k), gallery class target, or k,re,im CSV."""
    spec = spec.strip()
    if spec in ("z", "identity"):
        return AnalyticSeries.identity(order)
    if spec == "l":
        return gallery.halfplane_series(order)
    if spec == "koebe":
        return gallery.koebe_series(order)
    m = re.fullmatch(r"z\^?(\d+)", spec)
    if m:
        return AnalyticSeries.monomial(int(m.group(1)), order)
    path = Path(spec)
    if path.exists():
        return AnalyticSeries.from_csv(path.read_text(encoding="utf-8")).resized(order)
    try:
        entry = gallery.make_entry(spec, order)
    except gallery.UnknownMapError as exc:
        raise UsageError(str(exc)) from None
    if entry.tag is None:
        raise UsageError(f"{spec} has no class target to use as an analytic function")
    return entry.tag.target


def _dilatation(tokens: list[str], order: int) -> AnalyticSeries:
    if len(tokens) == 2 and tokens[0] == "monomial":
        return AnalyticSeries.monomial(int(tokens[1]), order)
    if len(tokens) != 1:
        raise UsageError("--dilatation takes a name, z^k, an integer k, 'monomial k' or a CSV file")
    tok = tokens[0]
    if tok.isdigit():
        return AnalyticSeries.monomial(int(tok), order)
    return _analytic(tok, order)


def _map(spec: str, order: int) -> HarmonicMap:
    try:
        return load_map(spec, order)
    except gallery.UnknownMapError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -----------------------------------------------------------------

def cmd_coeffs(args) -> int:
    f = _map(args.name, _order(args))
    if args.part == "h":
        _emit(f.h.to_csv(), args.out)
    elif args.part == "g":
        _emit(f.g.to_csv(), args.out)
    else:
        _emit(f.to_csv(), args.out)
    return 0


def cmd_construct(args) -> int:
    order = _order(args)
    phi = _analytic(args.phi, order)
    w = _dilatation(args.dilatation, order)
    _emit(shear(phi, w, Direction(args.direction)).to_csv(), args.out)
    return 0


def cmd_convolve(args) -> int:
    order = _order(args)
    _emit(convolve(_map(args.left, order), _map(args.right, order)).to_csv(), args.out)
    return 0


def cmd_check(args) -> int:
    # series must be accurate on |z| <= rmax, so the order grows with rmax
    order = args.order if args.order is not None else max(default_order(), order_for_radius(args.rmax))
    names = [s.strip() for s in args.inputs.split(",") if s.strip()]
    maps = [_map(n, order) for n in names]
    phi = _analytic(args.phi, order) if args.phi else None
    grid = DiskGrid.geometric(args.rmax, args.radii, args.angles)
    try:
        reports = run_theorem(args.pipeline, maps, phi=phi, grid=grid, labels=names,
                              boundary_samples=args.samples)
    except ClassMembershipError as exc:
        print(f"error: {exc}", file=sys.stderr)
        reports = [exc.report]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "json":
        print(reports_json(reports))
    else:
        for r in reports:
            print(r.to_text())
    return 0 if all(r.passed for r in reports) else 1


def _mesh_kwargs(args) -> dict:
    return dict(circles=args.circles, segments=args.segments, points_per_curve=args.points,
                r_max=args.rmax, clip=None if args.clip <= 0 else args.clip)


def cmd_render(args) -> int:
    try:
        f = resolve_evaluator(args.map, args.order or RENDER_ORDER)
    except gallery.UnknownMapError as exc:
        raise UsageError(str(exc)) from None
    scene = render.sample_polar_mesh(f, **_mesh_kwargs(args))
    render.emit_svg(scene, args.out)
    if args.csv:
        render.emit_csv(scene, args.csv)
    return 0


def cmd_figures(args) -> int:
    written, problems = render_figures(args.out, check=args.check, **_mesh_kwargs(args))
    for p in written:
        print(p)
    bad = {k: v for k, v in problems.items() if v}
    for k, v in bad.items():
        print(f"{k}: {len(v)} mesh crossing(s)", file=sys.stderr)
    return 1 if bad else 0


# -- parser --------------------------------------------------------------------

def _add_order(p):
    p.add_argument("--order", type=int, default=None,
                   help="truncation order (default: $HARMCONV_ORDER or 64)")


def _add_mesh(p):
    p.add_argument("--circles", type=int, default=render.DEFAULT_CIRCLES)
    p.add_argument("--segments", type=int, default=render.DEFAULT_SEGMENTS)
    p.add_argument("--points", type=int, default=render.DEFAULT_POINTS, help="points per curve")
    p.add_argument("--rmax", type=float, default=render.DEFAULT_RMAX)
    p.add_argument("--clip", type=float, default=render.DEFAULT_CLIP,
                   help="drop image points with |w| above this (<= 0 disables)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmconv", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="dump the series of a gallery map or CSV file")
    p.add_argument("name")
    _add_order(p)
    p.add_argument("--part", choices=["h", "g"], help="dump one analytic part as k,re,im")
    p.add_argument("--out")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("construct", help="shear an analytic function with a given dilatation")
    p.add_argument("--phi", required=True)
    p.add_argument("--dilatation", required=True, nargs="+")
    p.add_argument("--direction", choices=["real", "imag"], default="real")
    _add_order(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("convolve", help="harmonic convolution of two maps")
    p.add_argument("left")
    p.add_argument("right")
    _add_order(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("check", help="run a theorem pipeline on concrete maps")
    p.add_argument("pipeline", choices=[x.value for x in Pipeline])
    p.add_argument("--inputs", required=True, help="comma-separated gallery names or CSV files")
    p.add_argument("--phi", help="class target (default: inferred from the last input)")
    p.add_argument("--rmax", type=float, default=DEFAULT_RMAX)
    p.add_argument("--radii", type=int, default=DEFAULT_RADII)
    p.add_argument("--angles", type=int, default=DEFAULT_ANGLES)
    p.add_argument("--samples", type=int, default=BOUNDARY_SAMPLES, help="boundary samples")
    p.add_argument("--order", type=int, default=None,
                   help="truncation order (default: large enough for --rmax)")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("render", help="draw the image of a polar mesh as SVG")
    p.add_argument("map", help="gallery name, a*b, conv:a,b, or HarmonicMap CSV")
    p.add_argument("--out", required=True)
    p.add_argument("--csv")
    p.add_argument("--order", type=int, default=None)
    _add_mesh(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("figures", help="regenerate fig1.svg .. fig10.svg")
    p.add_argument("--out", required=True)
    p.add_argument("--check", action="store_true", help="also run the mesh-crossing regression")
    _add_mesh(p)
    p.set_defaults(func=cmd_figures)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
