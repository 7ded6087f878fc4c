"""The figure gallery: which maps appear in which panel, and how names resolve to evaluators."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from . import gallery
from .harmonic import HarmonicMap, convolve
from .render import figure_svg, mesh_crossings, sample_polar_mesh

# series order used when a convolution has no closed form; tail at r=0.97 is ~1e-20
RENDER_ORDER = 2048


@dataclass(frozen=True)
class Panel:
    panel_id: str
    label: str
    map_name: str
    univalent: bool


def _panels(fig, specs):
    return [Panel(f"{fig}{chr(ord('a') + i)}", label, name, uni) for i, (label, name, uni) in enumerate(specs)]


FIGURES = {
    "fig1": _panels("fig1", [(lbl, n, "*" in n) for n in ("p2", "p2*p2", "p3", "p3*p3", "p4", "p4*p4")
                             for lbl in [n.replace("*", " * ")]]),
    "fig2": _panels("fig2", [(n.replace("*", " * "), n, True) for n in
                             ("gamma1", "gamma1*gamma1", "gamma2", "gamma2*gamma2", "gamma3", "gamma3*gamma3")]),
    "fig3": _panels("fig3", [("gamma1 * ex2_7", "gamma1*ex2_7", True)]),
    "fig4": _panels("fig4", [("ex2_10", "ex2_10", True), ("gamma1 * ex2_10", "gamma1*ex2_10", True)]),
    "fig5": _panels("fig5", [("F", "F", True), ("gamma1 * F", "gamma1*F", True)]),
    "fig6": _panels("fig6", [("gamma1 * K", "gamma1*K", True)]),
    "fig7": _panels("fig7", [(n.replace("*", " * "), n, "*" in n) for n in
                             ("q2", "q3", "q4", "p2*q2", "p3*q3", "p4*q4")]),
    "fig8": _panels("fig8", [(n.replace("*", " * "), n, True) for n in
                             ("psi1", "psi2", "psi3", "gamma1*psi1", "gamma2*psi2", "gamma3*psi3")]),
    "fig9": _panels("fig9", [("gamma1 * ex3_6", "gamma1*ex3_6", True)]),
    "fig10": _panels("fig10", [("alexander(L)", "gamma1*L", True)]),
}


def load_map(spec: str, order: int) -> HarmonicMap:
    """A gallery name or a path to a HarmonicMap CSV, as a series of the given order."""
    path = Path(spec)
    if path.suffix == ".csv" or path.exists():
        return HarmonicMap.from_csv(path.read_text(encoding="utf-8")).resized(order)
    return gallery.make_entry(spec, order).series


def resolve_evaluator(spec: str, order: int = RENDER_ORDER):
    """Pointwise evaluator for ``name``, ``a*b``, ``conv:a,b`` or a CSV file.

    Closed forms are preferred; anything else is evaluated from its series.
    """
    if spec.startswith("conv:"):
        spec = "*".join(s.strip() for s in spec[len("conv:"):].split(","))
    spec = gallery.CONVOLUTION_ALIASES.get(spec, spec)
    if "*" in spec:
        try:
            return gallery.closed_form_convolutions(spec)
        except gallery.UnknownMapError:
            left, right = spec.split("*", 1)
            return convolve(load_map(left, order), load_map(right, order))
    if Path(spec).suffix == ".csv" or Path(spec).exists():
        return load_map(spec, order)
    return gallery.make_entry(spec, min(order, 64)).closed_form


def render_figures(outdir, check: bool = False, **mesh):
    """Write ``fig1.svg`` .. ``fig10.svg``; with ``check`` also return mesh crossings per panel."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written, problems = [], {}
    for fig, panels in FIGURES.items():
        tiles = []
        for p in panels:
            scene = sample_polar_mesh(resolve_evaluator(p.map_name), **mesh)
            tiles.append((p.panel_id, p.label, scene))
            if check and p.univalent:
                problems[p.panel_id] = mesh_crossings(scene)
        target = outdir / f"{fig}.svg"
        target.write_text(figure_svg(tiles, columns=2 if len(tiles) > 1 else 1), encoding="utf-8")
        written.append(target)
    return written, problems
