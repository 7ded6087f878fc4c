"""Images of a polar mesh (concentric circles and radial segments) under a map.

Scenes are written as static SVG (y axis flipped so the picture has the
mathematical orientation) or as CSV with one row per sample point.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .curves import polyline_segments
from .series import fmt_float

DEFAULT_CIRCLES = 8
DEFAULT_SEGMENTS = 16
DEFAULT_POINTS = 256
DEFAULT_RMAX = 0.97
DEFAULT_CLIP = 20.0


class RenderError(RuntimeError):
    pass


@dataclass(frozen=True)
class Curve:
    kind: str  # "circle" or "radial"
    param: float  # radius of a circle, angle of a radial segment
    t: np.ndarray  # curve parameter (angle on circles, radius on radials)
    points: np.ndarray
    closed: bool = False


@dataclass(frozen=True)
class RenderScene:
    curves: list = field(default_factory=list)

    @property
    def point_count(self) -> int:
        return sum(len(c.points) for c in self.curves)

    @property
    def viewbox(self):
        """``(xmin, ymin, width, height)`` in mathematical coordinates, 5% padding."""
        if not self.curves:
            return (-1.0, -1.0, 2.0, 2.0)
        pts = np.concatenate([c.points for c in self.curves])
        xmin, xmax = pts.real.min(), pts.real.max()
        ymin, ymax = pts.imag.min(), pts.imag.max()
        w = max(xmax - xmin, 1e-9)
        h = max(ymax - ymin, 1e-9)
        pad_x, pad_y = 0.05 * w, 0.05 * h
        return (xmin - pad_x, ymin - pad_y, w + 2 * pad_x, h + 2 * pad_y)


def _clip_runs(t, w, clip):
    """Split a sampled curve into runs of consecutive points with ``|w| <= clip``."""
    ok = np.isfinite(w) & (np.abs(w) <= clip)
    if ok.all():
        return [(t, w)]
    runs = []
    idx = np.flatnonzero(ok)
    if len(idx) == 0:
        return runs
    breaks = np.flatnonzero(np.diff(idx) > 1) + 1
    for run in np.split(idx, breaks):
        if len(run) >= 2:
            runs.append((t[run], w[run]))
    return runs


def sample_polar_mesh(f, circles: int = DEFAULT_CIRCLES, segments: int = DEFAULT_SEGMENTS,
                      points_per_curve: int = DEFAULT_POINTS, r_max: float = DEFAULT_RMAX,
                      clip: float | None = DEFAULT_CLIP) -> RenderScene:
    """Map ``circles`` circles and ``segments`` radii of the disk ``|z| <= r_max`` through ``f``."""
    if circles < 1 or segments < 2 or points_per_curve < 16:
        raise ValueError("need circles >= 1, segments >= 2, points_per_curve >= 16")
    if not 0.0 < r_max < 1.0:
        raise ValueError("r_max must lie in (0, 1)")
    clip = np.inf if clip is None else clip
    out = []
    theta = np.linspace(0.0, 2 * np.pi, points_per_curve)
    for j in range(1, circles + 1):
        rho = j * r_max / circles
        try:
            w = np.asarray(f(rho * np.exp(1j * theta)), dtype=np.complex128)
        except Exception as exc:
            raise RenderError(f"evaluating circle {j} (r={rho:g}) failed: {exc}") from exc
        runs = _clip_runs(theta, w, clip)
        whole = len(runs) == 1 and len(runs[0][0]) == points_per_curve
        out.extend(Curve("circle", rho, t, pts, closed=whole) for t, pts in runs)
    radius = np.linspace(0.0, r_max, points_per_curve)
    for m in range(segments):
        ang = 2 * np.pi * m / segments
        try:
            w = np.asarray(f(radius * np.exp(1j * ang)), dtype=np.complex128)
        except Exception as exc:
            raise RenderError(f"evaluating radial segment {m} (angle={ang:g}) failed: {exc}") from exc
        out.extend(Curve("radial", ang, t, pts) for t, pts in _clip_runs(radius, w, clip))
    return RenderScene(out)


# -- mesh regression ---------------------------------------------------------

def mesh_crossings(scene: RenderScene, origin_image: complex = 0j, tol: float = 1e-9):
    """Mesh-curve intersections that a univalent map cannot produce.

    Flags self-intersections of any curve, any meeting of two distinct
    circle images, and any meeting of two radial images away from the image
    of the origin.  Radial/circle meetings are expected and ignored.
    Returns a list of ``(curve_a, curve_b)`` index pairs.
    """
    starts, ends, links, owner = [], [], [], []
    offset = 0
    for ci, c in enumerate(scene.curves):
        s, e, link = polyline_segments(c.points[:-1] if c.closed else c.points, c.closed)
        link = np.where(link >= 0, link + offset, -1)
        starts.append(s)
        ends.append(e)
        links.append(link)
        owner.append(np.full(len(s), ci))
        offset += len(s)
    if not starts:
        return []
    start = np.concatenate(starts)
    end = np.concatenate(ends)
    owner = np.concatenate(owner)
    pairs = kernels.intersecting_pairs(start, end, np.concatenate(links))

    scale = max(1.0, float(np.max(np.abs(np.concatenate([start, end])))))
    bad = set()
    for i, j in pairs:
        a, b = int(owner[i]), int(owner[j])
        ka, kb = scene.curves[a].kind, scene.curves[b].kind
        if a != b and ka != kb:
            continue
        if a != b and ka == "radial":
            near = min(abs(p - origin_image) for p in (start[i], end[i], start[j], end[j]))
            if near <= tol * scale:
                continue
        bad.add((min(a, b), max(a, b)))
    return sorted(bad)


# -- output ------------------------------------------------------------------

def _path_d(points, flip=True):
    ys = -points.imag if flip else points.imag
    coords = [f"{fmt_float(x)},{fmt_float(y)}" for x, y in zip(points.real, ys)]
    return "M" + " L".join(coords)


def _svg_body(scene: RenderScene) -> tuple[str, tuple]:
    xmin, ymin, w, h = scene.viewbox
    # flipped y: the box spans [-(ymin + h), -ymin]
    box = (xmin, -(ymin + h), w, h)
    stroke = 0.005 * max(w, h)
    lines = [
        f'<path class="{c.kind}" d="{_path_d(c.points)}" fill="none" stroke="black" '
        f'stroke-width="{fmt_float(stroke)}"/>'
        for c in scene.curves
    ]
    return "\n".join(lines), box


def svg_text(scene: RenderScene, width: int = 400) -> str:
    body, box = _svg_body(scene)
    height = max(1, int(round(width * box[3] / box[2])))
    vb = " ".join(fmt_float(v) for v in box)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="{vb}">\n{body}\n</svg>\n'
    )


def emit_svg(scene: RenderScene, path) -> None:
    Path(path).write_text(svg_text(scene), encoding="utf-8")


def figure_svg(panels, columns: int = 2, panel_size: int = 300) -> str:
    """Several scenes tiled in one SVG; ``panels`` is a list of ``(id, label, scene)``."""
    rows = (len(panels) + columns - 1) // columns
    label_h = 24
    total_w = columns * panel_size
    total_h = rows * (panel_size + label_h)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{total_w}" '
        f'height="{total_h}" viewBox="0 0 {total_w} {total_h}">',
    ]
    for k, (pid, label, scene) in enumerate(panels):
        x = (k % columns) * panel_size
        y = (k // columns) * (panel_size + label_h)
        body, box = _svg_body(scene)
        vb = " ".join(fmt_float(v) for v in box)
        parts.append(
            f'<svg id="{pid}" x="{x}" y="{y}" width="{panel_size}" height="{panel_size}" '
            f'viewBox="{vb}" preserveAspectRatio="xMidYMid meet">\n{body}\n</svg>'
        )
        parts.append(
            f'<text x="{x + panel_size / 2}" y="{y + panel_size + 17}" text-anchor="middle" '
            f'font-family="serif" font-size="14">{label}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def csv_text(scene: RenderScene) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["curve_id", "kind", "param", "t", "re", "im"])
    for ci, c in enumerate(scene.curves):
        for t, p in zip(c.t, c.points):
            w.writerow([ci, c.kind, fmt_float(c.param), fmt_float(t), fmt_float(p.real), fmt_float(p.imag)])
    return buf.getvalue()


def emit_csv(scene: RenderScene, path) -> None:
    Path(path).write_text(csv_text(scene), encoding="utf-8")


def read_csv(path) -> RenderScene:
    """Parse a scene written by :func:`emit_csv`."""
    rows = list(csv.DictReader(io.StringIO(Path(path).read_text(encoding="utf-8"))))
    grouped = {}
    for r in rows:
        grouped.setdefault(int(r["curve_id"]), []).append(r)
    out = []
    for ci in sorted(grouped):
        rs = grouped[ci]
        t = np.array([float(r["t"]) for r in rs])
        pts = np.array([complex(float(r["re"]), float(r["im"])) for r in rs])
        out.append(Curve(rs[0]["kind"], float(rs[0]["param"]), t, pts))
    return RenderScene(out)
