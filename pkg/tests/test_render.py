import re
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from harmconv import gallery
from harmconv.figures import FIGURES, render_figures, resolve_evaluator
from harmconv.render import (
    RenderError,
    RenderScene,
    csv_text,
    emit_csv,
    emit_svg,
    mesh_crossings,
    read_csv,
    sample_polar_mesh,
    svg_text,
)

SVG = "{http://www.w3.org/2000/svg}"


def identity(z):
    return z


def test_identity_mesh_geometry():
    scene = sample_polar_mesh(identity, circles=2, segments=4, points_per_curve=32, r_max=0.8)
    circles = [c for c in scene.curves if c.kind == "circle"]
    radials = [c for c in scene.curves if c.kind == "radial"]
    assert len(circles) == 2 and len(radials) == 4
    assert np.allclose(np.abs(circles[1].points), 0.8)
    assert np.allclose(np.abs(circles[0].points), 0.4)
    for c in radials:
        assert abs(c.points[0]) == 0 and abs(c.points[-1]) == pytest.approx(0.8)
    assert scene.point_count == 6 * 32


def test_identity_svg_endpoints_on_circle(tmp_path):
    scene = sample_polar_mesh(identity, circles=3, segments=8, points_per_curve=64, r_max=0.97)
    out = tmp_path / "id.svg"
    emit_svg(scene, out)
    root = ET.parse(out).getroot()
    paths = root.findall(f"{SVG}path")
    assert len(paths) == 11
    for p in paths:
        if p.get("class") != "radial":
            continue
        x, y = map(float, re.findall(r"[-0-9.e]+,[-0-9.e]+", p.get("d"))[-1].split(","))
        assert abs(np.hypot(x, y) - 0.97) <= 1e-9


def test_empty_scene_svg():
    root = ET.fromstring(svg_text(RenderScene([])).split("\n", 1)[1])
    assert root.get("viewBox") == "-1 -1 2 2"
    assert root.findall(f"{SVG}path") == []


def test_svg_is_deterministic():
    a = svg_text(sample_polar_mesh(gallery.make_entry("gamma2").closed_form))
    b = svg_text(sample_polar_mesh(gallery.make_entry("gamma2").closed_form))
    assert a == b


def test_clipping_splits_unbounded_images():
    scene = sample_polar_mesh(gallery.make_entry("K").closed_form, r_max=0.97, clip=20)
    pts = np.concatenate([c.points for c in scene.curves])
    assert np.max(np.abs(pts)) <= 20
    assert any(not c.closed and c.kind == "circle" for c in scene.curves)


def test_evaluator_error_names_curve():
    def bad(z):
        raise ValueError("boom")

    with pytest.raises(RenderError, match="circle 1"):
        sample_polar_mesh(bad)


@pytest.mark.parametrize("kw", [dict(circles=0), dict(segments=1), dict(points_per_curve=8), dict(r_max=1.0)])
def test_bad_mesh_parameters(kw):
    with pytest.raises(ValueError):
        sample_polar_mesh(identity, **kw)


def test_csv_round_trip(tmp_path):
    scene = sample_polar_mesh(gallery.make_entry("p3").closed_form, circles=2, segments=3, points_per_curve=16)
    text = csv_text(scene)
    assert text.splitlines()[0] == "curve_id,kind,param,t,re,im"
    out = tmp_path / "m.csv"
    emit_csv(scene, out)
    back = read_csv(out)
    assert len(back.curves) == len(scene.curves)
    for a, b in zip(scene.curves, back.curves):
        assert a.kind == b.kind and np.array_equal(a.points, b.points) and np.array_equal(a.t, b.t)


def test_mesh_crossings():
    assert mesh_crossings(sample_polar_mesh(identity)) == []
    assert mesh_crossings(sample_polar_mesh(gallery.make_entry("p2").closed_form)) != []


def test_resolve_evaluator(tmp_path):
    cf = resolve_evaluator("gamma1*F")
    assert cf is gallery.closed_form_convolutions("gamma1*F")
    assert resolve_evaluator("conv:gamma1,F") is cf
    # no closed form: falls back to the series convolution
    f = resolve_evaluator("gamma2*F", 128)
    assert f.order == 128
    path = tmp_path / "m.csv"
    path.write_text(gallery.make_entry("p2", 8).series.to_csv())
    assert resolve_evaluator(str(path), 16)(0.3) == pytest.approx(0.39)
    with pytest.raises(gallery.UnknownMapError):
        resolve_evaluator("nope")


def test_figures(tmp_path):
    written, problems = render_figures(tmp_path, check=True)
    assert [p.name for p in written] == [f"fig{i}.svg" for i in range(1, 11)]
    assert all(v == [] for v in problems.values())
    root = ET.parse(tmp_path / "fig2.svg").getroot()
    ids = [e.get("id") for e in root.findall(f"{SVG}svg")]
    assert ids == [p.panel_id for p in FIGURES["fig2"]]
