import xml.etree.ElementTree as ET
from fractions import Fraction as F
from pathlib import Path

import numpy as np
import pytest

from c0dynamo import LayoutParams, SequenceSpec, assemble, build_witness
from c0dynamo.layout import dyadic_point, midline, quarter_radius
from c0dynamo.serialization import loads
from c0dynamo.svg import MAX_DEPTH, render_displacement, render_layout, render_orbit

HERE = Path(__file__).parent
NS = {"s": "http://www.w3.org/2000/svg"}
SCALE, PAD = 520, 40


def elements(svg):
    root = ET.fromstring(svg.encode())
    return {e.get("id"): e for e in root.iter() if e.get("id")}


def half_system(d=2):
    return assemble(LayoutParams(d), SequenceSpec.constant("1/2"))


def test_layout_geometry():
    els = elements(render_layout(half_system(), 3))
    for n in range(1, 8):
        x = float(els[f"strip-line-{n}"].get("x1"))
        assert x == pytest.approx(PAD + SCALE / n, abs=1e-4)
    for n in range(2, 7):
        c = els[f"disk-{n}"]
        assert float(c.get("cx")) == pytest.approx(PAD + SCALE * float(midline(n)), abs=1e-4)
        last = F(1, 2) if n % 2 == 0 else dyadic_point(n // 2)
        assert float(c.get("cy")) == pytest.approx(PAD + SCALE * (1 - float(last)), abs=1e-4)
        assert float(c.get("r")) == pytest.approx(SCALE * float(quarter_radius(n)), abs=1e-4)
    assert "disk-7" not in els and "legend" not in els


def test_witness_arrows():
    a = SequenceSpec.periodic(["1/2", "1/4"], ["1/4", "3/4"])
    b = SequenceSpec.periodic(["3/8", "3/4"], ["1/4", "3/4"])
    els = elements(render_layout(build_witness(a, b, LayoutParams(2)), 3))
    assert F(els["arrow-2"].get("data-length")) == F(1, 8)
    assert F(els["arrow-4"].get("data-length")) == F(1, 2)
    for n in (2, 4):
        y1, y2 = float(els[f"arrow-{n}"].get("y1")), float(els[f"arrow-{n}"].get("y2"))
        assert abs(y1 - y2) == pytest.approx(SCALE * float(F(els[f"arrow-{n}"].get("data-length"))), abs=1e-3)
    assert "box-6" not in els


def test_projection_legend_for_d3():
    els = elements(render_layout(half_system(3), 2))
    assert els["legend"].text == "projection onto coordinates (1, 3)"


def test_depth_limits():
    with pytest.raises(ValueError):
        render_layout(half_system(), MAX_DEPTH + 1)
    with pytest.raises(ValueError):
        render_layout(half_system(), 0)
    with pytest.raises(TypeError):
        render_layout(object(), 2)


def test_repeatable_bytes():
    S = half_system()
    assert render_layout(S, 4) == render_layout(half_system(), 4)


@pytest.mark.parametrize(
    "golden,source,kind,depth",
    [
        ("layout_half_depth3.svg", "system_half.json", "system", 3),
        ("witness_ab_depth3.svg", "witness_ab.json", "witness", 3),
        ("layout_d3_depth2.svg", "system_d3.json", "system", 2),
    ],
)
def test_golden_files(golden, source, kind, depth):
    obj = loads((HERE / "data" / source).read_text(), kind)
    assert render_layout(obj, depth) == (HERE / "golden" / golden).read_text()


def test_orbit_and_displacement_plots():
    pts = np.array([[0.4, 0.5], [0.41, 0.49], [0.42, 0.5]])
    els = elements(render_orbit(pts))
    assert {"pt-0", "pt-1", "pt-2", "legend"} <= set(els)
    svg = render_displacement(np.linspace(0, 1, 5), np.array([0, 0.1, 0.2, 0.1, 0]))
    assert elements(svg)["scan"].get("points").count(",") == 5
    assert render_orbit(pts) == render_orbit(pts.copy())
