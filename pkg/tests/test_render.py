import re
import xml.etree.ElementTree as ET

import pytest

from midpoint_ellipse.geometry import EllipseSpec, GridStep
from midpoint_ellipse.render import CURVE_SAMPLES, pgm_size, render_comparison, render_pgm, render_svg
from midpoint_ellipse.tracer import trace_quadrant

SPEC = EllipseSpec(8, 6)
NS = {"svg": "http://www.w3.org/2000/svg"}


def read_pgm(data):
    m = re.match(rb"P5\n(\d+) (\d+)\n255\n", data)
    assert m
    w, h = int(m.group(1)), int(m.group(2))
    pixels = data[m.end():]
    assert len(pixels) == w * h
    return w, h, pixels


def polyline(root, ident):
    node = root.find(f".//svg:polyline[@id='{ident}']", NS)
    return [tuple(map(float, p.split(","))) for p in node.get("points").split()]


def test_svg_unit_step():
    svg = render_svg(trace_quadrant(SPEC, GridStep(1)))
    root = ET.fromstring(svg.split("\n", 2)[2])
    assert len(polyline(root, "generated")) == 11
    assert len(polyline(root, "exact")) == CURVE_SAMPLES
    assert root.find(".//svg:g[@id='axes']", NS) is not None
    legend = "".join(root.find(".//svg:g[@id='legend']", NS).itertext())
    assert "h = 1" in legend
    styles = {polyline_el.get("style") for polyline_el in root.iter("{http://www.w3.org/2000/svg}polyline")}
    assert len(styles) == 2


def test_svg_labels_fractional_step():
    svg = render_svg(trace_quadrant(SPEC, GridStep.exact(1, 10)))
    assert "h = 0.1<" in svg


def test_pgm_unit_step():
    trace = trace_quadrant(SPEC, GridStep(1))
    w, h, pixels = read_pgm(render_pgm(trace))
    assert (w, h) == (10, 8) == pgm_size(trace)
    assert pixels.count(0) == 11
    assert set(pixels) == {0, 255}
    # (0, 6) sits in the top margin row + 1, column 1
    assert pixels[1 * w + 1] == 0
    assert pixels[7 * w + 9] == 0


@pytest.mark.parametrize("step,size,dark", [
    (GridStep(0.5), (18, 14), 21),
    (GridStep(0.1), (82, 62), 101),
    (GridStep.exact(1, 10), (82, 62), 101),
])
def test_pgm_subpixel(step, size, dark):
    w, h, pixels = read_pgm(render_pgm(trace_quadrant(SPEC, step)))
    assert (w, h) == size
    assert pixels.count(0) == dark


def test_render_is_deterministic(tmp_path):
    trace = trace_quadrant(SPEC, GridStep(0.5))
    for fmt in ("svg", "pgm"):
        one = render_comparison(trace, fmt, tmp_path / f"one.{fmt}").read_bytes()
        two = render_comparison(trace, fmt, tmp_path / f"two.{fmt}").read_bytes()
        assert one == two


def test_render_errors(tmp_path):
    trace = trace_quadrant(SPEC, GridStep(1))
    with pytest.raises(ValueError, match="format"):
        render_comparison(trace, "png", tmp_path / "x.png")
    with pytest.raises(OSError):
        render_comparison(trace, "svg", tmp_path / "missing" / "x.svg")
