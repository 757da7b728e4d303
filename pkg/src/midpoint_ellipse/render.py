"""Exact-versus-generated comparison images: SVG overlay and PGM raster."""

from __future__ import annotations

import math
from pathlib import Path

from .geometry import FLOAT_RTOL, last_row, to_rational
from .tables import format_number
from .tracer import QuadrantTrace

CURVE_SAMPLES = 512
SCALE = 40.0  # SVG user units per ellipse unit
PAD = 60.0

SVG_HEAD = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" "http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="%(width).0f" height="%(height).0f" viewBox="0 0 %(width).0f %(height).0f">
<rect x="0" y="0" width="%(width).0f" height="%(height).0f" style="fill:#ffffff"/>
"""
SVG_TAIL = "</svg>\n"


def _polyline(points, ident, style) -> str:
    coords = " ".join("%.4f,%.4f" % p for p in points)
    return f'<polyline id="{ident}" points="{coords}" style="{style}"/>'


def render_svg(trace: QuadrantTrace) -> str:
    a, b = float(trace.spec.a), float(trace.spec.b)
    x_max = max([a] + [float(p.x) for p in trace.points])
    width = x_max * SCALE + 2 * PAD + 140
    height = b * SCALE + 2 * PAD

    def tx(x, y):
        return PAD + x * SCALE, height - PAD - y * SCALE

    exact = [
        tx(a * math.cos(t), b * math.sin(t))
        for t in (0.5 * math.pi * k / (CURVE_SAMPLES - 1) for k in range(CURVE_SAMPLES))
    ]
    staircase = [tx(float(p.x), float(p.y)) for p in trace.points]
    ox, oy = tx(0, 0)
    ex, _ = tx(x_max + 0.5, 0)
    _, ey = tx(0, b + 0.5)
    label = format_number(trace.step.h)
    lx, ly = width - PAD - 130, PAD

    parts = [SVG_HEAD % {"width": width, "height": height}]
    parts.append('<g id="axes" style="stroke:#000000;stroke-width:1">')
    parts.append('<line x1="%.4f" y1="%.4f" x2="%.4f" y2="%.4f"/>' % (ox, oy, ex, oy))
    parts.append('<line x1="%.4f" y1="%.4f" x2="%.4f" y2="%.4f"/>' % (ox, oy, ox, ey))
    parts.append("</g>")
    parts.append(_polyline(exact, "exact", "fill:none;stroke:#1f77b4;stroke-width:2"))
    parts.append(_polyline(
        staircase, "generated",
        "fill:none;stroke:#d62728;stroke-width:1.5;stroke-dasharray:4,2",
    ))
    parts.append('<g id="legend" font-family="sans-serif" font-size="12">')
    parts.append('<line x1="%.1f" y1="%.1f" x2="%.1f" y2="%.1f" style="stroke:#1f77b4;stroke-width:2"/>'
                 % (lx, ly, lx + 24, ly))
    parts.append('<text x="%.1f" y="%.1f">exact ellipse</text>' % (lx + 30, ly + 4))
    parts.append('<line x1="%.1f" y1="%.1f" x2="%.1f" y2="%.1f" '
                 'style="stroke:#d62728;stroke-width:1.5;stroke-dasharray:4,2"/>'
                 % (lx, ly + 18, lx + 24, ly + 18))
    parts.append('<text x="%.1f" y="%.1f">midpoint, h = %s</text>' % (lx + 30, ly + 22, label))
    parts.append("</g>")
    return "\n".join(parts) + "\n" + SVG_TAIL


def pgm_size(trace: QuadrantTrace) -> tuple:
    """``(width, height)`` in pixels: one pixel per grid step plus two of margin."""
    h = trace.step.h
    if trace.step.is_exact:
        return math.ceil(to_rational(trace.spec.a) / h + 2), math.ceil(to_rational(trace.spec.b) / h + 2)
    # 8 / 0.1 is 80.00000000000001 in doubles
    return (math.ceil(trace.spec.a / h + 2 - FLOAT_RTOL),
            math.ceil(trace.spec.b / h + 2 - FLOAT_RTOL))


def render_pgm(trace: QuadrantTrace) -> bytes:
    """Binary P5 greymap; emitted points are black on white.

    Column ``i + 1`` and row ``j + 1`` hold grid point ``(i, j)``, so the top
    row and left column are margin.
    """
    width, height = pgm_size(trace)
    width = max(width, max(p.i for p in trace.points) + 2)
    height = max(height, last_row(trace.spec, trace.step) + 2)
    pixels = bytearray(b"\xff" * (width * height))
    for p in trace.points:
        pixels[(p.j + 1) * width + p.i + 1] = 0
    return b"P5\n%d %d\n255\n" % (width, height) + bytes(pixels)


def render_comparison(trace: QuadrantTrace, fmt: str, out) -> Path:
    """Write the comparison image for ``trace`` to ``out`` as ``svg`` or ``pgm``."""
    fmt = fmt.lower()
    if fmt == "svg":
        data = render_svg(trace).encode("utf-8")
    elif fmt == "pgm":
        data = render_pgm(trace)
    else:
        raise ValueError(f"unsupported image format {fmt!r}; expected svg or pgm")
    out = Path(out)
    out.write_bytes(data)
    return out
