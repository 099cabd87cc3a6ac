"""Deterministic SVG 1.1 drawing of a realized (slider) framework."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from .errors import DomainError

CANVAS = 480
MARGIN = Fraction(1, 10)


def _num(x) -> str:
    return f"{float(x):.3f}"


def render(doc) -> str:
    """SVG text for a document carrying points. Same document, same bytes."""
    if doc.points is None:
        raise DomainError("document has no points to draw")
    g = doc.graph
    pts = [(Fraction(x), Fraction(y)) for x, y in doc.points]
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    lo_x, hi_x, lo_y, hi_y = min(xs), max(xs), min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y) or Fraction(1)
    pad = span * MARGIN
    lo_x, hi_x, lo_y, hi_y = lo_x - pad, hi_x + pad, lo_y - pad, hi_y + pad
    width = hi_x - lo_x or Fraction(1)
    height = hi_y - lo_y or Fraction(1)
    scale = Fraction(CANVAS) / max(width, height)
    w, h = width * scale, height * scale

    def at(p):
        # y axis points up in the plane, down in SVG
        return (p[0] - lo_x) * scale, (hi_y - p[1]) * scale

    collapsed = set(tuple(sorted(e)) for e in (doc.collapsed or ()))
    if doc.collapsed is None:
        collapsed = {tuple(sorted(e)) for e in g.edges if pts[e[0] - 1] == pts[e[1] - 1]}

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_num(w)}" height="{_num(h)}" '
        f'viewBox="0 0 {_num(w)} {_num(h)}">',
        f'<rect x="0" y="0" width="{_num(w)}" height="{_num(h)}" fill="white"/>',
    ]
    if doc.sliders is not None:
        reach = span / 2
        for k, (loop, s) in enumerate(zip(g.loops, doc.sliders)):
            normal = s.normal
            if normal is None:
                normal = (1, 0) if loop.color == "red" else (0, 1)
            c, d = Fraction(normal[0]), Fraction(normal[1])
            # direction along the slider line, scaled by the larger component
            t = (-d, c)
            size = max(abs(t[0]), abs(t[1]))
            t = (t[0] / size * reach, t[1] / size * reach)
            p = pts[loop.v - 1]
            x1, y1 = at((p[0] - t[0], p[1] - t[1]))
            x2, y2 = at((p[0] + t[0], p[1] + t[1]))
            color = loop.color or "gray"
            out.append(
                f'<line class="slider" data-loop="{k}" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" '
                f'y2="{_num(y2)}" stroke="{color}" stroke-width="1.5" stroke-dasharray="6,4"/>'
            )
    for k, (i, j) in enumerate(g.edges):
        x1, y1 = at(pts[i - 1])
        x2, y2 = at(pts[j - 1])
        if tuple(sorted((i, j))) in collapsed:
            out.append(
                f'<circle class="collapsed" data-edge="{i},{j}" cx="{_num(x1)}" cy="{_num(y1)}" r="14" '
                f'fill="none" stroke="crimson" stroke-width="3"/>'
            )
        else:
            out.append(
                f'<line class="edge" data-edge="{i},{j}" x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" '
                f'y2="{_num(y2)}" stroke="black" stroke-width="2"/>'
            )
    for v, p in enumerate(pts, start=1):
        x, y = at(p)
        out.append(f'<circle class="vertex" cx="{_num(x)}" cy="{_num(y)}" r="8" fill="white" stroke="black"/>')
        out.append(
            f'<text x="{_num(x)}" y="{_num(y + 4)}" font-size="10" text-anchor="middle">{escape(str(v))}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
