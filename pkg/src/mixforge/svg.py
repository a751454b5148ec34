"""Deterministic SVG drawings of planar lattice loops."""

from __future__ import annotations

from typing import Optional

from .errors import UnsupportedDimension
from .geometry import LatticePath, to_path
from .words import as_text

ARC_COLORS = ("#d62728", "#1f77b4", "#2ca02c", "#9467bd")
CELL = 40
MARGIN = 30


def witness_annotations(witness) -> dict:
    """p, q, r, s parameter indices for a two-component split witness."""
    q = len(witness.parts[0])
    out = {"p": 0, "q": q}
    rest = list(witness.cuts)
    if q in rest:
        rest.remove(q)
    if len(rest) == 2:
        out["r"], out["s"] = rest
    return out


def render_svg(word_or_path, witness=None, annotations: Optional[dict] = None) -> str:
    """SVG text for the loop of a word (or a LatticePath) in Z^2.

    Every unit step is an arrow.  With a split witness the arcs between
    consecutive cuts get distinct colors.  ``annotations`` maps any of
    "p", "q", "r", "s" to a parameter index to mark; a witness supplies them.
    """
    if isinstance(word_or_path, LatticePath):
        path = word_or_path
    else:
        text = as_text(word_or_path)
        if any(c in "cC" for c in text):
            raise UnsupportedDimension("only planar (n = 2) paths can be drawn")
        path = to_path(text, 2)
    if path.dim != 2:
        raise UnsupportedDimension(f"cannot draw a path in Z^{path.dim}")
    marks = dict(witness_annotations(witness)) if witness is not None else {}
    marks.update(annotations or {})

    pts = path.points
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    width = (x1 - x0) * CELL + 2 * MARGIN
    height = (y1 - y0) * CELL + 2 * MARGIN

    def sx(p):
        return MARGIN + (p[0] - x0) * CELL

    def sy(p):
        return MARGIN + (y1 - p[1]) * CELL

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        "<defs>",
    ]
    colors = ARC_COLORS if witness is not None else ("#333333",)
    for k, color in enumerate(colors):
        out.append(f'<marker id="arrow{k}" viewBox="0 0 10 10" refX="9" refY="5" '
                   f'markerWidth="5" markerHeight="5" orient="auto">'
                   f'<path d="M0,0 L10,5 L0,10 z" fill="{color}"/></marker>')
    out.append("</defs>")
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')
    out.append('<g stroke="#dddddd" stroke-width="1">')
    for gx in range(x0, x1 + 1):
        out.append(f'<line x1="{sx((gx, 0))}" y1="{MARGIN}" x2="{sx((gx, 0))}" '
                   f'y2="{height - MARGIN}"/>')
    for gy in range(y0, y1 + 1):
        out.append(f'<line x1="{MARGIN}" y1="{sy((0, gy))}" x2="{width - MARGIN}" '
                   f'y2="{sy((0, gy))}"/>')
    out.append("</g>")

    if witness is not None:
        bounds = (0, *witness.cuts, path.m)
    else:
        bounds = (0, path.m)
    for k, (a, b) in enumerate(zip(bounds, bounds[1:])):
        if b <= a:
            continue
        ci = k % len(colors)
        label = f' data-arc="K{k + 1}"' if witness is not None else ""
        out.append(f'<g{label} stroke="{colors[ci]}" stroke-width="3" stroke-linecap="round">')
        for t in range(a, b):
            p, r = pts[t], pts[t + 1]
            out.append(f'<line x1="{sx(p)}" y1="{sy(p)}" x2="{sx(r)}" y2="{sy(r)}" '
                       f'marker-end="url(#arrow{ci})"/>')
        out.append("</g>")

    out.append(f'<circle cx="{sx(pts[0])}" cy="{sy(pts[0])}" r="5" fill="black"/>')
    for name in ("p", "q", "r", "s"):
        t = marks.get(name)
        if t is None or not 0 <= t <= path.m:
            continue
        pt = pts[t]
        out.append(f'<circle cx="{sx(pt)}" cy="{sy(pt)}" r="4" fill="white" stroke="black" '
                   f'stroke-width="2"/>')
        out.append(f'<text x="{sx(pt) + 7}" y="{sy(pt) - 7}" font-family="sans-serif" '
                   f'font-size="14">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
