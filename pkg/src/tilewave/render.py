"""SVG figures of the tiles, the merged set and the polygon ring.

Output is deterministic: coordinates use fixed precision and elements are
emitted in a fixed order.
"""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

import numpy as np

from .errors import OverlapDetected
from .geometry import shadow_image
from .groups import ShearElement, ShearletParams, SimilitudeParams, dual_action
from .tiles import (
    PIECE_LABELS,
    base_polygon,
    printed_rectangle,
    scaled_to_natural,
    shearlet_shift_merge,
    shearlet_tile,
    similitude_tile,
)

SCALE = 100.0
FILL = {"+1": "#9ecae1", "+2": "#c6dbef", "+3": "#6baed6", "-1": "#fdae6b", "-2": "#fdd0a2", "-3": "#fd8d3c"}


def _fmt(v: float) -> str:
    s = f"{v:.3f}"
    return "0.000" if s == "-0.000" else s


def _path_d(parts) -> str:
    d = []
    for p in parts:
        pts = [(SCALE * float(x), -SCALE * float(y)) for x, y in p]
        d.append("M " + " L ".join(f"{_fmt(x)} {_fmt(y)}" for x, y in pts) + " Z")
    return " ".join(d)


class _Canvas:
    def __init__(self, title: str):
        self.title = title
        self.items = []
        self.bounds = []

    def path(self, parts, cls: str, style: str, label: str | None = None):
        parts = [np.asarray(p, float) for p in parts]
        self.bounds.extend(parts)
        attr = f' data-label="{escape(label)}"' if label else ""
        self.items.append(f'<path class="{cls}"{attr} d="{_path_d(parts)}" style="{style}"/>')

    def text(self, x: float, y: float, s: str, cls: str = "label", size: int = 12):
        self.items.append(f'<text class="{cls}" x="{_fmt(SCALE * x)}" y="{_fmt(-SCALE * y)}" '
                          f'font-size="{size}" text-anchor="middle">{escape(s)}</text>')

    def svg(self) -> str:
        allp = np.vstack(self.bounds)
        x0, y0 = allp.min(axis=0)
        x1, y1 = allp.max(axis=0)
        m = 0.15 * max(x1 - x0, y1 - y0)
        vb = (SCALE * (x0 - m), -SCALE * (y1 + m), SCALE * (x1 - x0 + 2 * m), SCALE * (y1 - y0 + 2 * m) + 40)
        head = ('<?xml version="1.0" encoding="UTF-8"?>\n'
                '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
                f'viewBox="{" ".join(_fmt(v) for v in vb)}">\n'
                f"<title>{escape(self.title)}</title>\n")
        return head + "\n".join(self.items) + "\n</svg>\n"


def _centroid(parts) -> tuple:
    p = np.vstack([np.asarray(q, float) for q in parts])
    return float(p[:, 0].mean()), float(p[:, 1].mean())


def figure1(p: ShearletParams) -> str:
    """The tile with its six labelled pieces and the images under ``S_{+-b}^{-T}``."""
    tile = shearlet_tile(p)
    cv = _Canvas(f"W^(a,b) with a={p.a}, b={p.b}: six-piece partition and shear images")
    for m in (1, -1):
        img = shadow_image(tile.region, dual_action(ShearElement(0, m), p))
        cv.path(img, "image", "fill:none;stroke:#555555;stroke-width:1.5;stroke-dasharray:6 3",
                label=f"S_{m}^-T W")
    for lab in PIECE_LABELS:
        parts = tile.piece(lab).to_float_parts()
        cv.path(parts, "piece", f"fill:{FILL[lab]};stroke:#000000;stroke-width:1", label=f"W_{lab}")
    for lab in PIECE_LABELS:
        x, y = _centroid(tile.piece(lab).to_float_parts())
        cv.text(x, y, f"W{lab}")
    return cv.svg()


def _frac(q: Fraction) -> str:
    return str(q)


def figure2(p: ShearletParams) -> str:
    """The merged set computed from the printed shifts, next to the printed rectangle."""
    tile = shearlet_tile(p)
    cv = _Canvas(f"W' for a={p.a}, b={p.b}")
    try:
        merged = shearlet_shift_merge(tile)
        cells, bad = merged.cells, []
    except OverlapDetected as exc:
        cells, bad = exc.cells, exc.overlap_cells
    rect = printed_rectangle(p)
    cv.path([rect.to_float()], "printed", "fill:none;stroke:#d62728;stroke-width:1.5;stroke-dasharray:4 4",
            label="printed rectangle")
    for c, mult in cells:
        colour = "#bdbdbd" if mult == 1 else "#e6550d"
        cv.path([c.to_float()], "cell", f"fill:{colour};stroke:#000000;stroke-width:0.5",
                label=f"multiplicity {mult}")
    x0, y0, x1, y1 = rect.bbox
    cx = float(x0 + x1) / 2
    cv.text(cx, float(y1) + 0.12, f"printed: [{_frac(x0)},{_frac(x1)}]x[{_frac(y0)},{_frac(y1)}]", "note", 10)
    if bad:
        cv.text(cx, float(y0) - 0.2, f"{len(bad)} overlap cell(s): shifts fail for these parameters", "note", 10)
    else:
        bx0, by0, bx1, by1 = merged.bbox
        shape = "rectangle" if merged.is_rectangle else "non-rectangular set"
        cv.text(cx, float(y0) - 0.2,
                f"computed {shape}: [{_frac(bx0)},{_frac(bx1)}]x[{_frac(by0)},{_frac(by1)}]", "note", 10)
    return cv.svg()


def figure3(p: SimilitudeParams) -> str:
    """``V`` (two opposing sectors) inside the ring between ``K_n`` and ``a^-1 K_n``."""
    tile = similitude_tile(p)
    cv = _Canvas(f"V^(a,n) with a={p.a}, n={p.n} in the polygon ring")
    outer = base_polygon(p)
    inner = outer / p.a
    cv.path([outer], "outline", "fill:none;stroke:#000000;stroke-width:1.5", label="K_n")
    cv.path([inner], "outline", "fill:none;stroke:#000000;stroke-width:1.5", label="a^-1 K_n")
    nat = shadow_image(tile.region, scaled_to_natural(p))
    cv.path(nat, "tile", "fill:#969696;fill-opacity:0.7;stroke:#000000;stroke-width:1", label="V")
    return cv.svg()


def render(figure: int, a=None, b=None, c=None, n=None) -> str:
    if figure in (1, 2):
        params = ShearletParams(a if a is not None else 2, b if b is not None else 1,
                                c if c is not None else Fraction(1, 2))
        return figure1(params) if figure == 1 else figure2(params)
    if figure == 3:
        return figure3(SimilitudeParams(int(a) if a is not None else 2, int(n) if n is not None else 6))
    raise ValueError(f"unknown figure {figure}")
