"""Exact rational planar geometry.

Everything here works on :class:`fractions.Fraction` coordinates so that
areas, overlays and multiplicities are computed without rounding.  A few
helpers at the bottom operate on float "shadow" copies of regions; they are
only used by sampled verifiers and the Fourier code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DegeneratePolygon,
    GeometryError,
    IrrationalData,
    NonSimplePolygon,
    SingularMatrix,
)

SCHEMA_VERSION = 1

Point = tuple  # (Fraction, Fraction)


# ---------------------------------------------------------------------------
# rationals

def as_rational(value) -> Fraction:
    """Convert ``value`` to a Fraction, refusing floats.

    Accepts ints, Fractions, ``"p/q"`` / ``"p"`` strings and ``[p, q]`` pairs.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        text = value.strip()
        if any(ch in text for ch in ".eE") and "/" not in text:
            raise IrrationalData(f"decimal literal {value!r} rejected on exact path; use p/q")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return Fraction(int(value[0]), int(value[1]))
    if isinstance(value, (float, np.floating)):
        raise IrrationalData(f"float {value!r} rejected on exact path")
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rational(text: str) -> Fraction:
    return as_rational(text)


def rational_pair(q: Fraction) -> list:
    return [q.numerator, q.denominator]


def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest rational ``g`` with every value in ``g * Z``."""
    g = Fraction(0)
    for v in values:
        v = abs(as_rational(v))
        if g == 0:
            g = v
            continue
        den = g.denominator * v.denominator // math.gcd(g.denominator, v.denominator)
        g = Fraction(math.gcd(int(g * den), int(v * den)), den)
    return g


def as_point(p) -> Point:
    return (as_rational(p[0]), as_rational(p[1]))


def cross(o, a, b):
    """Orientation of ``b`` relative to the directed line ``o -> a``."""
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _shoelace2(vs) -> Fraction:
    n = len(vs)
    s = 0
    for i in range(n):
        x1, y1 = vs[i]
        x2, y2 = vs[(i + 1) % n]
        s += x1 * y2 - x2 * y1
    return s


def _segments_intersect(p1, p2, q1, q2) -> bool:
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and d1 != 0 and d2 != 0 and ((d3 > 0) != (d4 > 0)) and d3 != 0 and d4 != 0:
        return True

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return (
        (d1 == 0 and on_seg(q1, q2, p1))
        or (d2 == 0 and on_seg(q1, q2, p2))
        or (d3 == 0 and on_seg(p1, p2, q1))
        or (d4 == 0 and on_seg(p1, p2, q2))
    )


def _normalize_ring(vertices) -> list:
    vs = []
    for v in vertices:
        v = as_point(v)
        if not vs or vs[-1] != v:
            vs.append(v)
    if len(vs) > 1 and vs[0] == vs[-1]:
        vs.pop()
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        n = len(vs)
        for i in range(n):
            if cross(vs[i - 1], vs[i], vs[(i + 1) % n]) == 0:
                del vs[i]
                changed = True
                break
    return vs


# ---------------------------------------------------------------------------
# polygons and regions

@dataclass(frozen=True)
class Polygon:
    """Simple counter-clockwise polygon with exact vertices.

    Construction normalizes the vertex list: duplicate and collinear vertices
    are dropped, orientation is made CCW and the list starts at the
    lexicographically smallest vertex.  Two polygons describing the same set
    therefore compare equal.
    """

    vertices: tuple

    def __post_init__(self):
        vs = _normalize_ring(self.vertices)
        if len(vs) < 3:
            raise DegeneratePolygon("polygon needs at least three non-collinear vertices")
        a2 = _shoelace2(vs)
        if a2 == 0:
            raise DegeneratePolygon("polygon has zero area")
        if a2 < 0:
            vs.reverse()
        n = len(vs)
        if n > 3:
            for i in range(n):
                for j in range(i + 2, n):
                    if i == 0 and j == n - 1:
                        continue
                    if _segments_intersect(vs[i], vs[(i + 1) % n], vs[j], vs[(j + 1) % n]):
                        raise NonSimplePolygon(f"edges {i} and {j} intersect")
        start = min(range(n), key=lambda i: vs[i])
        object.__setattr__(self, "vertices", tuple(vs[start:] + vs[:start]))

    @cached_property
    def area(self) -> Fraction:
        return _shoelace2(self.vertices) / 2

    @cached_property
    def bbox(self) -> tuple:
        xs = [v[0] for v in self.vertices]
        ys = [v[1] for v in self.vertices]
        return (min(xs), min(ys), max(xs), max(ys))

    @cached_property
    def is_convex(self) -> bool:
        vs = self.vertices
        n = len(vs)
        return all(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))

    def edges(self):
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def centroid(self) -> Point:
        vs = self.vertices
        a6 = 3 * _shoelace2(vs)
        cx = cy = Fraction(0)
        n = len(vs)
        for i in range(n):
            x1, y1 = vs[i]
            x2, y2 = vs[(i + 1) % n]
            w = x1 * y2 - x2 * y1
            cx += (x1 + x2) * w
            cy += (y1 + y2) * w
        return (cx / a6, cy / a6)

    def interior_point(self) -> Point:
        """A rational point strictly inside the polygon."""
        if self.is_convex:
            return self.centroid()
        # midpoint of the first interior chord of a horizontal line through a
        # generic height; exact because everything is rational
        ys = sorted({v[1] for v in self.vertices})
        y = (ys[0] + ys[1]) / 2
        xs = []
        for (x1, y1), (x2, y2) in self.edges():
            if (y1 > y) != (y2 > y):
                xs.append(x1 + (y - y1) * (x2 - x1) / (y2 - y1))
        xs.sort()
        return ((xs[0] + xs[1]) / 2, y)

    def contains(self, p) -> int:
        """+1 strictly inside, 0 on the boundary, -1 outside."""
        p = as_point(p)
        wn = 0
        for a, b in self.edges():
            c = cross(a, b, p)
            if c == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
                return 0
            if a[1] <= p[1]:
                if b[1] > p[1] and c > 0:
                    wn += 1
            elif b[1] <= p[1] and c < 0:
                wn -= 1
        return 1 if wn != 0 else -1

    def translate(self, t) -> "Polygon":
        tx, ty = as_point(t)
        return Polygon(tuple((x + tx, y + ty) for x, y in self.vertices))

    def transform(self, m: "Mat2", t=(0, 0)) -> "Polygon":
        if not m.is_exact:
            raise IrrationalData("exact polygon image needs an exact matrix")
        tx, ty = as_point(t)
        a, b, c, d = m.entries
        return Polygon(tuple((a * x + b * y + tx, c * x + d * y + ty) for x, y in self.vertices))

    def to_float(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.vertices])

    def to_json(self) -> dict:
        return {"vertices": [[rational_pair(x), rational_pair(y)] for x, y in self.vertices]}

    @classmethod
    def from_json(cls, data) -> "Polygon":
        return cls(tuple((as_rational(x), as_rational(y)) for x, y in data["vertices"]))


def polygon_area(p: Polygon) -> Fraction:
    """Exact area of ``p`` (shoelace formula), positive by orientation."""
    return p.area


def rectangle(x0, y0, x1, y1) -> Polygon:
    x0, y0, x1, y1 = map(as_rational, (x0, y0, x1, y1))
    return Polygon(((x0, y0), (x1, y0), (x1, y1), (x0, y1)))


@dataclass(frozen=True)
class Region:
    """Finite union of interior-disjoint simple polygons."""

    parts: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    @cached_property
    def area(self) -> Fraction:
        return sum((p.area for p in self.parts), Fraction(0))

    @property
    def is_empty(self) -> bool:
        return not self.parts

    @cached_property
    def bbox(self) -> tuple:
        if not self.parts:
            raise GeometryError("empty region has no bounding box")
        boxes = [p.bbox for p in self.parts]
        return (
            min(b[0] for b in boxes),
            min(b[1] for b in boxes),
            max(b[2] for b in boxes),
            max(b[3] for b in boxes),
        )

    def contains(self, p) -> int:
        """+1 inside some part, 0 on a part boundary, -1 outside."""
        best = -1
        for part in self.parts:
            r = part.contains(p)
            if r == 1:
                return 1
            best = max(best, r)
        return best

    def translate(self, t) -> "Region":
        return Region(tuple(p.translate(t) for p in self.parts))

    def transform(self, m: "Mat2", t=(0, 0)) -> "Region":
        return affine_image(self, m, t)

    def __neg__(self) -> "Region":
        return affine_image(self, Mat2.diag(-1, -1))

    def to_float_parts(self) -> list:
        return [p.to_float() for p in self.parts]

    def to_json(self) -> dict:
        return {
            "schema": "tilewave.region",
            "version": SCHEMA_VERSION,
            "parts": [p.to_json() for p in self.parts],
            "area": rational_pair(self.area),
        }

    @classmethod
    def from_json(cls, data) -> "Region":
        if data.get("schema", "tilewave.region") != "tilewave.region":
            raise GeometryError(f"unexpected schema {data.get('schema')!r}")
        if int(data.get("version", SCHEMA_VERSION)) > SCHEMA_VERSION:
            raise GeometryError("region schema version is newer than this library")
        return cls(tuple(Polygon.from_json(p) for p in data["parts"]))


# ---------------------------------------------------------------------------
# matrices and lattices

@dataclass(frozen=True)
class Mat2:
    """2x2 matrix, exact (Fractions) or shadow-valued (floats).

    ``entries`` is row-major ``(a11, a12, a21, a22)``.  Shadow matrices arise
    from rotations and irrational powers; exact code paths refuse them.
    """

    entries: tuple
    is_exact: bool = True

    def __post_init__(self):
        if self.is_exact:
            object.__setattr__(self, "entries", tuple(as_rational(e) for e in self.entries))
        else:
            object.__setattr__(self, "entries", tuple(float(e) for e in self.entries))

    @classmethod
    def of(cls, a11, a12, a21, a22) -> "Mat2":
        return cls((a11, a12, a21, a22))

    @classmethod
    def shadow_of(cls, a11, a12, a21, a22) -> "Mat2":
        return cls((a11, a12, a21, a22), is_exact=False)

    @classmethod
    def identity(cls) -> "Mat2":
        return cls((1, 0, 0, 1))

    @classmethod
    def diag(cls, a, d) -> "Mat2":
        return cls((a, 0, 0, d))

    @property
    def shadow(self) -> np.ndarray:
        return np.array([[float(self.entries[0]), float(self.entries[1])],
                         [float(self.entries[2]), float(self.entries[3])]])

    def det(self):
        a, b, c, d = self.entries
        return a * d - b * c

    def inverse(self) -> "Mat2":
        a, b, c, d = self.entries
        det = a * d - b * c
        if det == 0:
            raise SingularMatrix("matrix is singular")
        return Mat2((d / det, -b / det, -c / det, a / det), self.is_exact)

    @property
    def T(self) -> "Mat2":
        a, b, c, d = self.entries
        return Mat2((a, c, b, d), self.is_exact)

    def inverse_transpose(self) -> "Mat2":
        return self.inverse().T

    def to_shadow(self) -> "Mat2":
        return Mat2(tuple(float(e) for e in self.entries), is_exact=False)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            if self.is_exact and other.is_exact:
                a, b, c, d = self.entries
                e, f, g, h = other.entries
                return Mat2((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h))
            a, b, c, d = (float(v) for v in self.entries)
            e, f, g, h = (float(v) for v in other.entries)
            return Mat2((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), is_exact=False)
        x, y = other
        a, b, c, d = self.entries
        return (a * x + b * y, c * x + d * y)

    def __neg__(self) -> "Mat2":
        return Mat2(tuple(-e for e in self.entries), self.is_exact)

    def allclose(self, other: "Mat2", rtol: float = 1e-9, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.shadow, other.shadow, rtol=rtol, atol=atol))

    def to_json(self):
        if self.is_exact:
            return {"exact": True, "entries": [rational_pair(e) for e in self.entries]}
        return {"exact": False, "entries": list(self.entries)}

    @classmethod
    def from_json(cls, data) -> "Mat2":
        if data.get("exact", True):
            return cls(tuple(as_rational(e) for e in data["entries"]))
        return cls(tuple(data["entries"]), is_exact=False)


def affine_image(r: Region, m: Mat2, t=(0, 0)) -> Region:
    """Exact image ``{m x + t : x in r}``; orientation is re-normalized."""
    if not m.is_exact:
        raise IrrationalData("affine_image needs an exact matrix; use shadow_image")
    if m.det() == 0:
        raise SingularMatrix("affine map is singular")
    return Region(tuple(p.transform(m, t) for p in r.parts))


@dataclass(frozen=True)
class Lattice2:
    """Lattice ``basis @ Z^2`` with an exact rational basis (columns generate)."""

    basis: Mat2

    def __post_init__(self):
        if not self.basis.is_exact:
            raise IrrationalData("lattice basis must be rational")
        if self.basis.det() == 0:
            raise SingularMatrix("lattice basis is singular")

    @classmethod
    def from_rows(cls, a11, a12, a21, a22) -> "Lattice2":
        return cls(Mat2.of(a11, a12, a21, a22))

    @classmethod
    def rectangular(cls, alpha, beta) -> "Lattice2":
        return cls(Mat2.diag(alpha, beta))

    @classmethod
    def parse(cls, spec: str) -> "Lattice2":
        """Parse ``"a11,a12,a21,a22"`` (row-major, columns are generators)."""
        parts = [s for s in spec.replace(";", ",").split(",") if s.strip()]
        if len(parts) != 4:
            raise ValueError(f"lattice spec needs four entries, got {spec!r}")
        return cls(Mat2(tuple(parse_rational(s) for s in parts)))

    @property
    def covolume(self) -> Fraction:
        return abs(self.basis.det())

    def point(self, i, j) -> Point:
        return self.basis @ (Fraction(i), Fraction(j))

    def coords(self, p) -> Point:
        return self.basis.inverse() @ as_point(p)

    def fundamental_domain(self) -> Polygon:
        a, b, c, d = self.basis.entries
        z = Fraction(0)
        return Polygon(((z, z), (a, c), (a + b, c + d), (b, d)))

    def contains_point(self, p) -> bool:
        u, v = self.coords(p)
        return u.denominator == 1 and v.denominator == 1

    def dual(self) -> "Lattice2":
        return Lattice2(self.basis.inverse_transpose())

    def index_box(self, bbox, margin: int = 1) -> tuple:
        """Integer coordinate ranges covering all lattice points whose
        fundamental cell can meet the axis-aligned box ``bbox``."""
        x0, y0, x1, y1 = bbox
        inv = self.basis.inverse()
        corners = [inv @ (x, y) for x in (x0, x1) for y in (y0, y1)]
        us = [c[0] for c in corners]
        vs = [c[1] for c in corners]
        return (
            range(math.floor(min(us)) - margin, math.floor(max(us)) + margin + 1),
            range(math.floor(min(vs)) - margin, math.floor(max(vs)) + margin + 1),
        )

    def to_json(self) -> dict:
        return {"basis": [rational_pair(e) for e in self.basis.entries],
                "covolume": rational_pair(self.covolume)}

    @classmethod
    def from_json(cls, data) -> "Lattice2":
        return cls(Mat2(tuple(as_rational(e) for e in data["basis"])))

    def __str__(self):
        return "Lattice2(" + ",".join(str(e) for e in self.basis.entries) + ")"


# ---------------------------------------------------------------------------
# clipping

def _clip_convex(subject: Sequence, window: Sequence) -> list:
    """Sutherland-Hodgman clip of a convex ``subject`` against a CCW convex
    ``window``.  Works for any ordered field (Fractions or floats)."""
    out = list(subject)
    n = len(window)
    for i in range(n):
        a, b = window[i], window[(i + 1) % n]
        if not out:
            break
        src, out = out, []
        m = len(src)
        for j in range(m):
            p, q = src[j], src[(j + 1) % m]
            cp, cq = cross(a, b, p), cross(a, b, q)
            if cp >= 0:
                out.append(p)
            if (cp > 0 and cq < 0) or (cp < 0 and cq > 0):
                s = cp / (cp - cq)
                out.append((p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])))
    return out


def clip(r: Region, window: Polygon) -> Region:
    """Exact intersection of ``r`` with a convex ``window``."""
    if not window.is_convex:
        raise GeometryError("clip window must be convex")
    parts = []
    for p in r.parts:
        if p.is_convex:
            pts = _clip_convex(p.vertices, window.vertices)
            if len(pts) >= 3:
                try:
                    parts.append(Polygon(tuple(pts)))
                except DegeneratePolygon:
                    pass
        else:
            parts.extend(c for c, m in overlay([Region((p,)), Region((window,))]) if m == 2)
    return Region(tuple(parts))


# ---------------------------------------------------------------------------
# overlay (slab sweep)

def _y_at(edge, x):
    x1, y1, x2, y2 = edge[:4]
    return y1 + (y2 - y1) * (x - x1) / (x2 - x1)


def overlay(regions: Sequence[Region]) -> list:
    """Partition the union of ``regions`` into cells of constant multiplicity.

    Returns ``(Polygon, multiplicity)`` pairs sorted canonically, where the
    multiplicity counts the regions whose interior contains the cell.  The
    sweep cuts the plane into vertical slabs at every vertex and crossing
    abscissa; inside a slab the edges are totally ordered, so each gap is a
    trapezoid with a well-defined winding per region.  Adjacent trapezoids of
    equal multiplicity are then merged while the union stays convex.
    """
    regions = list(regions)
    edges = []
    xs = set()
    for ri, reg in enumerate(regions):
        for part in reg.parts:
            for (x1, y1), (x2, y2) in part.edges():
                xs.add(x1)
                if x1 == x2:
                    continue
                if x1 < x2:
                    edges.append((x1, y1, x2, y2, ri, 1))
                else:
                    edges.append((x2, y2, x1, y1, ri, -1))
    if not edges:
        return []
    edges.sort(key=lambda e: (e[0], e[2]))
    slopes = [(e[3] - e[1]) / (e[2] - e[0]) for e in edges]

    # crossing abscissae
    ne = len(edges)
    for i in range(ne):
        ei, mi = edges[i], slopes[i]
        for j in range(i + 1, ne):
            ej = edges[j]
            if ej[0] >= ei[2]:
                break
            mj = slopes[j]
            if mi == mj:
                continue
            x = (ej[1] - ei[1] + mi * ei[0] - mj * ej[0]) / (mi - mj)
            if max(ei[0], ej[0]) < x < min(ei[2], ej[2]):
                xs.add(x)

    xs = sorted(xs)
    nreg = len(regions)
    cursor = 0
    active = []
    finished = []  # (lower_chain, upper_chain, mult)
    open_cells = {}  # (yb, yt, mult) at current x -> (lower, upper)

    for x0, x1 in zip(xs, xs[1:]):
        active = [e for e in active if e[2] > x0]
        while cursor < ne and edges[cursor][0] <= x0:
            if edges[cursor][2] > x0:
                active.append(edges[cursor])
            cursor += 1
        xm = (x0 + x1) / 2
        keyed = sorted(((_y_at(e, xm), e) for e in active), key=lambda t: t[0])
        winding = [0] * nreg
        slab_cells = []
        i = 0
        while i < len(keyed):
            y = keyed[i][0]
            rep = keyed[i][1]
            while i < len(keyed) and keyed[i][0] == y:
                e = keyed[i][1]
                winding[e[4]] += e[5]
                i += 1
            if i >= len(keyed):
                break
            mult = sum(1 for w in winding if w > 0)
            if mult:
                top = keyed[i][1]
                cell = [_y_at(rep, x0), _y_at(rep, x1), _y_at(top, x0), _y_at(top, x1), mult]
                prev = slab_cells[-1] if slab_cells else None
                if prev is not None and prev[4] == mult and prev[2] == cell[0] and prev[3] == cell[1]:
                    prev[2], prev[3] = cell[2], cell[3]
                else:
                    slab_cells.append(cell)

        new_open = {}
        for yb0, yb1, yt0, yt1, mult in slab_cells:
            lower = [(x0, yb0), (x1, yb1)]
            upper = [(x0, yt0), (x1, yt1)]
            key = (yb0, yt0, mult)
            if yb0 < yt0 and key in open_cells:
                lo, up = open_cells[key]
                if (cross(lo[-2], lo[-1], (x1, yb1)) >= 0 and cross(up[-2], up[-1], (x1, yt1)) <= 0):
                    del open_cells[key]
                    lower = lo + [(x1, yb1)]
                    upper = up + [(x1, yt1)]
            if yb1 < yt1:
                new_open[(yb1, yt1, mult)] = (lower, upper)
            else:
                finished.append((lower, upper, mult))
        for (yb, yt, mult), (lo, up) in open_cells.items():
            finished.append((lo, up, mult))
        open_cells = new_open
    for (yb, yt, mult), (lo, up) in open_cells.items():
        finished.append((lo, up, mult))

    cells = []
    for lo, up, mult in finished:
        cells.append((Polygon(tuple(lo + up[::-1])), mult))
    cells.sort(key=lambda c: (c[1], c[0].vertices))
    return cells


def cells_area(cells) -> Fraction:
    return sum((c.area for c, _ in cells), Fraction(0))


def same_set(r1: Region, r2: Region) -> bool:
    """True when ``r1`` and ``r2`` agree up to a null set."""
    if r1.area != r2.area:
        return False
    cells = overlay([r1, r2])
    return all(m == 2 for _, m in cells)


def union_bbox(polys) -> tuple:
    boxes = [p.bbox for p in polys]
    return (min(b[0] for b in boxes), min(b[1] for b in boxes),
            max(b[2] for b in boxes), max(b[3] for b in boxes))


# ---------------------------------------------------------------------------
# float shadows

def shadow_image(r, m: Mat2, t=(0.0, 0.0)) -> list:
    """Float image of a region (or list of float parts) under ``m x + t``.

    Parts are re-oriented counter-clockwise when ``det m < 0``.
    """
    parts = r.to_float_parts() if isinstance(r, Region) else [np.asarray(p, float) for p in r]
    mat = m.shadow
    out = []
    for p in parts:
        q = p @ mat.T + np.asarray(t, float)
        if float(np.linalg.det(mat)) < 0:
            q = q[::-1].copy()
        out.append(q)
    return out


def float_area(parts) -> float:
    total = 0.0
    for p in parts:
        x, y = p[:, 0], p[:, 1]
        total += 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
    return total


def float_intersection_area(p: np.ndarray, q: np.ndarray) -> float:
    """Area of the intersection of two convex CCW float polygons."""
    pts = _clip_convex([tuple(v) for v in p], [tuple(v) for v in q])
    if len(pts) < 3:
        return 0.0
    return float_area([np.array(pts, float)])
