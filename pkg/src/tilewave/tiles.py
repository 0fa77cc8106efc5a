"""Concrete frequency tiles, their six-piece partitions and candidate lattices.

Shearlet tile ``W^{a,b}``: two wedges ``|x| in (1, a)``, ``|y| < b|x|/2``.
Similitude tile ``V^{a,n}``: two trapezoids ``|y| in (1, a]``,
``|x| <= tan(pi/n)|y|``.  The similitude tile is stored in scaled
coordinates ``x -> x / tan(pi/n)`` so that every vertex is rational; a common
linear change of variables does not change translational tiling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import OverlapDetected
from .geometry import (
    Lattice2,
    Mat2,
    Polygon,
    Region,
    as_rational,
    cells_area,
    clip,
    overlay,
    rational_gcd,
    rectangle,
    union_bbox,
)
from .groups import ShearletParams, SimilitudeParams

PIECE_LABELS = ("+1", "+2", "+3", "-1", "-2", "-3")


@dataclass(frozen=True)
class ShearletTile:
    region: Region
    params: ShearletParams
    partition: tuple  # ((label, Region), ...) in PIECE_LABELS order

    def piece(self, label: str) -> Region:
        return dict(self.partition)[label]

    @property
    def area(self) -> Fraction:
        return self.region.area

    def metadata(self) -> dict:
        return {"kind": "shearlet", "params": self.params.to_json(), "coordinates": "natural"}


@dataclass(frozen=True)
class SimilitudeTile:
    region: Region  # scaled coordinates
    params: SimilitudeParams
    partition: tuple

    def piece(self, label: str) -> Region:
        return dict(self.partition)[label]

    @property
    def area(self) -> Fraction:
        return self.region.area

    @property
    def scale(self) -> float:
        """Horizontal factor ``b = tan(pi/n)`` mapping scaled to natural coordinates."""
        return self.params.half_angle_tan

    def natural_parts(self) -> list:
        s = np.array([self.scale, 1.0])
        return [p * s for p in self.region.to_float_parts()]

    def metadata(self) -> dict:
        return {"kind": "similitude", "params": self.params.to_json(),
                "coordinates": "scaled: x_natural = tan(pi/n) * x_stored"}


@dataclass(frozen=True)
class LatticePrediction:
    lattice: Lattice2
    k_predicted: int | Fraction
    consistency: bool
    source: str  # "printed-formula" | "area-forced"

    def to_json(self) -> dict:
        k = self.k_predicted
        return {"lattice": self.lattice.to_json(),
                "k": [k.numerator, k.denominator] if isinstance(k, Fraction) else k,
                "consistency": self.consistency, "source": self.source}


@dataclass
class ShiftMergeResult:
    cells: list
    shifts: list  # [(label, (dx, dy)), ...]
    region: Region = field(init=False)

    def __post_init__(self):
        self.region = Region(tuple(c for c, _ in self.cells))

    @property
    def bbox(self) -> tuple:
        return union_bbox([c for c, _ in self.cells])

    @property
    def is_rectangle(self) -> bool:
        x0, y0, x1, y1 = self.bbox
        return (x1 - x0) * (y1 - y0) == cells_area(self.cells)

    @property
    def max_multiplicity(self) -> int:
        return max(m for _, m in self.cells)


def _labelled_partition(positive: Polygon, windows) -> tuple:
    plus = Region((positive,))
    pieces = []
    for i, win in enumerate(windows, start=1):
        pieces.append((f"+{i}", clip(plus, win)))
    minus = [(f"-{lab[1:]}", -reg) for lab, reg in pieces]
    return tuple(pieces + minus)


def shearlet_tile(p: ShearletParams) -> ShearletTile:
    a, b = p.a, p.b
    wedge = Polygon(((1, -b / 2), (a, -a * b / 2), (a, a * b / 2), (1, b / 2)))
    region = Region((wedge,))
    region = Region((wedge,) + (-region).parts)
    windows = (
        rectangle(1, -b / 2, a, b / 2),
        rectangle(1, b / 2, a, a * b / 2),
        rectangle(1, -a * b / 2, a, -b / 2),
    )
    return ShearletTile(region, p, _labelled_partition(wedge, windows))


def shearlet_printed_shifts(p: ShearletParams) -> list:
    """The six translation vectors of the shift-and-merge step, as printed."""
    a, b = p.a, p.b
    h = (a * b + b) / 2
    one, zero = Fraction(1), Fraction(0)
    return [
        ("+1", (-one, zero)),
        ("-1", (one, zero)),
        ("+2", (-one, zero)),
        ("-2", (Fraction(2), h)),
        ("+3", (Fraction(-2), h)),
        ("-3", (one, zero)),
    ]


def shift_merge(tile, shifts) -> ShiftMergeResult:
    """Translate the labelled pieces and overlay them.

    Raises :class:`OverlapDetected` if some cell is covered more than once.
    """
    shifted = [tile.piece(label).translate(vec) for label, vec in shifts]
    cells = overlay(shifted)
    bad = [(c, m) for c, m in cells if m > 1]
    if bad:
        raise OverlapDetected(
            f"{len(bad)} overlap cell(s), total area {cells_area(bad)}", cells=cells, overlap_cells=bad
        )
    return ShiftMergeResult(cells, list(shifts))


def shearlet_shift_merge(tile: ShearletTile) -> ShiftMergeResult:
    return shift_merge(tile, shearlet_printed_shifts(tile.params))


def printed_rectangle(p: ShearletParams) -> Polygon:
    """The rectangle claimed for the merged set, for comparison only."""
    a, b = p.a, p.b
    return rectangle(-(a - 1), -b / 2, a - 1, (a * b + b) / 2)


def _small_rationals(upper: Fraction, max_den: int):
    seen = set()
    for q in range(1, max_den + 1):
        for num in range(1, int(upper * q) + 1):
            v = Fraction(num, q)
            if v <= upper and v not in seen:
                seen.add(v)
    return sorted(seen)


def shearlet_lattice_candidates(p: ShearletParams, max_den: int = 12, certify: bool = False,
                                first_only: bool = False) -> list:
    """Printed-formula lattice plus the area-forced rectangular family.

    Area-forced candidates ``alpha Z x beta Z`` range over rationals with
    denominator at most ``max_den``, ``alpha <= 2(a-1)`` and
    ``beta <= b(a+1)/2`` (the side lengths of the merged rectangle), keeping
    those with ``area / (alpha beta)`` integral.  With ``certify=True`` only
    candidates confirmed by the exact covering oracle are returned;
    ``first_only`` stops after the first (smallest k) area-forced candidate.
    """
    a, b = p.a, p.b
    area = b * (a * a - 1)
    alpha = rational_gcd([Fraction(1), 2 * a - 2])
    beta = rational_gcd([(a * b + b) / 2, (a * b + 2 * b) / 2])
    k_formula = (2 * a - 2) / alpha * (a * b + 2 * b) / (2 * beta)
    if k_formula.denominator == 1:
        k_formula = int(k_formula)
    lat = Lattice2.rectangular(alpha, beta)
    out = [LatticePrediction(lat, k_formula, k_formula * lat.covolume == area, "printed-formula")]

    family = []
    for al in _small_rationals(2 * (a - 1), max_den):
        for be in _small_rationals(b * (a + 1) / 2, max_den):
            k = area / (al * be)
            if k.denominator == 1:
                family.append((int(k), al, be))
    family.sort()
    if certify:
        from .tiling import verify_k_tiling

        tile = shearlet_tile(p)
    for k, al, be in family:
        lat = Lattice2.rectangular(al, be)
        if certify and not verify_k_tiling(tile.region, lat, k).passed:
            continue
        out.append(LatticePrediction(lat, k, k * lat.covolume == area, "area-forced"))
        if first_only:
            break
    return out


def similitude_tile(p: SimilitudeParams) -> SimilitudeTile:
    a = Fraction(p.a)
    trap = Polygon(((-1, 1), (1, 1), (a, a), (-a, a)))
    region = Region((trap,) + (-Region((trap,))).parts)
    windows = (
        rectangle(-1, 1, 1, a),
        rectangle(-a, 1, -1, a),
        rectangle(1, 1, a, a),
    )
    return SimilitudeTile(region, p, _labelled_partition(trap, windows))


def similitude_shifts(p: SimilitudeParams) -> list:
    """Shift vectors of the similitude shift-and-merge, scaled, ``delta = 1``."""
    a = Fraction(p.a)
    one, zero = Fraction(1), Fraction(0)
    return [
        ("+1", (zero, -one)),
        ("-1", (zero, one)),
        ("+2", (zero, -one)),
        ("-2", (-(a + 1), a)),
        ("+3", (-(a + 1), -a)),
        ("-3", (zero, one)),
    ]


def similitude_shift_merge(tile: SimilitudeTile) -> ShiftMergeResult:
    return shift_merge(tile, similitude_shifts(tile.params))


def similitude_lattice(p: SimilitudeParams) -> LatticePrediction:
    a = p.a
    lat = Lattice2.rectangular(a + 1, 1)
    k = 2 * (a - 1)
    return LatticePrediction(lat, k, k * lat.covolume == 2 * (a * a - 1), "printed-formula")


@dataclass(frozen=True)
class PolygonRing:
    """``a**level * (K_n minus a**-1 K_n)`` in natural coordinates (floats).

    ``outer_scale`` and ``inner_scale`` are the exact similarity factors of
    the two boundary polygons relative to the base polygon ``K_n``.
    """

    params: SimilitudeParams
    level: int
    outer: np.ndarray
    inner: np.ndarray
    outer_scale: Fraction
    inner_scale: Fraction

    @property
    def area(self) -> float:
        return base_polygon_area(self.params) * float(self.outer_scale**2 - self.inner_scale**2)

    def sector_area(self) -> float:
        return self.area / self.params.n


def base_polygon(p: SimilitudeParams) -> np.ndarray:
    """Vertices of ``K_n`` (apothem ``a``), one vertex at ``(tan(pi/n) a, a)``."""
    n, a = p.n, float(p.a)
    r = a / math.cos(math.pi / n)
    th = math.pi / 2 - math.pi / n + 2 * math.pi * np.arange(n) / n
    return np.column_stack([r * np.cos(th), r * np.sin(th)])


def base_polygon_area(p: SimilitudeParams) -> float:
    return p.n * math.tan(math.pi / p.n) * float(p.a) ** 2


def polygon_ring(p: SimilitudeParams, level: int) -> PolygonRing:
    base = base_polygon(p)
    outer_scale = Fraction(p.a) ** level
    inner_scale = Fraction(p.a) ** (level - 1)
    return PolygonRing(p, level, base * float(outer_scale), base * float(inner_scale), outer_scale, inner_scale)


def scaled_to_natural(p: SimilitudeParams) -> Mat2:
    return Mat2.shadow_of(p.half_angle_tan, 0.0, 0.0, 1.0)


def tile_from_json(data: dict):
    """Rebuild a tile from its serialized metadata header."""
    meta = data.get("metadata", {})
    kind = meta.get("kind")
    if kind == "shearlet":
        return shearlet_tile(ShearletParams.from_json(meta["params"]))
    if kind == "similitude":
        return similitude_tile(SimilitudeParams.from_json(meta["params"]))
    return None
