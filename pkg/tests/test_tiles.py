from fractions import Fraction as F

import numpy as np
import pytest
import shapely.geometry as sg
import sympy as sp

from tilewave.errors import OverlapDetected
from tilewave.geometry import Lattice2, rectangle
from tilewave.groups import ShearletParams, SimilitudeParams
from tilewave.tiles import (
    PIECE_LABELS,
    base_polygon,
    base_polygon_area,
    polygon_ring,
    printed_rectangle,
    shearlet_lattice_candidates,
    shearlet_printed_shifts,
    shearlet_shift_merge,
    shearlet_tile,
    similitude_lattice,
    similitude_shift_merge,
    similitude_shifts,
    similitude_tile,
    tile_from_json,
)


def sympy_wedge_area(a, b):
    x, y = sp.symbols("x y")
    return 2 * sp.integrate(sp.integrate(1, (y, -b * x / 2, b * x / 2)), (x, 1, a))


def sympy_trapezoid_area(a):
    # scaled coordinates: |x| <= |y|, 1 < |y| <= a
    x, y = sp.symbols("x y")
    return 2 * sp.integrate(sp.integrate(1, (x, -y, y)), (y, 1, a))


@pytest.mark.parametrize("a,b", [(2, 1), (3, 2), (F(5, 2), F(3, 2)), (F(7, 3), F(1, 4))])
def test_shearlet_area_against_sympy(a, b):
    tile = shearlet_tile(ShearletParams(a, b))
    assert tile.area == F(str(sympy_wedge_area(sp.Rational(str(a)), sp.Rational(str(b)))))
    assert tile.area == F(b) * (F(a) ** 2 - 1)


@pytest.mark.parametrize("a", [2, 3, 5])
def test_similitude_area_against_sympy(a):
    tile = similitude_tile(SimilitudeParams(a, 6))
    assert tile.area == int(sympy_trapezoid_area(a)) == 2 * (a * a - 1)


def test_partition_is_exact(w21):
    assert [lab for lab, _ in w21.partition] == list(PIECE_LABELS)
    assert sum(r.area for _, r in w21.partition) == w21.area
    assert w21.piece("+1").area == 1
    assert w21.piece("+2").area == F(1, 4)


def _raster_counts(pieces, bbox, step):
    """Midpoint grid counts of shifted pieces, via shapely as independent oracle."""
    x0, y0, x1, y1 = (float(v) for v in bbox)
    shapes = [sg.Polygon([(float(x), float(y)) for x, y in p.vertices]) for r in pieces for p in r.parts]
    # offsets chosen so no grid point falls on an edge with rational slope
    xs = np.arange(x0 - 1 + 0.0137, x1 + 1, step)
    ys = np.arange(y0 - 1 + 0.0291, y1 + 1, step)
    counts = {}
    for x in xs:
        for y in ys:
            pt = sg.Point(x, y)
            inside_rect = x0 < x < x1 and y0 < y < y1
            counts.setdefault(inside_rect, set()).add(sum(s.contains(pt) for s in shapes))
    return counts


@pytest.mark.parametrize("b", [1, 2])
def test_shearlet_shift_merge_rectangle(b):
    p = ShearletParams(2, b)
    merged = shearlet_shift_merge(shearlet_tile(p))
    assert merged.is_rectangle
    assert merged.bbox == (-1, -F(b, 2), 1, F(2 * b, 2))
    assert merged.max_multiplicity == 1


def test_printed_rectangle_differs_from_computed():
    rect = printed_rectangle(ShearletParams(2, 1))
    assert rect.bbox == (-1, F(-1, 2), 1, F(3, 2))
    assert rect.area == 4 != shearlet_tile(ShearletParams(2, 1)).area


def test_similitude_shift_merge_against_raster():
    tile = similitude_tile(SimilitudeParams(2, 6))
    merged = similitude_shift_merge(tile)
    assert merged.bbox == (-2, -1, 1, 1)
    assert merged.is_rectangle
    shifted = [tile.piece(lab).translate(v) for lab, v in similitude_shifts(tile.params)]
    counts = _raster_counts(shifted, merged.bbox, 1 / 16)
    assert counts == {True: {1}, False: {0}}


def test_shearlet_shift_merge_raster_b1():
    tile = shearlet_tile(ShearletParams(2, 1))
    shifted = [tile.piece(lab).translate(v) for lab, v in shearlet_printed_shifts(tile.params)]
    counts = _raster_counts(shifted, (-1, F(-1, 2), 1, 1), 1 / 16)
    assert counts == {True: {1}, False: {0}}


def test_shift_merge_overlap_at_a3():
    with pytest.raises(OverlapDetected) as exc:
        shearlet_shift_merge(shearlet_tile(ShearletParams(3, 1)))
    bad = exc.value.overlap_cells
    assert len(bad) == 3
    assert sum(c.area for c, _ in bad) == F(3, 4)
    assert all(m == 2 for _, m in bad)


def test_lattice_candidates_a2_b1():
    cands = shearlet_lattice_candidates(ShearletParams(2, 1), certify=True, first_only=True)
    formula, forced = cands
    assert formula.source == "printed-formula"
    assert formula.lattice == Lattice2.rectangular(1, F(1, 2))
    assert formula.k_predicted == 8 and not formula.consistency
    assert forced.lattice == Lattice2.rectangular(1, F(3, 2))
    assert forced.k_predicted == 2 and forced.consistency


def test_lattice_candidates_uncertified_are_area_consistent():
    cands = shearlet_lattice_candidates(ShearletParams(2, 1), max_den=4)
    assert all(c.consistency for c in cands[1:])
    assert len(cands) > 2


def test_similitude_lattice():
    pred = similitude_lattice(SimilitudeParams(3, 6))
    assert pred.lattice == Lattice2.rectangular(4, 1)
    assert pred.k_predicted == 4 and pred.consistency


def test_polygon_ring_geometry():
    p = SimilitudeParams(2, 6)
    base = base_polygon(p)
    # apothem a: distance from origin to the top edge midpoint
    top = (base[0] + base[-1]) / 2 if abs(base[0][1] - base[-1][1]) < 1e-12 else (base[0] + base[1]) / 2
    assert np.isclose(np.hypot(*top), 2.0)
    ring = polygon_ring(p, 1)
    assert ring.outer_scale == 2 and ring.inner_scale == 1
    assert np.isclose(ring.area, base_polygon_area(p) * 3)
    # one sector of the base ring is the trapezoid |y| in (1, 2] in natural coordinates
    assert np.isclose(polygon_ring(p, 0).sector_area(), np.tan(np.pi / 6) * 3)


def test_tile_from_json_round_trip(w21):
    doc = {"metadata": w21.metadata()}
    assert tile_from_json(doc).region == w21.region
    assert tile_from_json({"metadata": {}}) is None
