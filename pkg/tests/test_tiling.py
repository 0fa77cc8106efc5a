from fractions import Fraction as F

import numpy as np
import pytest
import shapely.geometry as sg
from hypothesis import given, settings
from hypothesis import strategies as st

from tilewave.errors import IrrationalData
from tilewave.geometry import Lattice2, Mat2, Region, affine_image, rectangle
from tilewave.groups import ShearElement, ShearletParams, SimilitudeParams
from tilewave.tiles import shearlet_tile, similitude_tile
from tilewave.tiling import (
    LatticeMembership,
    covering_cells,
    covering_function,
    fold_into_domain,
    quasi_lattice_check,
    sample_covering,
    shearlet_cover,
    shearlet_cover_count,
    verify_k_tiling,
    verify_multiplicative_shearlet,
    verify_multiplicative_similitude,
)


def brute_multiplicity(w: Region, g: Lattice2, x, reach=6):
    """Count lattice translates of ``w`` containing ``x`` using shapely."""
    shape = sg.MultiPolygon([sg.Polygon([(float(a), float(b)) for a, b in p.vertices]) for p in w.parts])
    B = g.basis.shadow
    n = 0
    for i in range(-reach, reach + 1):
        for j in range(-reach, reach + 1):
            gx, gy = B @ (i, j)
            n += shape.contains(sg.Point(x[0] - gx, x[1] - gy))
    return n


def test_fold_preserves_area(w21, gamma_w):
    assert sum(p.area for p in fold_into_domain(w21.region, gamma_w)) == w21.area


def test_w21_two_tiles_with_forced_lattice(w21, gamma_w):
    rep = covering_function(w21.region, gamma_w)
    assert rep.is_constant and rep.k == 2
    assert rep.area_by_value() == {2: F(3, 2)}


def test_w21_integer_lattice_values(w21):
    rep = covering_function(w21.region, Lattice2.rectangular(1, 1))
    assert not rep.is_constant
    assert rep.area_by_value() == {2: F(1, 4), 3: F(1, 2), 4: F(1, 4)}
    # the area average of the covering function equals area / covolume
    assert sum(v * a for v, a in rep.area_by_value().items()) == 3


def test_covering_values_match_shapely(w21):
    g = Lattice2.rectangular(1, 1)
    rep = covering_function(w21.region, g)
    for cell, value in rep.cells:
        assert brute_multiplicity(w21.region, g, [float(t) for t in cell.interior_point()]) == value


def test_covering_cells_sets(w21, gamma_w):
    cells = covering_cells(w21.region, gamma_w)
    assert sum(c.area for c, _ in cells) == gamma_w.covolume
    for cell, gammas in cells:
        assert len(gammas) == 2
        x = cell.interior_point()
        for gx, gy in gammas:
            assert w21.region.contains((x[0] + gx, x[1] + gy)) == 1


def test_refuted_candidate_has_witness(w21):
    v = verify_k_tiling(w21.region, Lattice2.rectangular(1, F(1, 2)), 8)
    assert not v.passed and not v.necessary_condition
    cell, value = v.witness
    assert value == 6 and value != 8
    assert v.to_json()["witness_cells"][0]["multiplicity"] == 6


def test_similitude_tilings():
    for a in (2, 3):
        tile = similitude_tile(SimilitudeParams(a, 6))
        v = verify_k_tiling(tile.region, Lattice2.rectangular(a + 1, 1), 2 * (a - 1))
        assert v.passed and v.necessary_condition


def test_uncovered_square_reports_zero():
    sq = Region((rectangle(0, 0, 1, 1),))
    rep = covering_function(sq, Lattice2.rectangular(2, 2))
    assert rep.area_by_value() == {0: 3, 1: 1}


def test_irrational_input_rejected():
    tile = similitude_tile(SimilitudeParams(2, 6))
    with pytest.raises(IrrationalData):
        covering_function(tile.natural_parts(), Lattice2.rectangular(3, 1))


def test_membership_agrees_with_exact_contains(w21):
    g = Lattice2.rectangular(1, 1)
    mem = LatticeMembership(w21.region, g, bits=6)
    ij = np.array([[i, j] for i in range(0, 64, 5) for j in range(0, 64, 7)])
    inside, boundary = mem.classify(ij)
    for row, ins, onb in zip(ij, inside, boundary):
        x = mem.to_rational(row)
        exact = [w21.region.contains((x[0] - gx, x[1] - gy)) for gx, gy in mem.gammas]
        assert onb == any(e == 0 for e in exact)
        if not onb:
            assert list(ins) == [e == 1 for e in exact]


def test_sampling_matches_exact_fractions(w21):
    h = sample_covering(w21.region, Lattice2.rectangular(1, 1), 100_000, seed=3)
    frac = h.fractions()
    assert set(frac) == {2, 3, 4}
    # binomial standard error at n = 1e5 is below 0.0016
    assert abs(frac[2] - 0.25) < 0.01 and abs(frac[3] - 0.5) < 0.01 and abs(frac[4] - 0.25) < 0.01


def test_sampling_constant_case(w21, gamma_w):
    h = sample_covering(w21.region, gamma_w, 20_000, seed=1)
    assert set(h.counts) == {2}
    assert h.valid + h.discarded == 20_000


def test_sampling_deterministic(w21, gamma_w):
    a = sample_covering(w21.region, gamma_w, 5000, seed=5)
    b = sample_covering(w21.region, gamma_w, 5000, seed=5)
    assert a == b


lat_entries = st.fractions(min_value=F(1, 3), max_value=2, max_denominator=4)
shift = st.fractions(min_value=-2, max_value=2, max_denominator=5)


@settings(max_examples=15, deadline=None)
@given(lat_entries, lat_entries, shift, shift)
def test_covering_invariant_under_translation(al, be, tx, ty):
    sq = Region((rectangle(0, 0, F(3, 2), 1),))
    g = Lattice2.rectangular(al, be)
    base = covering_function(sq, g).area_by_value()
    moved = covering_function(sq.translate((tx, ty)), g).area_by_value()
    assert base == moved


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([Mat2.of(2, 0, 0, 1), Mat2.of(1, 1, 0, 1), Mat2.of(0, 1, -1, 0), Mat2.of(1, 0, F(1, 2), 2)]))
def test_covering_covariant_under_dilation(m):
    tile = shearlet_tile(ShearletParams(2, 1))
    g = Lattice2.rectangular(1, F(3, 2))
    img = affine_image(tile.region, m)
    gm = Lattice2(m @ g.basis)
    rep = covering_function(img, gm)
    assert rep.is_constant and rep.k == 2
    assert rep.total_area_check == abs(m.det()) * g.covolume


# --- multiplicative ----------------------------------------------------------

@pytest.mark.parametrize("c", [F(0), F(1, 2), F(1)])
def test_shearlet_multiplicative(c):
    rep = verify_multiplicative_shearlet(ShearletParams(2, 1, c), samples=20_000, seed=11)
    assert rep.verdict and rep.violations == []
    assert rep.discard_rate < 1e-3


def test_shearlet_cover_brute_force():
    p = ShearletParams(2, 1)
    rng = np.random.default_rng(0)
    for _ in range(200):
        xi = rng.uniform(-6, 6, 2)
        if abs(xi[0]) < 0.05:
            continue
        e = shearlet_cover(xi, p)
        assert shearlet_cover_count(xi, p, e, radius=3) == 1
        assert shearlet_cover_count(xi, p, ShearElement(e.k + 5, e.m), radius=1) == 0


@pytest.mark.parametrize("n,a", [(4, 2), (6, 2), (6, 3), (8, 2)])
def test_similitude_multiplicative(n, a):
    rep = verify_multiplicative_similitude(SimilitudeParams(a, n), samples=5000)
    assert rep.verdict, rep.details
    assert all(v for k, v in rep.details.items() if k != "levels")


def test_quasi_lattice_small():
    rep = quasi_lattice_check(ShearletParams(2, 1, 0), samples=5000, seed=1)
    assert rep.verdict
    assert rep.details["max_relative_error"] <= 1e-9
