import math

import numpy as np
import pytest
import shapely.geometry as sg

from tilewave.errors import UnverifiedDescriptor
from tilewave.exponentials import generate_lambda, riesz_bounds
from tilewave.geometry import Lattice2, shadow_image
from tilewave.groups import ShearElement, ShearletParams, SimilitudeParams, dual_action
from tilewave.tiles import scaled_to_natural, shearlet_tile, similitude_tile
from tilewave.wavelet import (
    CoefficientVector,
    WaveletSystemDescriptor,
    build_descriptor,
    eval_psi,
    grid_csv,
    psi_norm2,
    riesz_inequality,
    riesz_inequality_check,
    sampling_grid,
    system_bounds,
    system_gram,
)


@pytest.fixture(scope="module")
def shearlet_desc(w21, gamma_w):
    ts = generate_lambda(gamma_w, 2, seed=42)
    return build_descriptor(w21.region, w21.params, ts, gamma_w, samples=5000, det_samples=2000)


@pytest.fixture(scope="module")
def shearlet_system(shearlet_desc):
    return system_gram(shearlet_desc, radius=3.0)


def test_descriptor_verified(shearlet_desc):
    assert shearlet_desc.verified
    assert len(shearlet_desc.dilations()) == 9
    doc = shearlet_desc.to_json()
    assert doc["group"] == "shearlet" and set(doc["reports"]) == {"det_criterion", "multiplicative"}


def test_unverified_descriptor_refused(w21, gamma_w):
    ts = generate_lambda(gamma_w, 2, seed=42)
    d = WaveletSystemDescriptor(w21.region, w21.params, ts)
    with pytest.raises(UnverifiedDescriptor):
        system_gram(d, radius=2.0)


def test_blocks_equal_base(shearlet_system):
    assert len(shearlet_system.blocks) == 9
    assert shearlet_system.max_block_deviation() <= 1e-12
    assert shearlet_system.cross_zero


def test_supports_disjoint_by_shapely(shearlet_desc):
    shapes = []
    for g in shearlet_desc.dilations():
        parts = shadow_image(shearlet_desc.tile, dual_action(g, shearlet_desc.params))
        shapes.append(sg.MultiPolygon([sg.Polygon(p) for p in parts]))
    for i in range(len(shapes)):
        for j in range(i + 1, len(shapes)):
            assert shapes[i].intersection(shapes[j]).area < 1e-12


def test_spectrum_multiplicity(shearlet_system):
    ev_base = np.linalg.eigvalsh(shearlet_system.base.entries)
    ev_sys = np.linalg.eigvalsh(shearlet_system.dense())
    assert np.allclose(ev_sys, np.sort(np.repeat(ev_base, 9)), atol=1e-11)


def test_system_bounds_match_single_block(shearlet_system):
    sb = system_bounds(shearlet_system)
    single = riesz_bounds(shearlet_system.base)
    assert sb.lambda_min == pytest.approx(single.lambda_min, abs=1e-12)
    assert sb.lambda_max == pytest.approx(single.lambda_max, abs=1e-12)
    assert sb.extra["blocks"] == 9


def test_riesz_inequality(shearlet_system):
    sb = system_bounds(shearlet_system)
    rep = riesz_inequality_check(shearlet_system, sb, trials=200, seed=1)
    assert rep.holds and rep.worst_lower_margin >= -1e-10 and rep.worst_upper_margin >= -1e-10
    lab = shearlet_system.blocks[4].labels[0]
    c = CoefficientVector({(ShearElement(0, 0), lab): 1.0})
    lo, mid, hi = riesz_inequality(shearlet_system, c, sb)
    assert mid == pytest.approx(3.0) and lo <= mid <= hi
    with pytest.raises(KeyError):
        CoefficientVector({(ShearElement(5, 0), lab): 1.0}).dense(shearlet_system)


def test_psi_values(shearlet_desc):
    assert eval_psi(shearlet_desc, (0.0, 0.0)) == pytest.approx(3.0)
    x = np.array([[0.3, -1.1], [2.0, 0.5]])
    v = eval_psi(shearlet_desc, x)
    assert np.allclose(v.imag, 0, atol=1e-14)
    assert np.allclose(v, eval_psi(shearlet_desc, -x))


def test_psi_plancherel(shearlet_desc):
    assert psi_norm2(shearlet_desc) == pytest.approx(3.0, rel=1e-4)


@pytest.mark.parametrize("c", ["0", "1"])
def test_other_exponents_block_diagonal(w21, gamma_w, c):
    p = ShearletParams(2, 1, c)
    ts = generate_lambda(gamma_w, 2, seed=42)
    d = build_descriptor(w21.region, p, ts, gamma_w, samples=2000, det_samples=1000)
    s = system_gram(d, radius=2.0)
    assert s.cross_zero and s.max_block_deviation() <= 1e-12


def test_sampling_grid(shearlet_desc):
    rows = sampling_grid(shearlet_desc, radius=2.0)
    labels, _ = shearlet_desc.natural_points(2.0)
    assert len(rows) == 9 * len(labels)
    k, m, l1, l2, a1, a2 = rows[0]
    assert (k, m) == (-1, -1)
    # A = A_{1/2} S_{-1} = diag(1/2, 1/sqrt 2) [[1, -1], [0, 1]]
    assert a1 == pytest.approx(0.5 * (l1 - l2))
    assert a2 == pytest.approx(l2 / math.sqrt(2))
    csv = grid_csv(rows).splitlines()
    assert csv[0] == "k,m,lambda1,lambda2,A_lambda1,A_lambda2" and len(csv) == len(rows) + 1


def test_similitude_system():
    p = SimilitudeParams(2, 6)
    tile = similitude_tile(p)
    lat = Lattice2.rectangular(3, 1)
    ts = generate_lambda(lat, 2, seed=42)
    d = build_descriptor(tile.region, p, ts, lat, coord_map=scaled_to_natural(p), samples=2000, det_samples=1000)
    assert d.verified and len(d.dilations()) == 9
    s = system_gram(d, radius=2.0)
    assert s.cross_zero and s.max_block_deviation() <= 1e-12
    # the natural tile has area tan(pi/6) * scaled area
    assert s.base.area == pytest.approx(math.tan(math.pi / 6) * 6)


def test_descriptor_matches_schema(shearlet_desc):
    import jsonschema

    from tilewave.serialize import load_schema

    jsonschema.validate(shearlet_desc.to_json(), load_schema("descriptor"))
