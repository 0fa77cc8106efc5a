import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilewave.errors import BoundaryPoint
from tilewave.geometry import Mat2
from tilewave.groups import (
    ContinuousShearFactor,
    ShearElement,
    ShearletParams,
    SimilitudeElement,
    SimilitudeParams,
    compose,
    dual_action,
    element_matrix,
    element_pair,
    factorize,
    h_matrix,
    rational_power,
    reconstruct,
    rotation_matrix,
    shear_matrix,
)

P = ShearletParams(2, 1)


def test_params_validation():
    with pytest.raises(ValueError):
        ShearletParams(1, 1)
    with pytest.raises(ValueError):
        ShearletParams(2, 0)
    with pytest.raises(ValueError):
        SimilitudeParams(2, 5)
    with pytest.raises(ValueError):
        SimilitudeParams(1, 6)


def test_rational_power():
    assert rational_power(F(4), F(1, 2)) == 2
    assert rational_power(F(9, 4), F(3, 2)) == F(27, 8)
    assert rational_power(F(2), F(1, 2)) is None


def test_shear_matrix_exact_at_even_scale():
    m = shear_matrix(ShearElement(2, 1), P)
    assert m.is_exact
    assert m == Mat2.of(4, 4, 0, 2)
    odd = shear_matrix(ShearElement(1, 0), P)
    assert not odd.is_exact
    assert np.allclose(odd.shadow, [[2, 0], [0, math.sqrt(2)]])


def test_shear_normal_form_matches_matrix():
    e = ShearElement(2, -3)
    s, y = element_pair(e, P)
    assert h_matrix(s, y, P) == shear_matrix(e, P)


def test_dual_action_is_inverse_transpose():
    for e in (ShearElement(0, 1), ShearElement(2, -1), ShearElement(-2, 3)):
        g = element_matrix(e, P)
        gt = dual_action(e, P)
        prod = gt @ Mat2(tuple(g.entries[i] for i in (0, 2, 1, 3)))
        assert prod == Mat2.identity()


def test_rotation_exact_on_quarter_turns():
    q = SimilitudeParams(2, 4)
    assert rotation_matrix(1, q) == Mat2.of(0, -1, 1, 0)
    assert rotation_matrix(2, q) == Mat2.of(-1, 0, 0, -1)
    six = SimilitudeParams(2, 6)
    r = rotation_matrix(1, six).shadow
    assert np.allclose(r @ r @ r, -np.eye(2))


def test_similitude_dual_action():
    q = SimilitudeParams(3, 6)
    e = SimilitudeElement(1, 2)
    g = element_matrix(e, q).shadow
    assert np.allclose(dual_action(e, q).shadow, np.linalg.inv(g).T)


def test_continuous_factor_bounds():
    ContinuousShearFactor(0.7, 0.2, P)
    with pytest.raises(ValueError):
        ContinuousShearFactor(0.4, 0.0, P)
    with pytest.raises(ValueError):
        ContinuousShearFactor(0.7, 0.5, P)


def test_factorize_exact_example():
    # S_r A_t with t = 3, r = 5: k = 2, s = 3/4
    f = factorize(F(3), F(5), ShearletParams(2, 1, 0))
    assert (f.k, f.m, f.s, f.y) == (2, 1, F(3, 4), F(1, 4))
    assert reconstruct(f, ShearletParams(2, 1, 0)) == h_matrix(F(3), F(5), ShearletParams(2, 1, 0))


def test_factorize_boundary():
    with pytest.raises(BoundaryPoint):
        factorize(F(4), F(0), P)
    with pytest.raises(BoundaryPoint):
        factorize(F(3, 4), F(1, 2), P)


exps = st.sampled_from([F(0), F(1, 2), F(1)])
elems = st.tuples(st.integers(-3, 3).map(lambda k: F(2) ** (2 * k)), st.fractions(-4, 4, max_denominator=8))


@settings(max_examples=60, deadline=None)
@given(elems, elems, elems, exps)
def test_compose_associative_and_matches_matrices(g1, g2, g3, c):
    p = ShearletParams(2, 1, c)
    left = compose(compose(g1, g2, p), g3, p)
    right = compose(g1, compose(g2, g3, p), p)
    assert left == right
    m12 = h_matrix(*compose(g1, g2, p), p)
    assert m12 == h_matrix(*g1, p) @ h_matrix(*g2, p)


@settings(max_examples=60, deadline=None)
@given(st.integers(-2, 2), st.integers(-3, 3), st.integers(-2, 2), st.integers(-3, 3))
def test_dual_action_homomorphism(k1, m1, k2, m2):
    e1, e2 = ShearElement(2 * k1, m1), ShearElement(2 * k2, m2)
    g = element_matrix(e1, P) @ element_matrix(e2, P)
    lhs = g.inverse_transpose()
    assert lhs == dual_action(e1, P) @ dual_action(e2, P)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.05, 20), st.floats(-10, 10), exps)
def test_factorize_round_trip(t, r, c):
    p = ShearletParams(2, 1, c)
    try:
        f = factorize(t, r, p)
    except BoundaryPoint:
        return
    assert 0.5 < f.s < 1 and abs(f.y) < 0.5
    target = np.array([[t, r * t ** float(c)], [0, t ** float(c)]])
    assert np.allclose(reconstruct(f, p).shadow, target, rtol=1e-12, atol=1e-12)
