import json

import pytest

from lagderham.groebner import buchberger, radical_membership
from lagderham.varieties import (InvalidPresentation, LagrangianPresentation, check_parametrization,
                                 curve_ring, krull_dimension, lag_ideal, lag_ideal_critical,
                                 normalization_map, plane_curve, shipped_families, swallowtail_data)


def test_swallowtail_weights():
    data = swallowtail_data(2, 1)
    R = data.ambient.ring
    assert data.W == 7
    assert [R.weight_of(v) for v in ("x", "q1", "q2", "p1", "p2")] == [1, 2, 3, 5, 4]
    assert data.F.weighted_degree() == data.W


def test_sigma11_is_the_cusp_like_curve(sigma11):
    (f,) = sigma11.ideal_generators
    target = sigma11.ring.parse("9*p1^2 + 16*q1^3")
    assert f * 16 == target


def test_sigma11_radical_of_critical_image():
    L = lag_ideal_critical(1, 1)
    G = buchberger(L.ideal_generators)
    assert radical_membership(L.ring.parse("9*p1^2 + 16*q1^3"), G) == 1


def test_sigma21_shape(sigma21):
    assert sigma21.W == 7
    assert sigma21.degrees == [8, 9, 10]
    assert krull_dimension(sigma21.gb) == 2


def test_routes_agree(sigma21):
    other = lag_ideal_critical(2, 1)
    assert all(sigma21.gb.contains(f) for f in other.ideal_generators)
    assert all(other.gb.contains(f) for f in sigma21.ideal_generators)


def test_zero_swallowtail_is_smooth():
    L = lag_ideal(1, 0)
    assert L.degrees == [2]
    # F = x^3/3 + q1*x, so p1 = x and q1 = -x^2
    assert L.ideal_generators[0] == L.ring.parse("q1 + p1^2")


@pytest.mark.parametrize("n,k", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_normalization_parametrizes(n, k):
    L = lag_ideal(n, k)
    phi = normalization_map(n, k)
    assert phi.is_weighted_homogeneous()
    assert check_parametrization(L, phi)


def test_parametrization_detects_wrong_variety(sigma21):
    assert not check_parametrization(lag_ideal(2, 1), normalization_map(2, 2))


def test_json_round_trip(sigma21):
    back = LagrangianPresentation.from_json(json.loads(json.dumps(sigma21.to_json())))
    assert back.ideal_generators == sigma21.ideal_generators
    assert back.ambient == sigma21.ambient
    assert back.tag == sigma21.tag


def test_validation_errors():
    R = curve_ring(2, 3)
    with pytest.raises(InvalidPresentation):
        plane_curve(R.parse("p^2 - q^2"))
    L = plane_curve(R.parse("p^2 - q^3"))
    bad = LagrangianPresentation(L.ambient, L.ideal_generators, {}, expected_dimension=0)
    with pytest.raises(InvalidPresentation):
        bad.validate()


def test_shipped_families_are_lagrangian():
    for L in shipped_families(max_k=2):
        L.validate()
