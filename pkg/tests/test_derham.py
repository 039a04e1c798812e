import json

import pytest

from lagderham.derham import (DeRhamComplex, build_cochain, cohomology_table, default_bound, delta,
                              graded_slice, rigidity_verdict)
from lagderham.homology import plane_curve_h1


@pytest.fixture(scope="module")
def cusp_complex(cusp):
    return DeRhamComplex(cusp)


@pytest.fixture(scope="module")
def s21_complex(sigma21):
    return DeRhamComplex(sigma21)


def test_default_bound(cusp, sigma21):
    assert default_bound(cusp) == 2 * 6 + 5 + 10
    assert default_bound(sigma21) == 2 * 10 + 7 + 10


def test_cochain_model(sigma21):
    C1 = build_cochain(sigma21, 1)
    assert C1.blocks == [(0,), (1,), (2,)]
    assert C1.block_degrees[(0,)] == 8 - 7
    C2 = build_cochain(sigma21, 2)
    assert len(C2.blocks) == 3
    assert len(C2.conditions) == len(DeRhamComplex(sigma21).conormal.relations) * 3


def test_delta_descriptor_terms(sigma21):
    D = delta(sigma21, 1)
    assert len(D.anchor_terms) == 3 * 2
    assert len(D.bracket_terms) == 3
    assert all(isinstance(line, str) for line in D.describe())


def test_cusp_cohomology(cusp_complex):
    assert cohomology_table(cusp_complex, 0).nonzero() == {0: 1}
    assert cohomology_table(cusp_complex, 1).nonzero() == {-1: 1, 1: 1}


def test_curve_oracle_agrees(cusp_complex, cusp):
    rep = cohomology_table(cusp_complex, 1)
    direct = plane_curve_h1(cusp, [r.e for r in rep.degrees])
    assert rep.nonzero() == direct


def test_smooth_curve_has_no_h1(smooth):
    assert cohomology_table(smooth, 1).nonzero() == {}


def test_sigma21_rigid(s21_complex):
    v = rigidity_verdict(s21_complex)
    assert v.vanishes
    assert "bounded" in v.label
    assert cohomology_table(s21_complex, 0).nonzero() == {0: 1}


def test_delta_squared_and_conditions(s21_complex, sigma21):
    for p in (0, 1):
        for e in range(s21_complex.min_degree(p), 16):
            assert s21_complex.composition_vanishes(p, e)
            assert s21_complex.image_satisfies_conditions(p, e)


def test_slice_dimensions_consistent(s21_complex):
    for e in range(2, 12):
        sl, into, out = graded_slice(s21_complex, 1, e)
        res = s21_complex.cohomology_degree(1, e)
        assert len(sl.basis) == res.dim_cochains
        assert len(out) == sl.free_dim


def test_slice_cap_reports_error(sigma21):
    C = DeRhamComplex(sigma21, max_slice_dim=2)
    rep = cohomology_table(C, 1, degree_range=range(20, 22))
    assert all(r.error for r in rep.degrees)
    assert not rigidity_verdict(C, bound=21).vanishes


def test_report_is_deterministic(cusp):
    a = json.dumps(cohomology_table(cusp, 1).to_json(), sort_keys=True)
    b = json.dumps(cohomology_table(cusp, 1).to_json(), sort_keys=True)
    assert a == b


def test_permutation_invariance(sigma21):
    base = DeRhamComplex(sigma21)
    perm = DeRhamComplex(sigma21.permuted([2, 0, 1]))
    rng = range(0, 20)
    for p in (0, 1, 2):
        assert cohomology_table(base, p, rng).dims() == cohomology_table(perm, p, rng).dims()


def test_unsupported_degree(cusp_complex):
    with pytest.raises(ValueError):
        cusp_complex.cohomology_degree(3, 0)
