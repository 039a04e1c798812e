from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from lagderham import linalg

entries = st.fractions(min_value=-4, max_value=4, max_denominator=3)
vectors = st.lists(st.dictionaries(st.integers(0, 6), entries, max_size=5), max_size=8)


def clean(vs):
    return [{k: v for k, v in d.items() if v} for d in vs]


@given(vectors)
def test_backends_agree(vs):
    vs = clean(vs)
    ref = linalg.rank_fractions(vs)
    for backend in linalg.available_backends():
        assert linalg.rank(vs, backend) == ref


@given(vectors)
def test_kernel_is_kernel(vs):
    vs = clean(vs)
    ker = linalg.kernel(vs)
    assert len(ker) + linalg.rank(vs) == len(vs)
    for c in ker:
        assert linalg.combine(vs, c) == {}


def test_rank_examples():
    F = Fraction
    assert linalg.rank([]) == 0
    assert linalg.rank([{0: F(1), 1: F(2)}, {0: F(2), 1: F(4)}]) == 1
    assert linalg.rank([{0: F(1, 2)}, {1: F(1, 3)}, {0: F(1), 1: F(1)}]) == 2


def test_backend_selection(monkeypatch):
    monkeypatch.setenv("LAGDERHAM_LINALG", "python")
    assert linalg.default_backend() == "python"
    monkeypatch.setenv("LAGDERHAM_LINALG", "nonsense")
    with pytest.raises(ValueError):
        linalg.default_backend()


def test_wide_and_tall_orientations():
    wide = [{j: Fraction(i + j + 1) ** 2 for j in range(30)} for i in range(4)]
    assert linalg.rank(wide) == linalg.rank_fractions(wide) == 3
