import random

import pytest

from lagderham.algebroid import NotInvolutive, bracket_structure, conormal_presentation
from lagderham.groebner import normal_form
from lagderham.polyring import Polynomial
from lagderham.symplectic import SymplecticRing
from lagderham.varieties import LagrangianPresentation


def test_conormal_of_curve_is_free(cusp):
    C = conormal_presentation(cusp)
    assert C.rank == 1 and C.is_free()


def test_conormal_relations_vanish_mod_i(sigma21):
    C = conormal_presentation(sigma21)
    assert C.rank == 3 and not C.is_free()
    for row, D in zip(C.relations, C.relation_degrees):
        total = sum((s * f for s, f in zip(row, sigma21.ideal_generators)), sigma21.ring.zero())
        assert sigma21.gb.contains(total)
        assert row.degree([d for d in sigma21.degrees]) == D


def test_bracket_certificate(sigma21, sigma22):
    for L in (sigma21, sigma22):
        B = bracket_structure(L)
        assert B.certificate()
        for (a, b), cs in B.reduced.items():
            for e, c in enumerate(cs):
                assert B.coefficient(b, a, e) == -c
                deg = L.degrees[a] + L.degrees[b] - L.W - L.degrees[e]
                assert c.is_zero() or c.weighted_degree() == deg


def test_not_involutive_rejected():
    S = SymplecticRing.standard([1], 2)
    L = LagrangianPresentation(S, (S.ring.gen("q1"), S.ring.gen("p1")), {}, 0)
    with pytest.raises(NotInvolutive):
        bracket_structure(L)


def test_anchor_is_a_derivation(sigma21):
    B = bracket_structure(sigma21)
    R = sigma21.ring
    rng = random.Random(7)
    mons = [m for d in range(2, 8) for m in R.monomials_of_degree(d)]
    for _ in range(20):
        g = Polynomial(R, {rng.choice(mons): rng.randint(-3, 3)})
        h = Polynomial(R, {rng.choice(mons): rng.randint(-3, 3)})
        a = rng.randrange(3)
        lhs = B.anchor(a, g * h)
        rhs = normal_form(g * B.anchor(a, h) + h * B.anchor(a, g), sigma21.gb)
        assert lhs == rhs
