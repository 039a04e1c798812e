"""Conormal module I/I^2 of a lagrangian ideal and its Lie algebroid structure."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .groebner import (DEFAULT_ORDER, GroebnerBasis, ModuleVector, _Engine, _polys_from_vec,
                       _vec_from_polys, normal_form, reduce_vector, syzygies)
from .polyring import Polynomial
from .symplectic import poisson_bracket
from .varieties import LagrangianPresentation


class NotInvolutive(ValueError):
    pass


class Lifter:
    """Expresses ideal members as combinations of a fixed generator list."""

    def __init__(self, generators: Sequence[Polynomial]):
        self.generators = list(generators)
        ring = self.generators[0].ring
        self.ring = ring
        self.engine = _Engine(ring, DEFAULT_ORDER)
        m = len(self.generators)
        tags = [{(i, ring.one_exps): Fraction(1)} for i in range(m)]
        vecs = [_vec_from_polys([g]) for g in self.generators]
        self.basis, self.leads, self.tags = self.engine.groebner(vecs, tags=tags)

    def lift(self, h: Polynomial) -> list | None:
        r, q = self.engine.reduce(_vec_from_polys([h]), self.basis, self.leads, track=self.tags)
        if r:
            return None
        return _polys_from_vec(q, self.ring, len(self.generators))


@dataclass
class ConormalPresentation:
    generators: tuple
    degrees: tuple
    relations: list            # rows (s_1..s_r), entries reduced mod I, zero rows dropped
    relation_degrees: list     # degree D_j with deg s_ja = D_j - d_a
    base_gb: GroebnerBasis

    @property
    def rank(self) -> int:
        return len(self.generators)

    def is_free(self) -> bool:
        return not self.relations

    def to_json(self) -> dict:
        return {
            "ring": self.base_gb.ring.descriptor(),
            "generators": [str(f) for f in self.generators],
            "degrees": list(self.degrees),
            "relations": [r.to_strings() for r in self.relations],
            "relation_degrees": list(self.relation_degrees),
        }


def conormal_presentation(L: LagrangianPresentation) -> ConormalPresentation:
    gens = L.ideal_generators
    degs = tuple(L.degrees)
    G = L.gb
    out, odeg, seen = [], [], set()
    for s in syzygies([ModuleVector([f]) for f in gens], shifts=[0], ring=L.ring):
        v = reduce_vector(s, G)
        if v.is_zero() or v in seen:
            continue
        seen.add(v)
        out.append(v)
        odeg.append(v.degree(list(degs)))
    return ConormalPresentation(tuple(gens), degs, out, odeg, G)


@dataclass
class BracketStructure:
    """{f_a, f_b} = sum_e coefficients[(a, b)][e] * f_e exactly in the ambient ring."""

    coefficients: dict         # (a, b) with a < b -> list of Polynomial (unreduced)
    reduced: dict              # same, entries reduced mod I
    L: LagrangianPresentation

    def anchor(self, a: int, g: Polynomial) -> Polynomial:
        return normal_form(poisson_bracket(self.L.ambient, self.L.ideal_generators[a], g), self.L.gb)

    def coefficient(self, a: int, b: int, e: int) -> Polynomial:
        """Antisymmetric extension c_{ab}^e with c_{aa} = 0."""
        if a == b:
            return self.L.ring.zero()
        if a < b:
            return self.reduced[(a, b)][e]
        return -self.reduced[(b, a)][e]

    def certificate(self) -> bool:
        S = self.L.ambient
        f = self.L.ideal_generators
        for (a, b), cs in self.coefficients.items():
            h = poisson_bracket(S, f[a], f[b])
            for c, fe in zip(cs, f):
                h = h - c * fe
            if not h.is_zero():
                return False
        return True

    def to_json(self) -> dict:
        return {f"{a},{b}": [str(c) for c in cs] for (a, b), cs in sorted(self.reduced.items())}


def bracket_structure(L: LagrangianPresentation) -> BracketStructure:
    gens = L.ideal_generators
    S = L.ambient
    lifter = Lifter(gens) if len(gens) > 1 else None
    raw, red = {}, {}
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            h = poisson_bracket(S, gens[a], gens[b])
            cs = lifter.lift(h)
            if cs is None:
                raise NotInvolutive(f"{{f_{a}, f_{b}}} is not in the ideal")
            raw[(a, b)] = cs
            red[(a, b)] = [normal_form(c, L.gb) for c in cs]
    return BracketStructure(raw, red, L)
