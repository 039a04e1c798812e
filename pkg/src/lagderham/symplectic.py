"""Canonical symplectic structure on Q^{2n} with quasihomogeneous weights.

Sign convention: {f, g} = sum_i (df/dp_i * dg/dq_i - df/dq_i * dg/dp_i), so
{p_i, q_j} = delta_ij.  Variables outside the (q, p) block are Poisson-central.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .groebner import GroebnerBasis, buchberger, normal_form
from .polyring import Polynomial, WeightedRing


@dataclass(frozen=True)
class SymplecticRing:
    n: int
    ring: WeightedRing
    W: int
    q_names: tuple
    p_names: tuple

    def __post_init__(self):
        if len(self.q_names) != self.n or len(self.p_names) != self.n:
            raise ValueError("need n position and n momentum variables")
        for q, p in zip(self.q_names, self.p_names):
            wq, wp = self.ring.weight_of(q), self.ring.weight_of(p)
            if wq + wp != self.W:
                raise ValueError(
                    f"w({q}) + w({p}) = {wq}+{wp} != W = {self.W}: symplectic form not quasihomogeneous")

    @classmethod
    def standard(cls, q_weights: Sequence[int], W: int, aux: Mapping[str, int] | None = None,
                 q_names: Sequence[str] | None = None, p_names: Sequence[str] | None = None):
        """Ring with variables q1..qn, p1..pn (plus ``aux``), w(p_i) = W - w(q_i)."""
        n = len(q_weights)
        qn = tuple(q_names or [f"q{i + 1}" for i in range(n)])
        pn = tuple(p_names or [f"p{i + 1}" for i in range(n)])
        names = qn + pn
        weights = tuple(q_weights) + tuple(W - w for w in q_weights)
        if aux:
            names = tuple(aux) + names
            weights = tuple(aux.values()) + weights
        return cls(n, WeightedRing(names, weights), W, qn, pn)

    @property
    def q_vars(self):
        return [self.ring.gen(q) for q in self.q_names]

    @property
    def p_vars(self):
        return [self.ring.gen(p) for p in self.p_names]

    def without_aux(self) -> "SymplecticRing":
        names = self.q_names + self.p_names
        sub = WeightedRing(names, tuple(self.ring.weight_of(v) for v in names))
        return SymplecticRing(self.n, sub, self.W, self.q_names, self.p_names)

    def descriptor(self) -> dict:
        d = self.ring.descriptor()
        d.update({"n": self.n, "W": self.W, "q": list(self.q_names), "p": list(self.p_names)})
        return d

    @classmethod
    def from_descriptor(cls, d: Mapping) -> "SymplecticRing":
        ring = WeightedRing.from_descriptor(d)
        n = int(d["n"])
        qn = tuple(d.get("q") or [f"q{i + 1}" for i in range(n)])
        pn = tuple(d.get("p") or [f"p{i + 1}" for i in range(n)])
        return cls(n, ring, int(d["W"]), qn, pn)

    # -- bracket
    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        return poisson_bracket(self, f, g)


def poisson_bracket(S: SymplecticRing, f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != S.ring or g.ring != S.ring:
        raise ValueError("bracket arguments must live in the symplectic ring")
    acc: dict = {}
    for q, p in zip(S.q_names, S.p_names):
        for a, b, sign in ((f.diff(p), g.diff(q), 1), (f.diff(q), g.diff(p), -1)):
            if not a.terms or not b.terms:
                continue
            for e1, c1 in a.terms.items():
                for e2, c2 in b.terms.items():
                    e = tuple(x + y for x, y in zip(e1, e2))
                    acc[e] = acc.get(e, 0) + sign * c1 * c2
    return Polynomial(S.ring, {e: c for e, c in acc.items() if c}, _trusted=True)


def hamiltonian_field_apply(S: SymplecticRing, h: Polynomial, g: Polynomial) -> Polynomial:
    """The derivation g -> {h, g}."""
    return poisson_bracket(S, h, g)


def hamiltonian_vector(S: SymplecticRing, h: Polynomial) -> dict:
    """Coefficients of the Hamiltonian field of h on each coordinate: {h, v}."""
    return {v: poisson_bracket(S, h, S.ring.gen(v)) for v in S.q_names + S.p_names}


@dataclass
class InvolutivityResult:
    involutive: bool
    pair: tuple | None = None
    remainder: Polynomial | None = None

    def __bool__(self):
        return self.involutive


def check_involutive(S: SymplecticRing, generators: Sequence[Polynomial],
                     G: GroebnerBasis | None = None) -> InvolutivityResult:
    """True iff the ideal is closed under the bracket; otherwise the first offending pair."""
    gens = list(generators)
    G = G or buchberger(gens, ring=S.ring)
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            r = normal_form(poisson_bracket(S, gens[a], gens[b]), G)
            if not r.is_zero():
                return InvolutivityResult(False, (a, b), r)
    return InvolutivityResult(True)
