"""Lagrangian varieties: open swallowtails, generating-function images, plane curves."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .groebner import (GroebnerBasis, ModuleVector, buchberger, elimination_ideal,
                       minimal_generators)
from .polyring import INHOMOGENEOUS, Polynomial, WeightedRing
from .symplectic import SymplecticRing, check_involutive


class InvalidPresentation(ValueError):
    pass


@dataclass
class LagrangianPresentation:
    ambient: SymplecticRing
    ideal_generators: tuple
    family_tag: dict = field(default_factory=dict)
    expected_dimension: int | None = None

    def __post_init__(self):
        self.ideal_generators = tuple(self.ideal_generators)
        if self.expected_dimension is None:
            self.expected_dimension = self.ambient.n
        for f in self.ideal_generators:
            if f.ring != self.ambient.ring:
                raise InvalidPresentation("generator outside the ambient ring")
            if f.is_zero():
                raise InvalidPresentation("zero generator")
            if f.weighted_degree() is INHOMOGENEOUS:
                raise InvalidPresentation(f"generator {f} is not quasihomogeneous")

    @property
    def ring(self) -> WeightedRing:
        return self.ambient.ring

    @property
    def W(self) -> int:
        return self.ambient.W

    @property
    def degrees(self) -> list:
        return [f.weighted_degree() for f in self.ideal_generators]

    @property
    def gb(self) -> GroebnerBasis:
        g = self.__dict__.get("_gb")
        if g is None:
            g = buchberger(self.ideal_generators, ring=self.ring)
            self.__dict__["_gb"] = g
        return g

    @property
    def tag(self) -> str:
        t = self.family_tag
        fam = t.get("family", "custom")
        if fam == "swallowtail":
            return f"swallowtail(n={t['n']},k={t['k']})"
        if fam == "curve":
            return f"curve({t.get('poly', self.ideal_generators[0])})"
        return fam

    def permuted(self, perm: Sequence[int]) -> "LagrangianPresentation":
        gens = [self.ideal_generators[i] for i in perm]
        tag = dict(self.family_tag, permutation=list(perm))
        return LagrangianPresentation(self.ambient, tuple(gens), tag, self.expected_dimension)

    def validate(self) -> None:
        res = check_involutive(self.ambient, self.ideal_generators, self.gb)
        if not res:
            raise InvalidPresentation(f"ideal is not involutive: pair {res.pair}, remainder {res.remainder}")
        dim = krull_dimension(self.gb)
        if dim != self.expected_dimension:
            raise InvalidPresentation(f"dimension {dim} != expected {self.expected_dimension}")

    def to_json(self) -> dict:
        return {
            "family": self.family_tag,
            "ring": self.ambient.descriptor(),
            "generators": [str(f) for f in self.ideal_generators],
            "expected_dimension": self.expected_dimension,
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "LagrangianPresentation":
        S = SymplecticRing.from_descriptor(d["ring"])
        gens = tuple(S.ring.parse(s) for s in d["generators"])
        return cls(S, gens, dict(d.get("family") or {}), d.get("expected_dimension"))


def krull_dimension(G: GroebnerBasis, ring: WeightedRing | None = None) -> int:
    """dim R/I from the leading monomials: largest variable set avoided by every leading term."""
    ring = ring or G.ring
    lms = G.leading_exponents() if G.generators else []
    n = ring.nvars
    if any(not any(e) for e in lms):
        return -1
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            sset = set(S)
            if not any(all(i in sset for i, k in enumerate(e) if k) for e in lms):
                return size
    return 0


# ---------------------------------------------------------------------------
# swallowtails


@dataclass(frozen=True)
class SwallowtailData:
    n: int
    k: int
    ambient: SymplecticRing      # includes the auxiliary variable x
    g: Polynomial
    F: Polynomial

    @property
    def W(self) -> int:
        return self.ambient.W


def swallowtail_data(n: int, k: int) -> SwallowtailData:
    """g_n = x^{n+1} + q1 x^{n-1} + ... + qn and F_{n,k} = int_0^x g_n(s)^{k+1} ds."""
    if n < 1 or k < 0:
        raise ValueError("need n >= 1, k >= 0")
    W = (k + 1) * (n + 1) + 1
    S = SymplecticRing.standard([i + 2 for i in range(n)], W, aux={"x": 1})
    R = S.ring
    x = R.gen("x")
    g = x ** (n + 1)
    for i in range(1, n + 1):
        g = g + R.gen(f"q{i}") * x ** (n - i)
    F = (g ** (k + 1)).integrate_from_zero("x")
    return SwallowtailData(n, k, S, g, F)


@dataclass(frozen=True)
class ParametrizationMap:
    source: WeightedRing
    target: SymplecticRing
    components: tuple   # (name, Polynomial over source) per ambient variable

    def as_dict(self) -> dict:
        return dict(self.components)

    def pullback(self, f: Polynomial) -> Polynomial:
        return f.substitute(self.as_dict(), self.source)

    def is_weighted_homogeneous(self) -> bool:
        return all(c.is_zero() or c.weighted_degree() == self.target.ring.weight_of(v)
                   for v, c in self.components)

    def to_json(self) -> dict:
        return {
            "source": self.source.descriptor(),
            "target": self.target.descriptor(),
            "components": {v: str(c) for v, c in self.components},
        }


def normalization_map(n: int, k: int) -> ParametrizationMap:
    """(x, q1..q_{n-1}) -> (q, p) with q_n = -(x^{n+1} + sum q_i x^{n-i}), p_i = dF/dq_i."""
    data = swallowtail_data(n, k)
    big = data.ambient.ring
    src_names = ("x",) + tuple(f"q{i}" for i in range(1, n))
    src = WeightedRing(src_names, tuple(big.weight_of(v) for v in src_names))
    x = src.gen("x")
    qn = x ** (n + 1)
    for i in range(1, n):
        qn = qn + src.gen(f"q{i}") * x ** (n - i)
    qn = -qn
    subst = {v: src.gen(v) for v in src_names}
    subst[f"q{n}"] = qn
    target = data.ambient.without_aux()
    comps = []
    for i in range(1, n + 1):
        comps.append((f"q{i}", subst[f"q{i}"]))
    for i in range(1, n + 1):
        pi = data.F.diff(f"q{i}")
        comps.append((f"p{i}", pi.substitute(subst, src)))
    order = {v: j for j, v in enumerate(target.ring.names)}
    comps.sort(key=lambda t: order[t[0]])
    return ParametrizationMap(src, target, tuple(comps))


def kernel_of_pullback(phi: ParametrizationMap, max_pairs: int | None = None) -> list:
    """Ideal of the image closure, by eliminating the source variables from the graph ideal."""
    tgt = phi.target.ring
    src = phi.source
    shared = [v for v in src.names if v in tgt.index]
    for v in shared:
        if src.weight_of(v) != tgt.weight_of(v):
            raise ValueError(f"weight of {v} differs between source and target")
    extra = [v for v in src.names if v not in tgt.index]
    big = WeightedRing(tuple(extra) + tgt.names,
                       tuple(src.weight_of(v) for v in extra) + tgt.weights)
    graph = []
    for v, c in phi.components:
        lifted = c.change_ring(big)
        diff = big.gen(v) - lifted
        if diff:
            graph.append(diff)
    elim = elimination_ideal(graph, extra, max_pairs=max_pairs) if extra else list(graph)
    return [f.change_ring(tgt) for f in elim]


def minimal_ideal_generators(gens: Sequence[Polynomial]) -> list:
    """Minimal homogeneous generators, chosen greedily in increasing degree, sorted."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    vecs = minimal_generators([ModuleVector([g]) for g in sort_generators(gens)], [0])
    return sort_generators([v[0] for v in vecs])


def sort_generators(gens: Sequence[Polynomial]) -> list:
    """Deterministic order: weighted degree, then leading term."""
    G = buchberger(list(gens)) if gens else None
    key = G.engine.mkey if G else None
    return sorted(gens, key=lambda f: (f.weighted_degree(), key(f.leading_term()[0])))


def lag_ideal(n: int, k: int, max_pairs: int | None = None, validate: bool = True) -> LagrangianPresentation:
    """Prime ideal of Sigma_{n,k} as the kernel of the normalization pullback."""
    phi = normalization_map(n, k)
    gens = minimal_ideal_generators(kernel_of_pullback(phi, max_pairs=max_pairs))
    L = LagrangianPresentation(phi.target, tuple(gens),
                               {"family": "swallowtail", "n": n, "k": k, "route": "kernel"}, n)
    if validate:
        L.validate()
    return L


def lag_ideal_from_generating_function(F: Polynomial, internal_vars: Sequence[str],
                                       ambient: SymplecticRing, max_pairs: int | None = None) -> list:
    """Eliminate the internal variables from <dF/dx_j, p_i - dF/dq_i>.

    The result is the scheme-theoretic image; it need not be radical.
    """
    R = ambient.ring
    if F.ring != R:
        raise ValueError("F must live in the ambient ring with auxiliary variables")
    eqs = [F.diff(x) for x in internal_vars]
    for q, p in zip(ambient.q_names, ambient.p_names):
        eqs.append(R.gen(p) - F.diff(q))
    eqs = [e for e in eqs if e]
    elim = elimination_ideal(eqs, internal_vars, max_pairs=max_pairs)
    small = ambient.without_aux().ring
    return [f.change_ring(small) for f in elim]


def lag_ideal_critical(n: int, k: int, max_pairs: int | None = None) -> LagrangianPresentation:
    data = swallowtail_data(n, k)
    gens = lag_ideal_from_generating_function(data.F, ["x"], data.ambient, max_pairs=max_pairs)
    return LagrangianPresentation(data.ambient.without_aux(), tuple(minimal_ideal_generators(gens)),
                                  {"family": "swallowtail", "n": n, "k": k, "route": "critical"}, n)


def plane_curve(f: Polynomial, q: str | None = None, p: str | None = None,
                tag: Mapping | None = None) -> LagrangianPresentation:
    """Every reduced curve in the plane is lagrangian; ``f`` must be quasihomogeneous."""
    R = f.ring
    if R.nvars != 2:
        raise ValueError("plane curves live in a two-variable ring")
    if f.is_zero():
        raise InvalidPresentation("the zero polynomial does not define a curve")
    if f.weighted_degree() is INHOMOGENEOUS:
        raise InvalidPresentation(f"{f} is not quasihomogeneous")
    if q is None or p is None:
        a, b = R.names
        if a.startswith("p") and b.startswith("q"):
            a, b = b, a
        q, p = q or a, p or b
    W = R.weight_of(q) + R.weight_of(p)
    S = SymplecticRing(1, R, W, (q,), (p,))
    t = {"family": "curve", "poly": str(f)}
    t.update(tag or {})
    return LagrangianPresentation(S, (f,), t, 1)


def curve_ring(q_weight: int, p_weight: int, q: str = "q", p: str = "p") -> WeightedRing:
    return WeightedRing((q, p), (q_weight, p_weight))


def check_parametrization(L: LagrangianPresentation, phi: ParametrizationMap,
                          seed: int = 0) -> bool:
    """Generators pull back to 0 and the Jacobian has full rank at a random rational point."""
    if phi.target.ring != L.ring:
        return False
    for f in L.ideal_generators:
        if not phi.pullback(f).is_zero():
            return False
    rng = random.Random(seed)
    point = {v: Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for v in phi.source.names}
    cols = []
    for s in phi.source.names:
        col = {}
        for j, (_, c) in enumerate(phi.components):
            val = c.diff(s).evaluate(point)
            if val:
                col[j] = val
        cols.append(col)
    return linalg.rank(cols) == phi.source.nvars


def shipped_families(max_k: int = 3) -> list:
    """Small families used by property suites and the reproduction harness."""
    out = []
    rq = curve_ring(2, 3)
    out.append(plane_curve(rq.parse("p^2 - q^3"), tag={"name": "cusp"}))
    r5 = curve_ring(2, 5)
    out.append(plane_curve(r5.parse("p^2 - q^5"), tag={"name": "A4"}))
    r1 = curve_ring(1, 1)
    out.append(plane_curve(r1.parse("p"), tag={"name": "zero-section"}))
    out.append(lag_ideal(1, 1))
    out.append(lag_ideal(1, 2))
    for k in range(1, max_k + 1):
        out.append(lag_ideal(2, k))
    return out
