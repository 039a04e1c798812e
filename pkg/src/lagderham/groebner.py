"""Gröbner bases for ideals and submodules of free modules over a WeightedRing.

Internally every element is a sparse vector ``{(component, exponents): Fraction}``;
an ideal is the rank-1 case.  Module orders are position-over-term with
smaller component index ranking higher, and the ring order inside a component.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .polyring import (BOTTOM, INHOMOGENEOUS, Polynomial, WeightedRing,
                       degrevlex_key)

log = logging.getLogger(__name__)


class ResourceCapExceeded(RuntimeError):
    """A computation exceeded its configured pair/size cap."""


class NotGraded(ValueError):
    pass


# ---------------------------------------------------------------------------
# orders


@dataclass(frozen=True)
class MonomialOrder:
    """``kind`` is ``"wdegrevlex"`` or ``"block"``; ``block`` names the eliminated variables."""

    kind: str = "wdegrevlex"
    block: tuple = ()

    def __post_init__(self):
        if self.kind not in ("wdegrevlex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        object.__setattr__(self, "block", tuple(sorted(self.block)))

    @classmethod
    def elimination(cls, drop: Iterable) -> "MonomialOrder":
        return cls("block", tuple(drop))

    def key_function(self, ring: WeightedRing):
        w = ring.weights
        if self.kind == "wdegrevlex" or not self.block:
            return lambda e: degrevlex_key(w, e)
        bidx = [ring.var_index(v) for v in ring.names if v in self.block]
        ridx = [i for i in range(ring.nvars) if i not in bidx]
        wb = tuple(w[i] for i in bidx)
        wr = tuple(w[i] for i in ridx)

        def key(e):
            return (degrevlex_key(wb, tuple(e[i] for i in bidx)),
                    degrevlex_key(wr, tuple(e[i] for i in ridx)))
        return key

    def to_json(self):
        return {"kind": self.kind, "block": list(self.block)}


DEFAULT_ORDER = MonomialOrder()


# ---------------------------------------------------------------------------
# module vectors


class ModuleVector:
    """Fixed-length tuple of polynomials over one ring."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Polynomial], ring: WeightedRing | None = None):
        comps = tuple(components)
        if ring is None:
            if not comps:
                raise ValueError("empty vector needs an explicit ring")
            ring = comps[0].ring
        for c in comps:
            if c.ring != ring:
                raise ValueError("components live in different rings")
        self.ring = ring
        self.components = comps

    @classmethod
    def parse(cls, ring: WeightedRing, entries: Sequence[str]) -> "ModuleVector":
        return cls([ring.parse(s) for s in entries], ring)

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other):
        return ModuleVector([a + b for a, b in zip(self, other)], self.ring)

    def __sub__(self, other):
        return ModuleVector([a - b for a, b in zip(self, other)], self.ring)

    def __neg__(self):
        return ModuleVector([-a for a in self], self.ring)

    def scale(self, f) -> "ModuleVector":
        return ModuleVector([f * a for a in self], self.ring)

    def dot(self, other) -> Polynomial:
        acc = self.ring.zero()
        for a, b in zip(self, other):
            if a and b:
                acc = acc + a * b
        return acc

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def degree(self, shifts: Sequence[int] | None = None):
        """Weighted degree w.r.t. component shifts; ``INHOMOGENEOUS``/``BOTTOM`` as for polynomials."""
        shifts = shifts or [0] * len(self)
        degs = set()
        for c, s in zip(self.components, shifts):
            d = c.weighted_degree()
            if d is BOTTOM:
                continue
            if d is INHOMOGENEOUS:
                return INHOMOGENEOUS
            degs.add(d + s)
        if not degs:
            return BOTTOM
        return degs.pop() if len(degs) == 1 else INHOMOGENEOUS

    def to_strings(self) -> list:
        return [str(c) for c in self.components]

    def __repr__(self):
        return f"ModuleVector({self.to_strings()})"


def _vec_from_polys(polys: Sequence[Polynomial], offset: int = 0) -> dict:
    v = {}
    for i, p in enumerate(polys):
        for e, c in p.terms.items():
            v[(i + offset, e)] = c
    return v


def _polys_from_vec(v: dict, ring: WeightedRing, rank: int, offset: int = 0) -> list:
    parts: list = [dict() for _ in range(rank)]
    for (i, e), c in v.items():
        j = i - offset
        if 0 <= j < rank:
            parts[j][e] = c
    return [Polynomial(ring, p, _trusted=True) for p in parts]


# ---------------------------------------------------------------------------
# core engine


class _Engine:
    def __init__(self, ring: WeightedRing, order: MonomialOrder, shifts: Sequence[int] = ()):
        self.ring = ring
        self.order = order
        self.mkey = order.key_function(ring)
        self.shifts = tuple(shifts)
        self.weights = ring.weights

    def tkey(self, t):
        return (-t[0], self.mkey(t[1]))

    def lead(self, v: dict):
        return max(v, key=self.tkey)

    def tdeg(self, t) -> int:
        s = self.shifts[t[0]] if t[0] < len(self.shifts) else 0
        return sum(w * k for w, k in zip(self.weights, t[1])) + s

    @staticmethod
    def divides(a, b) -> bool:
        return a[0] == b[0] and all(x <= y for x, y in zip(a[1], b[1]))

    @staticmethod
    def quotient(b, a) -> tuple:
        return tuple(y - x for x, y in zip(a[1], b[1]))

    @staticmethod
    def lcm(a, b) -> tuple:
        return (a[0], tuple(max(x, y) for x, y in zip(a[1], b[1])))

    @staticmethod
    def mulmono(v: dict, m: tuple, c) -> dict:
        return {(i, tuple(x + y for x, y in zip(e, m))): val * c for (i, e), val in v.items()}

    @staticmethod
    def axpy(target: dict, v: dict, m: tuple, c):
        """target += c * m * v (in place)."""
        for (i, e), val in v.items():
            t = (i, tuple(x + y for x, y in zip(e, m)))
            s = target.get(t, 0) + val * c
            if s:
                target[t] = s
            else:
                del target[t]

    def reduce(self, f: dict, basis: list, leads: list, full: bool = True,
               track: list | None = None) -> dict:
        """Remainder of ``f`` by monic ``basis`` (with leading terms ``leads``).

        If ``track`` is a list of tag-dicts (one per basis element), the quotients
        are accumulated and returned as ``(remainder, quotient_tags)``.
        """
        f = dict(f)
        rem: dict = {}
        acc: dict | None = {} if track is not None else None
        tkey = self.tkey
        while f:
            t = max(f, key=tkey)
            c = f[t]
            for j, lt in enumerate(leads):
                if lt[0] == t[0] and all(x <= y for x, y in zip(lt[1], t[1])):
                    m = tuple(y - x for x, y in zip(lt[1], t[1]))
                    self.axpy(f, basis[j], m, -c)
                    if acc is not None:
                        self.axpy(acc, track[j], m, c)
                    break
            else:
                rem[t] = c
                del f[t]
                if not full:
                    rem.update(f)
                    break
        if track is not None:
            return rem, acc
        return rem

    def groebner(self, gens: list, max_pairs: int | None = None, tags: list | None = None):
        """Buchberger with Gebauer–Möller criteria and the sugar selection strategy.

        Returns a reduced, monic basis sorted by (degree, leading term).  With ``tags``,
        cofactor dicts are carried along (not interreduced) and returned as second value.
        """
        polys: list = []
        ptags: list = []
        leads: list = []
        sugar: list = []
        active: list = []        # indices into polys forming the current basis
        pairs: dict = {}         # (i, j) -> lcm term
        rank1 = all(t[0] == 0 for g in gens for t in g)
        processed = 0

        def add(h: dict, htag, hsugar):
            nonlocal active
            lt = self.lead(h)
            c = h[lt]
            if c != 1:
                inv = 1 / c
                h = {t: v * inv for t, v in h.items()}
                if htag is not None:
                    htag = {t: v * inv for t, v in htag.items()}
            k = len(polys)
            polys.append(h)
            ptags.append(htag)
            leads.append(lt)
            sugar.append(max(hsugar, max(self.tdeg(t) for t in h)))
            # Gebauer–Möller update
            cand = []
            for i in active:
                li = leads[i]
                if li[0] != lt[0]:
                    continue
                cand.append((i, self.lcm(li, lt)))
            keep = []
            for idx, (i, l) in enumerate(cand):
                coprime = rank1 and all(min(x, y) == 0 for x, y in zip(leads[i][1], lt[1]))
                if coprime:
                    keep.append((i, l, True))
                    continue
                dominated = False
                for jdx, (j, l2) in enumerate(cand):
                    if jdx == idx:
                        continue
                    if self.divides(l2, l) and (l2 != l or jdx < idx):
                        dominated = True
                        break
                if not dominated:
                    keep.append((i, l, False))
            # chain criterion on old pairs
            for (i, j), l in list(pairs.items()):
                if self.divides(lt, l) and self.lcm(leads[i], lt) != l and self.lcm(leads[j], lt) != l:
                    del pairs[(i, j)]
            for i, l, coprime in keep:
                if not coprime:
                    pairs[(i, k)] = l
            active = [i for i in active if not self.divides(lt, leads[i])] + [k]

        basis_polys = lambda: [polys[i] for i in active]

        def pair_sugar(ij, l):
            d = self.tdeg(l)
            return max(sugar[a] + d - self.tdeg(leads[a]) for a in ij)

        for g, tg in zip(gens, tags if tags is not None else [None] * len(gens)):
            if not g:
                continue
            if tags is None:
                r = self.reduce(g, basis_polys(), [leads[i] for i in active])
                rt = None
            else:
                r, q = self.reduce(g, basis_polys(), [leads[i] for i in active],
                                   track=[ptags[i] for i in active])
                rt = dict(tg)
                for t, v in q.items():
                    s = rt.get(t, 0) - v
                    if s:
                        rt[t] = s
                    else:
                        rt.pop(t, None)
            if r:
                add(r, rt, max(self.tdeg(t) for t in g))

        while pairs:
            # on homogeneous input the sugar is the lcm degree and this is normal selection
            (i, j), l = min(pairs.items(), key=lambda kv: (pair_sugar(*kv), self.tdeg(kv[1]),
                                                           self.tkey(kv[1]), kv[0]))
            del pairs[(i, j)]
            processed += 1
            if max_pairs is not None and processed > max_pairs:
                raise ResourceCapExceeded(f"Buchberger exceeded {max_pairs} S-pairs")
            mi = self.quotient(l, leads[i])
            mj = self.quotient(l, leads[j])
            s = self.mulmono(polys[i], mi, 1)
            self.axpy(s, polys[j], mj, -1)
            stag = None
            if tags is not None:
                stag = self.mulmono(ptags[i], mi, 1)
                self.axpy(stag, ptags[j], mj, -1)
            if not s:
                continue
            cur = basis_polys()
            curl = [leads[a] for a in active]
            if tags is None:
                r = self.reduce(s, cur, curl)
            else:
                r, q = self.reduce(s, cur, curl, track=[ptags[a] for a in active])
                for t, v in q.items():
                    x = stag.get(t, 0) - v
                    if x:
                        stag[t] = x
                    else:
                        stag.pop(t, None)
            if r:
                add(r, stag, pair_sugar((i, j), l))

        # minimal basis then interreduce
        basis = [polys[i] for i in active]
        btags = [ptags[i] for i in active]
        bl = [leads[i] for i in active]
        if tags is not None:
            return basis, bl, btags
        out = []
        for idx, b in enumerate(basis):
            others = [basis[j] for j in range(len(basis)) if j != idx]
            ol = [bl[j] for j in range(len(basis)) if j != idx]
            lt = bl[idx]
            tail = dict(b)
            del tail[lt]
            red = self.reduce(tail, others, ol)
            red[lt] = Fraction(1)
            out.append(red)
        out.sort(key=lambda v: (self.tdeg(self.lead(v)), self.tkey(self.lead(v))))
        return out


# ---------------------------------------------------------------------------
# public: ideals


@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    order: MonomialOrder = DEFAULT_ORDER
    reduced_flag: bool = True
    ring: WeightedRing | None = None

    def __post_init__(self):
        if self.ring is None and self.generators:
            object.__setattr__(self, "ring", self.generators[0].ring)

    @property
    def engine(self) -> _Engine:
        eng = self.__dict__.get("_engine")
        if eng is None:
            eng = _Engine(self.ring, self.order)
            object.__setattr__(self, "_engine", eng)
        return eng

    @property
    def _vecs(self):
        v = self.__dict__.get("_vec_cache")
        if v is None:
            v = [_vec_from_polys([g]) for g in self.generators]
            ls = [self.engine.lead(x) for x in v]
            v = (v, ls)
            object.__setattr__(self, "_vec_cache", v)
        return v

    def leading_exponents(self) -> list:
        return [t[1] for t in self._vecs[1]]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor() if self.ring else None,
            "order": self.order.to_json(),
            "reduced": self.reduced_flag,
            "generators": [str(g) for g in self.generators],
        }


def buchberger(generators: Sequence[Polynomial], order: MonomialOrder = DEFAULT_ORDER,
               ring: WeightedRing | None = None, max_pairs: int | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``generators``."""
    gens = [g for g in generators]
    if ring is None:
        if not gens:
            return GroebnerBasis((), order, True, None)
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise ValueError("generators live in different rings")
    eng = _Engine(ring, order)
    vecs = [_vec_from_polys([g]) for g in gens if g]
    out = eng.groebner(vecs, max_pairs=max_pairs)
    polys = tuple(_polys_from_vec(v, ring, 1)[0] for v in out)
    return GroebnerBasis(polys, order, True, ring)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    if not G.generators:
        return f
    if f.ring != G.ring:
        raise ValueError("ring mismatch")
    vecs, leads = G._vecs
    r = G.engine.reduce(_vec_from_polys([f]), vecs, leads)
    return _polys_from_vec(r, f.ring, 1)[0]


def ideal_membership(f: Polynomial, G: GroebnerBasis) -> bool:
    return normal_form(f, G).is_zero()


def radical_membership(f: Polynomial, G: GroebnerBasis, max_power: int = 8) -> int | None:
    """Smallest m <= max_power with f^m in the ideal, else None."""
    p = f.ring.one()
    for m in range(1, max_power + 1):
        p = normal_form(p * f, G)
        if p.is_zero():
            return m
    return None


def lift(h: Polynomial, generators: Sequence[Polynomial]) -> list | None:
    """Cofactors ``c`` with ``h == sum(c_i * generators_i)``, or None if h is not in the ideal."""
    ring = h.ring
    m = len(generators)
    eng = _Engine(ring, DEFAULT_ORDER)
    gens = [_vec_from_polys([g]) for g in generators]
    tags = [{(i, ring.one_exps): Fraction(1)} for i in range(m)]
    keep = [k for k in range(m) if gens[k]]
    basis, leads, btags = eng.groebner([gens[k] for k in keep], tags=[tags[k] for k in keep])
    r, q = eng.reduce(_vec_from_polys([h]), basis, leads, track=btags)
    if r:
        return None
    return _polys_from_vec(q, ring, m)


def elimination_ideal(generators: Sequence[Polynomial], drop: Iterable,
                      max_pairs: int | None = None) -> list:
    """Generators of I ∩ Q[remaining variables], returned in the smaller ring."""
    gens = list(generators)
    if not gens:
        return []
    ring = gens[0].ring
    drop = set(drop)
    for v in drop:
        ring.var_index(v)
    keep = [i for i, n in enumerate(ring.names) if n not in drop]
    small = WeightedRing(tuple(ring.names[i] for i in keep), tuple(ring.weights[i] for i in keep))
    G = buchberger(gens, MonomialOrder.elimination(drop), max_pairs=max_pairs)
    out = []
    for g in G.generators:
        if not (g.variables() & drop):
            out.append(g.change_ring(small))
    # reduced basis in the induced order on the small ring
    return list(buchberger(out, DEFAULT_ORDER, ring=small).generators) if out else []


def standard_monomials(G: GroebnerBasis, degree: int, ring: WeightedRing | None = None) -> list:
    """Monomials of weighted degree ``degree`` not divisible by any leading monomial of G."""
    ring = ring or G.ring
    lms = G.leading_exponents() if G.generators else []
    out = []
    for e in ring.monomials_of_degree(degree):
        if not any(all(a <= b for a, b in zip(lm, e)) for lm in lms):
            out.append(e)
    return out


# ---------------------------------------------------------------------------
# modules


@dataclass
class PresentedModule:
    """Module given as a quotient of a graded free module by ``relations``.

    ``base`` is the ambient ring when ``base_ideal`` is empty, otherwise the
    quotient by it.  When the module arose as a submodule of a free module,
    ``embedding`` lists the images of the generators.
    """

    ambient_rank: int
    relations: list
    generator_degrees: list
    ring: WeightedRing
    base_ideal: tuple = ()
    embedding: list | None = None

    def is_graded(self) -> bool:
        return all(r.degree(self.generator_degrees) is not INHOMOGENEOUS for r in self.relations)

    def ambient_relations(self) -> list:
        """Relations over the ambient ring, base ideal multiples included."""
        rels = list(self.relations)
        z = self.ring.zero()
        for i in range(self.ambient_rank):
            for f in self.base_ideal:
                comps = [z] * self.ambient_rank
                comps[i] = f
                rels.append(ModuleVector(comps, self.ring))
        return rels

    def to_json(self) -> dict:
        d = {
            "ring": self.ring.descriptor(),
            "ambient_rank": self.ambient_rank,
            "generator_degrees": list(self.generator_degrees),
            "base_ideal": [str(f) for f in self.base_ideal],
            "relations": [r.to_strings() for r in self.relations],
        }
        if self.embedding is not None:
            d["embedding"] = [v.to_strings() for v in self.embedding]
        return d


def _module_vecs(vectors: Sequence[ModuleVector], offset=0):
    return [_vec_from_polys(v.components, offset) for v in vectors]


def _infer_shifts(vectors: Sequence[ModuleVector], rank: int) -> list:
    """Component shifts making every vector homogeneous, when they exist (else zeros)."""
    shifts: list = [None] * rank
    vdeg: list = [None] * len(vectors)
    # propagate constraints deg(v) = deg(v_j) + shift_j
    changed = True
    if rank:
        shifts[0] = 0
    while changed:
        changed = False
        for k, v in enumerate(vectors):
            for j, c in enumerate(v.components):
                d = c.weighted_degree()
                if d is BOTTOM or d is INHOMOGENEOUS:
                    continue
                if vdeg[k] is None and shifts[j] is not None:
                    vdeg[k] = d + shifts[j]
                    changed = True
                elif vdeg[k] is not None and shifts[j] is None:
                    shifts[j] = vdeg[k] - d
                    changed = True
        if not changed:
            for j in range(rank):
                if shifts[j] is None:
                    shifts[j] = 0
                    changed = True
                    break
    return [s if s is not None else 0 for s in shifts]


def syzygies(vectors: Sequence[ModuleVector], shifts: Sequence[int] | None = None,
             max_pairs: int | None = None, ring: WeightedRing | None = None) -> list:
    """Generating set of the first syzygy module of ``vectors``."""
    vectors = list(vectors)
    if not vectors:
        return []
    ring = ring or vectors[0].ring
    r = len(vectors[0])
    m = len(vectors)
    if shifts is None:
        shifts = _infer_shifts(vectors, r)
    shifts = list(shifts)
    if any(v.degree(shifts) is INHOMOGENEOUS for v in vectors):
        return _homogenized_syzygies(vectors, shifts, ring, max_pairs)
    tag_shifts = []
    for v in vectors:
        d = v.degree(shifts)
        tag_shifts.append(d if isinstance(d, int) else 0)
    eng = _Engine(ring, DEFAULT_ORDER, shifts + tag_shifts)
    gens = []
    one = ring.one_exps
    for k, v in enumerate(vectors):
        g = _vec_from_polys(v.components)
        g[(r + k, one)] = Fraction(1)
        gens.append(g)
    gb = eng.groebner(gens, max_pairs=max_pairs)
    out = []
    for g in gb:
        if all(i >= r for (i, _) in g):
            out.append(ModuleVector(_polys_from_vec(g, ring, m, offset=r), ring))
    return out


def _homogenized_syzygies(vectors: list, shifts: list, ring: WeightedRing,
                          max_pairs: int | None) -> list:
    # Buchberger on inhomogeneous input suffers badly from coefficient swell.  Every
    # syzygy of the originals is the image of a homogeneous syzygy of the homogenized
    # vectors under h -> 1, so the graded computation gives a generating set.
    h = "h"
    while h in ring.names:
        h += "_"
    hring = WeightedRing(ring.names + (h,), ring.weights + (1,))
    hvecs = []
    for v in vectors:
        degs = [ring.mono_degree(e) + shifts[j] for j, c in enumerate(v.components) for e in c.terms]
        top = max(degs, default=0)
        comps = [Polynomial(hring, {e + (top - ring.mono_degree(e) - shifts[j],): x
                                    for e, x in c.terms.items()})
                 for j, c in enumerate(v.components)]
        hvecs.append(ModuleVector(comps, hring))
    out = []
    for syz in syzygies(hvecs, shifts=shifts, max_pairs=max_pairs, ring=hring):
        comps = []
        for c in syz.components:
            t: dict = {}
            for e, x in c.terms.items():
                t[e[:-1]] = t.get(e[:-1], 0) + x
            comps.append(Polynomial(ring, {e: x for e, x in t.items() if x}))
        if any(comps):
            out.append(ModuleVector(comps, ring))
    return out


def syzygies_of_polynomials(polys: Sequence[Polynomial], **kw) -> list:
    return syzygies([ModuleVector([p]) for p in polys], **kw)


def reduce_vector(v: ModuleVector, G: GroebnerBasis | None) -> ModuleVector:
    if G is None or not G.generators:
        return v
    return ModuleVector([normal_form(c, G) for c in v], v.ring)


def kernel_of_module_map(rows: Sequence[ModuleVector], base_ideal: Sequence[Polynomial] = (),
                         ring: WeightedRing | None = None, source_degrees: Sequence[int] | None = None,
                         target_degrees: Sequence[int] | None = None,
                         with_relations: bool = True, max_pairs: int | None = None) -> PresentedModule:
    """Kernel of the matrix with the given ``rows`` over ring/base_ideal.

    Returns generators of ``{v : rows·v ≡ 0 mod base_ideal}`` (as ``embedding``)
    together with their relations over the quotient.
    """
    rows = list(rows)
    ring = ring or rows[0].ring
    n = len(rows[0]) if rows else 0
    s = len(rows)
    base = [f for f in base_ideal if f]
    G = buchberger(base, ring=ring) if base else None
    zero = ring.zero()
    cols = [ModuleVector([rows[i][j] for i in range(s)], ring) for j in range(n)]
    for i in range(s):
        for f in base:
            comps = [zero] * s
            comps[i] = f
            cols.append(ModuleVector(comps, ring))
    if target_degrees is not None and source_degrees is not None:
        shifts = list(target_degrees)
    else:
        shifts = None
    syz = syzygies(cols, shifts=shifts, max_pairs=max_pairs, ring=ring) if cols else []
    gens = []
    seen = set()
    for z in syz:
        v = reduce_vector(ModuleVector(z.components[:n], ring), G)
        if v.is_zero() or v in seen:
            continue
        seen.add(v)
        gens.append(v)
    if s == 0:
        gens = [ModuleVector([ring.one() if k == j else zero for k in range(n)], ring) for j in range(n)]
    if source_degrees is None:
        source_degrees = _infer_shifts(gens, n) if gens else [0] * n
    degs = []
    for v in gens:
        d = v.degree(source_degrees)
        degs.append(d if isinstance(d, int) else 0)
    rels = []
    if with_relations and gens:
        rels = submodule_relations(gens, base, ring, degs, source_degrees, max_pairs=max_pairs)
    return PresentedModule(len(gens), rels, degs, ring, tuple(base), gens)


def submodule_relations(gens: Sequence[ModuleVector], base: Sequence[Polynomial], ring: WeightedRing,
                        gen_degrees: Sequence[int], ambient_shifts: Sequence[int],
                        max_pairs: int | None = None) -> list:
    """Relations among ``gens`` inside (ring/base)^n, reduced mod base, zero rows dropped."""
    n = len(gens[0])
    m = len(gens)
    zero = ring.zero()
    vecs = list(gens)
    for i in range(n):
        for f in base:
            comps = [zero] * n
            comps[i] = f
            vecs.append(ModuleVector(comps, ring))
    syz = syzygies(vecs, shifts=list(ambient_shifts), max_pairs=max_pairs, ring=ring)
    G = buchberger(base, ring=ring) if base else None
    out = []
    seen = set()
    for z in syz:
        v = reduce_vector(ModuleVector(z.components[:m], ring), G)
        if v.is_zero() or v in seen:
            continue
        seen.add(v)
        out.append(v)
    return out


def module_groebner(vectors: Sequence[ModuleVector], shifts: Sequence[int] | None = None,
                    ring: WeightedRing | None = None, max_pairs: int | None = None):
    """Reduced GB of a submodule; returns (engine, basis dicts, leads)."""
    vectors = list(vectors)
    ring = ring or vectors[0].ring
    r = len(vectors[0])
    if shifts is None:
        shifts = _infer_shifts(vectors, r)
    eng = _Engine(ring, DEFAULT_ORDER, shifts)
    gb = eng.groebner(_module_vecs(vectors), max_pairs=max_pairs)
    return eng, gb, [eng.lead(g) for g in gb]


def module_membership(v: ModuleVector, vectors: Sequence[ModuleVector], shifts=None) -> bool:
    if not vectors:
        return v.is_zero()
    eng, gb, leads = module_groebner(vectors, shifts)
    return not eng.reduce(_vec_from_polys(v.components), gb, leads)


def minimal_generators(vectors: Sequence[ModuleVector], shifts: Sequence[int],
                       max_pairs: int | None = None) -> list:
    """Minimal homogeneous generating set, chosen greedily in increasing degree."""
    items = []
    for k, v in enumerate(vectors):
        if v.is_zero():
            continue
        d = v.degree(shifts)
        if d is INHOMOGENEOUS:
            raise NotGraded(f"vector {v} is not homogeneous")
        items.append((d, k, v))
    items.sort(key=lambda t: (t[0], t[1]))
    kept: list = []
    eng = None
    gb: list = []
    leads: list = []
    for d, _, v in items:
        if kept:
            if eng is None:
                eng, gb, leads = module_groebner(kept, shifts, max_pairs=max_pairs)
            if not eng.reduce(_vec_from_polys(v.components), gb, leads):
                continue
        kept.append(v)
        eng = None
    return kept


@dataclass
class FreeResolution:
    """Minimal graded free resolution F_0 <- F_1 <- ... ; ``maps[i]`` lists the columns of d_{i+1}."""

    degrees: list                 # degrees[i] = generator degrees of F_i
    maps: list = field(default_factory=list)
    complete: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    @property
    def betti(self) -> list:
        return [len(d) for d in self.degrees]

    def graded_betti(self) -> list:
        out = []
        for d in self.degrees:
            tab: dict = {}
            for x in d:
                tab[x] = tab.get(x, 0) + 1
            out.append(dict(sorted(tab.items())))
        return out

    def is_minimal(self) -> bool:
        for cols in self.maps:
            for v in cols:
                for c in v:
                    if c and c.is_constant():
                        return False
        return True

    def composition_vanishes(self) -> bool:
        for i in range(1, len(self.maps)):
            prev = self.maps[i - 1]
            for col in self.maps[i]:
                rank = len(prev[0]) if prev else 0
                acc = [None] * rank
                for j, c in enumerate(col):
                    if not c:
                        continue
                    for t in range(rank):
                        term = prev[j][t] * c
                        acc[t] = term if acc[t] is None else acc[t] + term
                if any(a is not None and not a.is_zero() for a in acc):
                    return False
        return True

    def to_json(self) -> dict:
        return {
            "betti": self.betti,
            "degrees": self.degrees,
            "complete": self.complete,
            "maps": [[v.to_strings() for v in cols] for cols in self.maps],
        }


def _prune_units(relations: list, degrees: list, ring: WeightedRing):
    """Eliminate generators killed by relations with a unit entry."""
    rels = [list(r.components) for r in relations]
    degs = list(degrees)
    while True:
        hit = None
        for k, r in enumerate(rels):
            for i, c in enumerate(r):
                if c and c.is_constant():
                    hit = (k, i)
                    break
            if hit:
                break
        if hit is None:
            break
        k, i = hit
        piv = rels[k]
        inv = 1 / piv[i].constant_term()
        new = []
        for j, r in enumerate(rels):
            if j == k:
                continue
            if r[i]:
                fac = r[i] * inv
                r = [a - fac * b for a, b in zip(r, piv)]
            new.append(r[:i] + r[i + 1:])
        rels = new
        degs = degs[:i] + degs[i + 1:]
    return [ModuleVector(r, ring) for r in rels if any(c for c in r)], degs


def minimal_graded_free_resolution(M: PresentedModule, length_cap: int = 10,
                                   max_pairs: int | None = None) -> FreeResolution:
    """Minimal graded free resolution of ``M`` over its ambient polynomial ring."""
    ring = M.ring
    rels = M.ambient_relations()
    degs = list(M.generator_degrees)
    for r in rels:
        if r.degree(degs) is INHOMOGENEOUS:
            raise NotGraded(f"relation {r} is not homogeneous")
    rels, degs = _prune_units(rels, degs, ring)
    res = FreeResolution([degs])
    if not degs:
        return res
    current = minimal_generators(rels, degs, max_pairs=max_pairs)
    shifts = degs
    while current:
        if res.length >= length_cap:
            res.complete = False
            break
        cdegs = [v.degree(shifts) for v in current]
        res.maps.append(current)
        res.degrees.append(cdegs)
        syz = syzygies(current, shifts=shifts, max_pairs=max_pairs, ring=ring)
        current = minimal_generators(syz, cdegs, max_pairs=max_pairs)
        shifts = cdegs
    return res


def quotient_module(ideal: Sequence[Polynomial], ring: WeightedRing | None = None) -> PresentedModule:
    """R/I as a cyclic presented module."""
    ideal = [f for f in ideal if f]
    ring = ring or ideal[0].ring
    return PresentedModule(1, [ModuleVector([f], ring) for f in ideal], [0], ring)


def free_module(rank: int, ring: WeightedRing, degrees: Sequence[int] | None = None) -> PresentedModule:
    return PresentedModule(rank, [], list(degrees or [0] * rank), ring)
