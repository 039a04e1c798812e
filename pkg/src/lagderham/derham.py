"""The lagrangian de Rham complex C^p = Hom(wedge^p I/I^2, O_L) in graded slices.

Grading: phi in C^p has internal degree e when phi(f_{a_1} ^ ... ^ f_{a_p}) is
quasihomogeneous of degree d_{a_1} + ... + d_{a_p} + e - p*W.  The differential
preserves e, so every cohomology group splits into finite-dimensional slices
that are computed by exact rank computations.

Elements of O_L are written in the basis of standard monomials of the
lagrangian ideal's Gröbner basis.  Tuples in C^p are indexed by sorted index
blocks (a_1 < ... < a_p); coordinates are ``(block, std_index)`` pairs.
"""
from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .algebroid import BracketStructure, ConormalPresentation, bracket_structure, conormal_presentation
from .groebner import ResourceCapExceeded, standard_monomials
from .polyring import Polynomial
from .symplectic import poisson_bracket
from .varieties import LagrangianPresentation

log = logging.getLogger(__name__)

MAX_P = 3


def default_bound(L: LagrangianPresentation) -> int:
    return 2 * max(L.degrees) + L.W + 10


@dataclass
class CochainModel:
    """Slice-level description of C^p: free tuple blocks plus relation conditions."""

    p: int
    blocks: list               # sorted index tuples
    block_degrees: dict        # block -> degree offset: sum d_a - p*W
    conditions: list           # (relation row j, slot block) pairs

    def component_degree(self, block, e: int) -> int:
        return self.block_degrees[block] + e


@dataclass
class DeltaDescriptor:
    p: int
    anchor_terms: list = field(default_factory=list)    # (output block, sign, a_i, input block)
    bracket_terms: list = field(default_factory=list)   # (output block, sign, a_i, a_j, rest)

    def describe(self) -> list:
        out = []
        for A, s, a, B in self.anchor_terms:
            out.append(f"out{A}: {'+' if s > 0 else '-'}{{f{a}, phi{B}}}")
        for A, s, ai, aj, rest in self.bracket_terms:
            out.append(f"out{A}: {'+' if s > 0 else '-'}sum_e c[{ai},{aj}]^e phi(e,{rest})")
        return out


@dataclass
class SliceData:
    p: int
    e: int
    free_dim: int
    basis: list                # basis of the constrained slice (dicts over free coords)
    coords: list               # free coordinates in a fixed order


@dataclass
class DegreeResult:
    e: int
    dim_ker: int
    dim_im: int
    dim_h: int
    elapsed_ms: float
    dim_cochains: int = 0
    error: str | None = None

    def to_json(self) -> dict:
        d = {"e": self.e, "dim_ker": self.dim_ker, "dim_im": self.dim_im, "dim_h": self.dim_h}
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class CohomologyReport:
    family: str
    p: int
    W: int
    bound: int
    degrees: list
    certification: str = ""

    @property
    def total(self) -> int:
        return sum(r.dim_h for r in self.degrees if r.error is None)

    def dims(self) -> dict:
        return {r.e: r.dim_h for r in self.degrees}

    def nonzero(self) -> dict:
        return {r.e: r.dim_h for r in self.degrees if r.dim_h}

    @property
    def elapsed_ms(self) -> float:
        return sum(r.elapsed_ms for r in self.degrees)

    def to_json(self, timings: bool = False) -> dict:
        d = {
            "family": self.family,
            "p": self.p,
            "W": self.W,
            "bound": self.bound,
            "degrees": [r.to_json() for r in self.degrees],
            "total": self.total,
            "certification": self.certification,
        }
        if timings:
            d["elapsed_ms"] = round(self.elapsed_ms, 1)
        return d


class GradedQuotient:
    """Homogeneous slices (R/I)_t of a graded quotient in the standard-monomial basis."""

    def __init__(self, G, max_slice_dim: int | None = None):
        self.G = G
        self.ring = G.ring
        self.max_slice_dim = max_slice_dim
        self._std: dict = {}
        self._nf: dict = {}
        self._mono_key = G.engine.mkey
        self._glead = []
        for g in G.generators:
            lt = max(g.terms, key=self._mono_key)
            c = g.terms[lt]
            tail = [(e, -v / c) for e, v in g.terms.items() if e != lt]
            self._glead.append((lt, tail))

    def std(self, t: int) -> tuple:
        """(standard monomials of degree t, index map)."""
        hit = self._std.get(t)
        if hit is None:
            mons = standard_monomials(self.G, t, self.ring) if t >= 0 else []
            if self.max_slice_dim is not None and len(mons) > self.max_slice_dim:
                raise ResourceCapExceeded(f"slice of degree {t} has dimension {len(mons)}")
            hit = (mons, {m: i for i, m in enumerate(mons)})
            self._std[t] = hit
        return hit

    def dim(self, t: int) -> int:
        return len(self.std(t)[0])

    def _nf_table(self, t: int) -> dict:
        table = self._nf.get(t)
        if table is not None:
            return table
        _, index = self.std(t)
        table = {}
        for m in sorted(self.ring.monomials_of_degree(t), key=self._mono_key):
            if m in index:
                table[m] = {index[m]: Fraction(1)}
                continue
            for lt, tail in self._glead:
                if all(a <= b for a, b in zip(lt, m)):
                    q = tuple(b - a for a, b in zip(lt, m))
                    acc: dict = {}
                    for e, c in tail:
                        linalg.axpy(acc, table[tuple(x + y for x, y in zip(e, q))], c)
                    table[m] = acc
                    break
            else:  # pragma: no cover - standard monomials are caught above
                raise AssertionError("monomial neither standard nor reducible")
        self._nf[t] = table
        return table

    def coords(self, f: Polynomial, t: int | None = None) -> dict:
        """Coordinates of the class of a homogeneous f in the standard basis of (R/I)_t."""
        if f.is_zero():
            return {}
        if t is None:
            t = f.weighted_degree()
        table = self._nf_table(t)
        out: dict = {}
        for m, c in f.terms.items():
            linalg.axpy(out, table[m], c)
        return out

    def element(self, coords: dict, t: int) -> Polynomial:
        mons, _ = self.std(t)
        return Polynomial(self.ring, {mons[i]: c for i, c in coords.items()})


class DeRhamComplex:
    """Graded slices of the lagrangian de Rham complex of ``L``."""

    def __init__(self, L: LagrangianPresentation, max_slice_dim: int | None = None):
        self.L = L
        self.ring = L.ring
        self.S = L.ambient
        self.W = L.W
        self.gens = L.ideal_generators
        self.r = len(self.gens)
        self.d = list(L.degrees)
        self.G = L.gb
        self.max_slice_dim = max_slice_dim
        self.conormal: ConormalPresentation = conormal_presentation(L)
        self.brackets: BracketStructure = bracket_structure(L)
        self.quotient = GradedQuotient(self.G, max_slice_dim)
        self._anchor: dict = {}

    # -- O_L slices
    def std(self, t: int) -> tuple:
        return self.quotient.std(t)

    def coords(self, f: Polynomial, t: int | None = None) -> dict:
        return self.quotient.coords(f, t)

    def element(self, coords: dict, t: int) -> Polynomial:
        return self.quotient.element(coords, t)

    def anchor_coords(self, a: int, m: tuple) -> dict:
        """Coordinates of {f_a, m} for a monomial m."""
        key = (a, m)
        hit = self._anchor.get(key)
        if hit is None:
            mono = Polynomial(self.ring, {m: Fraction(1)}, _trusted=True)
            b = poisson_bracket(self.S, self.gens[a], mono)
            hit = self.coords(b, self.d[a] + self.ring.mono_degree(m) - self.W)
            self._anchor[key] = hit
        return hit

    def times_coords(self, c: Polynomial, m: tuple) -> dict:
        if c.is_zero():
            return {}
        prod = c.mul_monomial(m)
        return self.coords(prod)

    # -- cochain models
    def cochain(self, p: int) -> CochainModel:
        if p < 0 or p > MAX_P:
            raise ValueError(f"C^{p} is not supported (0 <= p <= {MAX_P})")
        blocks = list(combinations(range(self.r), p))
        bdeg = {B: sum(self.d[a] for a in B) - p * self.W for B in blocks}
        conds = []
        if p >= 1:
            for j in range(len(self.conormal.relations)):
                for rest in combinations(range(self.r), p - 1):
                    conds.append((j, rest))
        return CochainModel(p, blocks, bdeg, conds)

    def delta(self, p: int) -> DeltaDescriptor:
        if p < 0 or p > MAX_P - 1:
            raise ValueError("delta defined for 0 <= p <= 2")
        D = DeltaDescriptor(p)
        for A in combinations(range(self.r), p + 1):
            for i, a in enumerate(A, start=1):
                B = A[:i - 1] + A[i:]
                D.anchor_terms.append((A, (-1) ** i, a, B))
            for (i, ai), (j, aj) in combinations(list(enumerate(A, start=1)), 2):
                rest = tuple(x for x in A if x not in (ai, aj))
                D.bracket_terms.append((A, (-1) ** (i + j - 1), ai, aj, rest))
        return D

    def free_coords(self, p: int, e: int) -> list:
        model = self.cochain(p)
        out = []
        for B in model.blocks:
            mons, _ = self.std(model.component_degree(B, e))
            out.extend((B, k) for k in range(len(mons)))
        return out

    def _block_monomial(self, p: int, B, k: int, e: int):
        t = sum(self.d[a] for a in B) - p * self.W + e
        return self.std(t)[0][k]

    def condition_columns(self, p: int, e: int) -> list:
        """Images of the free coordinates under the relation-condition map."""
        rels = self.conormal.relations
        cols = []
        for B, k in self.free_coords(p, e):
            m = self._block_monomial(p, B, k, e)
            col: dict = {}
            # value phi(B) = m; B = {a} u rest with sign -> condition (j, rest)
            for pos, a in enumerate(B):
                rest = B[:pos] + B[pos + 1:]
                sign = (-1) ** pos
                for j, row in enumerate(rels):
                    s = row[a]
                    if s.is_zero():
                        continue
                    for key, c in self.times_coords(s, m).items():
                        kk = (j, rest, key)
                        v = col.get(kk, 0) + sign * c
                        if v:
                            col[kk] = v
                        else:
                            col.pop(kk, None)
            cols.append(col)
        return cols

    def slice(self, p: int, e: int) -> SliceData:
        coords = self.free_coords(p, e)
        n = len(coords)
        if p == 0 or not self.conormal.relations:
            basis = [{i: Fraction(1)} for i in range(n)]
        else:
            basis = linalg.kernel(self.condition_columns(p, e))
        return SliceData(p, e, n, basis, coords)

    def delta_columns(self, p: int, e: int) -> list:
        """Images of the free coordinates of C^p_e in the free coordinates of C^{p+1}_e."""
        br = self.brackets
        cols = []
        for B, k in self.free_coords(p, e):
            m = self._block_monomial(p, B, k, e)
            col: dict = {}

            def add(A, vec, sign):
                for key, c in vec.items():
                    kk = (A, key)
                    v = col.get(kk, 0) + sign * c
                    if v:
                        col[kk] = v
                    else:
                        col.pop(kk, None)

            # anchor terms: A = B u {a}, a at 1-based position i in A
            for a in range(self.r):
                if a in B:
                    continue
                A = tuple(sorted(B + (a,)))
                i = A.index(a) + 1
                add(A, self.anchor_coords(a, m), (-1) ** i)
            # bracket terms: phi(e, rest) with phi(B) = m
            for pos, ee in enumerate(B):
                rest = B[:pos] + B[pos + 1:]
                alt_sign = (-1) ** pos   # phi(ee, rest...) = alt_sign * phi(B)
                for ai, aj in combinations(range(self.r), 2):
                    if ai in rest or aj in rest:
                        continue
                    c = br.coefficient(ai, aj, ee)
                    if c.is_zero():
                        continue
                    A = tuple(sorted(rest + (ai, aj)))
                    i = A.index(ai) + 1
                    j = A.index(aj) + 1
                    sign = (-1) ** (i + j - 1) * alt_sign
                    add(A, self.times_coords(c, m), sign)
            cols.append(col)
        # translate output keys to (block, std index) -- already in that form
        return cols

    # -- cohomology
    def min_degree(self, p: int) -> int:
        return self.min_degree_for(self.L, p)

    @staticmethod
    def min_degree_for(L: LagrangianPresentation, p: int) -> int:
        """Smallest internal degree with a nonzero free slice of C^p."""
        d = L.degrees
        if p == 0 or len(d) < p:
            return 0
        return min(p * L.W - sum(d[a] for a in B) for B in combinations(range(len(d)), p))

    def _stacked(self, p: int, e: int, with_delta: bool = True) -> tuple:
        """(free dim, rank of conditions, rank of [conditions; delta^p]) for C^p_e."""
        n = len(self.free_coords(p, e))
        if n == 0:
            return 0, 0, 0
        conds = self.condition_columns(p, e) if p >= 1 and self.conormal.relations else [{}] * n
        rc = linalg.rank(conds) if p >= 1 else 0
        if not with_delta:
            return n, rc, rc
        deltas = self.delta_columns(p, e)
        stacked = []
        for c, d in zip(conds, deltas):
            v = {("c",) + k: x for k, x in c.items()}
            v.update({("d",) + k: x for k, x in d.items()})
            stacked.append(v)
        return n, rc, linalg.rank(stacked)

    def cohomology_degree(self, p: int, e: int) -> DegreeResult:
        """dim H^p at internal degree e via ranks of stacked condition/differential matrices.

        ker(delta^p on C^p_e) = {v : cond v = 0, delta v = 0} has dimension
        n - rank[cond; delta]; the image of the constrained C^{p-1}_e has
        dimension rank[cond'; delta'] - rank[cond'].
        """
        t0 = time.perf_counter()
        if p < 0 or p > 2:
            raise ValueError("cohomology supported for p in {0, 1, 2}")
        n, rc, rcd = self._stacked(p, e)
        dim_cochains = n - rc
        dim_ker = n - rcd
        if p == 0:
            dim_im = 0
        else:
            _, rc0, rcd0 = self._stacked(p - 1, e)
            dim_im = rcd0 - rc0
        ms = (time.perf_counter() - t0) * 1000
        return DegreeResult(e, dim_ker, dim_im, dim_ker - dim_im, ms, dim_cochains)

    def _composed_with(self, p: int, e: int, second: list) -> bool:
        """True iff ``second`` o delta^p vanishes on the constrained slice C^p_e."""
        n = len(self.free_coords(p, e))
        if n == 0:
            return True
        conds = self.condition_columns(p, e) if p >= 1 and self.conormal.relations else [{}] * n
        nxt = {c: i for i, c in enumerate(self.free_coords(p + 1, e))}
        stacked = []
        for c, d in zip(conds, self.delta_columns(p, e)):
            w = {nxt[k]: x for k, x in d.items()}
            v = {("c",) + k: x for k, x in c.items()}
            v.update({("x", k): x for k, x in linalg.apply(second, w).items()})
            stacked.append(v)
        return linalg.rank(stacked) == linalg.rank(conds)

    def composition_vanishes(self, p: int, e: int) -> bool:
        """delta^{p+1} o delta^p = 0 on the constrained slice of C^p_e."""
        return self._composed_with(p, e, self.delta_columns(p + 1, e))

    def image_satisfies_conditions(self, p: int, e: int) -> bool:
        """delta^p maps the C^p slice into the C^{p+1} slice (relation conditions hold)."""
        if not self.conormal.relations:
            return True
        return self._composed_with(p, e, self.condition_columns(p + 1, e))


def build_cochain(L: LagrangianPresentation, p: int) -> CochainModel:
    return DeRhamComplex(L).cochain(p)


def delta(L: LagrangianPresentation, p: int) -> DeltaDescriptor:
    return DeRhamComplex(L).delta(p)


def graded_slice(L_or_complex, p: int, e: int):
    """(slice basis data, matrix of delta^{p-1} into it, matrix of delta^p out of it)."""
    C = L_or_complex if isinstance(L_or_complex, DeRhamComplex) else DeRhamComplex(L_or_complex)
    sl = C.slice(p, e)
    into = C.delta_columns(p - 1, e) if p >= 1 else []
    out = C.delta_columns(p, e) if p <= 2 else []
    return sl, into, out


def cohomology_table(L_or_complex, p: int, degree_range=None, bound: int | None = None,
                     timeout_per_degree: float | None = None) -> CohomologyReport:
    C = L_or_complex if isinstance(L_or_complex, DeRhamComplex) else DeRhamComplex(L_or_complex)
    L = C.L
    if bound is None:
        bound = default_bound(L)
    if degree_range is None:
        degree_range = range(C.min_degree(p), bound + 1)
    rows = []
    for e in degree_range:
        try:
            res = C.cohomology_degree(p, e)
        except ResourceCapExceeded as exc:
            res = DegreeResult(e, 0, 0, 0, 0.0, error=str(exc))
        if timeout_per_degree is not None and res.elapsed_ms > timeout_per_degree * 1000:
            res.error = f"exceeded {timeout_per_degree}s"
        log.debug("H^%d(e=%d) = %d", p, e, res.dim_h)
        rows.append(res)
    note = (f"bounded verification: internal degrees {degree_range.start}..{degree_range.stop - 1} "
            f"of the graded model; not a vanishing certificate beyond the bound")
    return CohomologyReport(L.tag, p, L.W, bound, rows, note)


@dataclass
class RigidityVerdict:
    family: str
    bound: int
    vanishes: bool
    nonzero: dict
    report: CohomologyReport

    @property
    def label(self) -> str:
        if self.vanishes:
            return f"H^1 vanishes for all internal degrees <= {self.bound} (bounded verification)"
        return f"nonzero H^1 found: {self.nonzero}"

    def to_json(self) -> dict:
        return {"family": self.family, "bound": self.bound, "vanishes": self.vanishes,
                "nonzero": {str(k): v for k, v in self.nonzero.items()}, "label": self.label}


def rigidity_verdict(L_or_complex, bound: int | None = None) -> RigidityVerdict:
    rep = cohomology_table(L_or_complex, 1, bound=bound)
    errors = [r for r in rep.degrees if r.error]
    nz = rep.nonzero()
    return RigidityVerdict(rep.family, rep.bound, not nz and not errors, nz, rep)
