"""Homological side checks: depth certificates, the tangent module, the alpha map
from I/I^2 to derivations, and torsion of Kähler 1-forms on plane curves.

Gradings.  A vector field sum theta_i d/dx_i has degree s when every theta_i
has degree s + w(x_i); the Hamiltonian field of f then has degree d - W.  A
1-form a dq + b dp has degree t when deg a = t - w(q) and deg b = t - w(p).
Contraction with the symplectic form dp ^ dq sends degree s fields to degree
s + W forms, which is the shift used to compare the two sides.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .algebroid import conormal_presentation
from .derham import GradedQuotient
from .groebner import (ModuleVector, PresentedModule, ResourceCapExceeded, kernel_of_module_map,
                       minimal_graded_free_resolution, quotient_module)
from .polyring import Polynomial
from .symplectic import hamiltonian_vector, poisson_bracket
from .varieties import LagrangianPresentation


class NotCompleteIntersection(ValueError):
    pass


class NotPlaneCurve(ValueError):
    pass


@dataclass
class DepthCertificate:
    tag: str
    projective_dimension: int
    ambient_dimension: int
    betti: list
    graded_betti: list = field(default_factory=list)

    @property
    def depth(self) -> int:
        return self.ambient_dimension - self.projective_dimension

    def is_cohen_macaulay(self, dimension: int) -> bool:
        return self.depth == dimension

    def to_json(self) -> dict:
        return {
            "module": self.tag,
            "pd": self.projective_dimension,
            "ambient_dim": self.ambient_dimension,
            "depth": self.depth,
            "betti": list(self.betti),
            "graded_betti": [{str(k): v for k, v in g.items()} for g in self.graded_betti],
        }


def depth_via_resolution(M: PresentedModule, tag: str = "module", length_cap: int | None = None,
                         max_pairs: int | None = None) -> DepthCertificate:
    """Depth of a graded module over its ambient polynomial ring (Auslander-Buchsbaum)."""
    n = len(M.ring.names)
    cap = n + 1 if length_cap is None else length_cap
    res = minimal_graded_free_resolution(M, length_cap=cap, max_pairs=max_pairs)
    if not res.complete:
        raise ResourceCapExceeded(f"resolution of {tag} did not terminate within length {cap}")
    if res.length > n:  # Hilbert syzygy theorem; only a bug gets here
        raise AssertionError(f"projective dimension {res.length} exceeds {n}")
    return DepthCertificate(tag, res.length, n, res.betti, res.graded_betti())


def coordinate_ring(L: LagrangianPresentation) -> PresentedModule:
    return quotient_module(L.ideal_generators, L.ring)


def depth_of_coordinate_ring(L: LagrangianPresentation, **kw) -> DepthCertificate:
    return depth_via_resolution(coordinate_ring(L), tag=f"O[{L.tag}]", **kw)


def conormal_dual(L: LagrangianPresentation, max_pairs: int | None = None) -> PresentedModule:
    """N = Hom(I/I^2, O_L) as a module over the ambient ring.

    A homomorphism is a tuple (phi_a) over O_L killing every relation of I/I^2;
    phi_a has degree d_a + s for a homomorphism of degree s.
    """
    C = conormal_presentation(L)
    rows = list(C.relations)
    degs = [-d for d in C.degrees]
    if not rows:
        z = L.ring.zero()
        rows = [ModuleVector([z] * C.rank, L.ring)]
        tdeg = [0]
    else:
        tdeg = [-D for D in C.relation_degrees]
    N = kernel_of_module_map(rows, L.ideal_generators, L.ring, source_degrees=degs,
                             target_degrees=tdeg, max_pairs=max_pairs)
    return N


def depth_of_conormal_dual(L: LagrangianPresentation, length_cap: int | None = None,
                           max_pairs: int | None = None) -> DepthCertificate:
    N = conormal_dual(L, max_pairs=max_pairs)
    return depth_via_resolution(N, tag=f"N[{L.tag}]", length_cap=length_cap, max_pairs=max_pairs)


# ---------------------------------------------------------------------------
# tangent module and the alpha map


def _jacobian_rows(L: LagrangianPresentation) -> list:
    ring = L.ring
    return [ModuleVector([f.diff(v) for v in ring.names], ring) for f in L.ideal_generators]


def tangent_module(L: LagrangianPresentation, max_pairs: int | None = None) -> PresentedModule:
    """Derivations preserving the ideal, modulo those with values in it."""
    ring = L.ring
    src = [-w for w in ring.weights]
    tgt = [-d for d in L.degrees]
    return kernel_of_module_map(_jacobian_rows(L), L.ideal_generators, ring,
                                source_degrees=src, target_degrees=tgt, max_pairs=max_pairs)


def preserves_ideal(L: LagrangianPresentation, theta: ModuleVector) -> bool:
    ring = L.ring
    for f in L.ideal_generators:
        h = ring.zero()
        for c, v in zip(theta, ring.names):
            h = h + c * f.diff(v)
        if not L.gb.contains(h):
            return False
    return True


def field_degree_range(L: LagrangianPresentation, bound: int | None = None) -> range:
    lo = -max(L.ring.weights)
    hi = bound if bound is not None else 2 * max(L.degrees) + L.W
    return range(lo, hi + 1)


def _tangent_slice_dim(Q: GradedQuotient, L: LagrangianPresentation, s: int) -> int:
    ring = L.ring
    cols = []
    for i, (v, w) in enumerate(zip(ring.names, ring.weights)):
        mons, _ = Q.std(s + w)
        partials = [f.diff(v) for f in L.ideal_generators]
        for m in mons:
            mono = Polynomial(ring, {m: 1})
            col = {}
            for a, (df, d) in enumerate(zip(partials, L.degrees)):
                for k, c in Q.coords(mono * df, s + d).items():
                    col[(a, k)] = c
            cols.append(col)
    return len(cols) - linalg.rank(cols)


def alpha_map_cokernel(L: LagrangianPresentation, bound: int | None = None) -> dict:
    """Per-degree dims of Coker(I/I^2 -> Theta_L, f_a -> H_{f_a}), keyed by field degree."""
    if not conormal_presentation(L).is_free():
        raise NotCompleteIntersection(f"{L.tag}: I/I^2 is not free")
    ring = L.ring
    Q = GradedQuotient(L.gb)
    fields = [hamiltonian_vector(L.ambient, f) for f in L.ideal_generators]
    out = {}
    for s in field_degree_range(L, bound):
        dim_theta = _tangent_slice_dim(Q, L, s)
        if not dim_theta:
            continue
        img = []
        for H, d in zip(fields, L.degrees):
            mons, _ = Q.std(s - d + L.W)
            for m in mons:
                mono = Polynomial(ring, {m: 1})
                vec = {}
                for v, w in zip(ring.names, ring.weights):
                    for k, c in Q.coords(mono * H[v], s + w).items():
                        vec[(v, k)] = c
                img.append(vec)
        dim = dim_theta - linalg.rank(img)
        if dim:
            out[s] = dim
    return out


# ---------------------------------------------------------------------------
# torsion of 1-forms on a plane curve


def _require_curve(L: LagrangianPresentation) -> None:
    if len(L.ring.names) != 2 or len(L.ideal_generators) != 1:
        raise NotPlaneCurve(f"{L.tag} is not a plane curve")


def form_degree_range(L: LagrangianPresentation, bound: int | None = None) -> range:
    lo = min(L.ring.weights)
    hi = bound if bound is not None else 2 * max(L.degrees) + 2 * L.W
    return range(lo, hi + 1)


def omega1_torsion(L: LagrangianPresentation, bound: int | None = None,
                   theta: PresentedModule | None = None) -> dict:
    """Per-degree dims of the kernel of Omega^1_L -> (Omega^1_L)**, keyed by form degree.

    The dual of Omega^1_L is Theta_L, so the double-dual map pairs a form with
    the generators of Theta_L; the forms pairing to zero modulo multiples of df
    make up the torsion on a reduced curve.
    """
    _require_curve(L)
    ring = L.ring
    f = L.ideal_generators[0]
    d = L.degrees[0]
    theta = theta or tangent_module(L)
    wq, wp = ring.weights
    Q = GradedQuotient(L.gb)
    gens = [(v, v.degree([-w for w in ring.weights])) for v in theta.embedding]
    df = [f.diff(v) for v in ring.names]
    out = {}
    for t in form_degree_range(L, bound):
        basis = []
        for comp, w in enumerate((wq, wp)):
            mons, _ = Q.std(t - w)
            basis.extend((comp, m) for m in mons)
        if not basis:
            continue
        cols = []
        for comp, m in basis:
            mono = Polynomial(ring, {m: 1})
            col = {}
            for j, (th, s) in enumerate(gens):
                for k, c in Q.coords(mono * th[comp], t + s).items():
                    col[(j, k)] = c
            cols.append(col)
        dim_ker = len(cols) - linalg.rank(cols)
        exact = []
        mons, _ = Q.std(t - d)
        for m in mons:
            mono = Polynomial(ring, {m: 1})
            vec = {}
            for comp, w in enumerate((wq, wp)):
                for k, c in Q.coords(mono * df[comp], t - w).items():
                    vec[(comp, k)] = c
            exact.append(vec)
        dim = dim_ker - linalg.rank(exact)
        if dim:
            out[t] = dim
    return out


@dataclass
class SnakeComparison:
    coker_alpha: dict          # keyed by form degree s + W
    torsion: dict

    @property
    def matches(self) -> bool:
        return self.coker_alpha == self.torsion

    def to_json(self) -> dict:
        return {
            "coker_alpha": {str(k): v for k, v in sorted(self.coker_alpha.items())},
            "torsion": {str(k): v for k, v in sorted(self.torsion.items())},
            "matches": self.matches,
        }


def snake_comparison(L: LagrangianPresentation, bound: int | None = None) -> SnakeComparison:
    """Coker(alpha) and Tors(Omega^1) side by side in the form grading."""
    _require_curve(L)
    fb = None if bound is None else bound - L.W
    coker = {s + L.W: v for s, v in alpha_map_cokernel(L, fb).items()}
    return SnakeComparison(coker, omega1_torsion(L, bound))


# ---------------------------------------------------------------------------
# direct H^1 of a plane curve


def plane_curve_h1(L: LagrangianPresentation, degrees) -> dict:
    """dim of O_L / {f, O_L} in each internal degree, computed in the ambient ring.

    For a curve the conormal module is free of rank one, so H^1 in internal
    degree e is (O_L)_t / {f, (O_L)_e} with t = d + e - W.  Here both spaces are
    written as ambient slices modulo f, with no Gröbner basis involved.
    """
    _require_curve(L)
    ring = L.ring
    S = L.ambient
    f = L.ideal_generators[0]
    d = L.degrees[0]
    out = {}
    for e in degrees:
        t = d + e - L.W
        if t < 0:
            continue
        total = len(ring.monomials_of_degree(t))
        vecs = []
        for m in ring.monomials_of_degree(t - d) if t >= d else ():
            vecs.append(dict((Polynomial(ring, {m: 1}) * f).terms))
        for m in ring.monomials_of_degree(e) if e >= 0 else ():
            vecs.append(dict(poisson_bracket(S, f, Polynomial(ring, {m: 1})).terms))
        dim = total - linalg.rank(vecs)
        if dim:
            out[e] = dim
    return out
