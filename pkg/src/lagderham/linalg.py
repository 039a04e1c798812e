"""Exact sparse linear algebra over Q.

Vectors are dicts ``{index: Fraction}`` without zero entries.  A linear map
is stored as the list of images of the source basis vectors (its columns).

Ranks, the hot kernel of the cohomology computation, have two exact backends:
``flint`` (python-flint integer matrices) and ``python`` (fraction-free sparse
elimination on Python ints).  ``LAGDERHAM_LINALG=python|flint`` selects one;
the default is flint when it imports.
"""
from __future__ import annotations

import math
import os
from fractions import Fraction
from typing import Iterable, Sequence

try:  # optional accelerator
    import flint as _flint
except ImportError:  # pragma: no cover - depends on environment
    _flint = None


def available_backends() -> list:
    return ["python"] + (["flint"] if _flint is not None else [])


def default_backend() -> str:
    env = os.environ.get("LAGDERHAM_LINALG", "").strip().lower()
    if env:
        if env not in ("python", "flint"):
            raise ValueError(f"LAGDERHAM_LINALG must be 'python' or 'flint', not {env!r}")
        if env == "flint" and _flint is None:
            raise ImportError("LAGDERHAM_LINALG=flint but python-flint is not installed")
        return env
    return "flint" if _flint is not None else "python"


def axpy(target: dict, v: dict, c) -> None:
    """target += c * v, in place."""
    for k, x in v.items():
        s = target.get(k, 0) + c * x
        if s:
            target[k] = s
        else:
            del target[k]


def combine(vectors: Sequence[dict], coeffs: dict) -> dict:
    out: dict = {}
    for j, c in coeffs.items():
        axpy(out, vectors[j], c)
    return out


class Echelon:
    """Incrementally built echelon basis of a subspace.

    ``insert`` reduces a vector against the basis; with ``track=True`` every
    stored row also remembers which inserted vectors it is made of, so a
    dependent insertion yields the linear relation it satisfies.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}       # pivot -> row (pivot coefficient 1)
        self.combos: dict = {}     # pivot -> combination of inserted vectors
        self.track = track
        self.count = 0

    def __len__(self):
        return len(self.rows)

    def reduce(self, v: dict, combo: dict | None = None):
        v = dict(v)
        rows = self.rows
        # eliminate pivots present in v; new fill-in can only hit pivots of later rows
        while True:
            hits = [k for k in v if k in rows]
            if not hits:
                break
            for k in hits:
                c = v.get(k)
                if not c:
                    continue
                axpy(v, rows[k], -c)
                if combo is not None:
                    axpy(combo, self.combos[k], -c)
        return v, combo

    def insert(self, v: dict):
        """Add ``v``; return None if it was independent, else its relation dict.

        The relation maps insertion indices to coefficients with
        sum(coef * vector) == 0 (includes this vector with coefficient 1).
        """
        idx = self.count
        self.count += 1
        combo = {idx: Fraction(1)} if self.track else None
        r, combo = self.reduce(v, combo)
        if not r:
            return combo if self.track else {}
        piv = min(r)
        inv = 1 / r[piv]
        r = {k: x * inv for k, x in r.items()}
        if combo is not None:
            combo = {k: x * inv for k, x in combo.items()}
        # keep rows fully reduced w.r.t. the new pivot
        for p, row in self.rows.items():
            c = row.get(piv)
            if c:
                axpy(row, r, -c)
                if self.track:
                    axpy(self.combos[p], combo, -c)
        self.rows[piv] = r
        if self.track:
            self.combos[piv] = combo
        return None

    def contains(self, v: dict) -> bool:
        r, _ = self.reduce(v)
        return not r


def integer_vectors(vectors: Iterable[dict]) -> tuple:
    """Scale each vector to primitive integers and relabel keys as 0..m-1.

    Scaling vectors by nonzero rationals leaves the rank unchanged.
    """
    keymap: dict = {}
    out = []
    for v in vectors:
        if not v:
            continue
        den = 1
        for c in v.values():
            d = c.denominator if isinstance(c, Fraction) else 1
            den = den * d // math.gcd(den, d)
        iv = {}
        for k, c in v.items():
            j = keymap.get(k)
            if j is None:
                j = keymap[k] = len(keymap)
            iv[j] = int(c * den)
        g = 0
        for x in iv.values():
            g = math.gcd(g, x)
        if g > 1:
            iv = {k: x // g for k, x in iv.items()}
        out.append(iv)
    return out, len(keymap)


def _rank_python(ivecs: list) -> int:
    pivots: dict = {}
    for v in ivecs:
        v = dict(v)
        while v:
            c = min(v)
            row = pivots.get(c)
            if row is None:
                pivots[c] = v
                break
            a, b = row[c], v[c]
            g = math.gcd(a, b)
            a, b = a // g, b // g
            new = {}
            for k, x in v.items():
                new[k] = a * x
            for k, x in row.items():
                y = new.get(k, 0) - b * x
                if y:
                    new[k] = y
                else:
                    new.pop(k, None)
            cont = 0
            for x in new.values():
                cont = math.gcd(cont, x)
                if cont == 1:
                    break
            if cont > 1:
                new = {k: x // cont for k, x in new.items()}
            v = new
    return len(pivots)


def _rank_flint(ivecs: list, ncols: int) -> int:
    if not ivecs:
        return 0
    n = len(ivecs)
    # fflu on a tall matrix is much faster than on its wide transpose
    if ncols > n:
        rows = [[0] * n for _ in range(ncols)]
        for i, v in enumerate(ivecs):
            for j, x in v.items():
                rows[j][i] = x
    else:
        rows = [[v.get(j, 0) for j in range(ncols)] for v in ivecs]
    return _flint.fmpz_mat(rows).rank()


def rank(vectors: Iterable[dict], backend: str | None = None) -> int:
    """Exact rank of the span of ``vectors``."""
    ivecs, m = integer_vectors(vectors)
    backend = backend or default_backend()
    if backend == "flint":
        return _rank_flint(ivecs, m)
    return _rank_python(ivecs)


def rank_fractions(vectors: Iterable[dict]) -> int:
    """Reference rank via rational Gauss-Jordan elimination (slow, independent path)."""
    E = Echelon()
    for v in vectors:
        if v:
            E.insert(v)
    return len(E)


def kernel(columns: Sequence[dict]) -> list:
    """Basis of {c : sum_j c_j columns[j] = 0}, as dicts over column indices."""
    E = Echelon(track=True)
    out = []
    for col in columns:
        rel = E.insert(col)
        if rel is not None:
            out.append(rel)
    return out


def apply(columns: Sequence[dict], v: dict) -> dict:
    """Image of the source vector ``v`` under the map with the given columns."""
    return combine(columns, v)


def restrict(columns: Sequence[dict], basis: Sequence[dict]) -> list:
    """Columns of the map precomposed with the inclusion of ``basis``."""
    return [apply(columns, b) for b in basis]


def to_dense(vectors: Sequence[dict], n: int) -> list:
    return [[v.get(i, Fraction(0)) for i in range(n)] for v in vectors]
