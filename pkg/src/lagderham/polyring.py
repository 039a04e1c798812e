"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in a :class:`WeightedRing` (ordered variable names with
positive integer weights) and stores a dict ``{exponent tuple: Fraction}``
without zero coefficients.  Values are immutable after construction.
"""
from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping

Exponents = tuple  # tuple[int, ...]


class RingMismatch(ValueError):
    pass


class DegreeFlag(enum.Enum):
    BOTTOM = "bottom"            # degree of the zero polynomial
    INHOMOGENEOUS = "inhomogeneous"

    def __repr__(self):
        return f"DegreeFlag.{self.name}"


BOTTOM = DegreeFlag.BOTTOM
INHOMOGENEOUS = DegreeFlag.INHOMOGENEOUS


@dataclass(frozen=True)
class WeightedRing:
    """Polynomial ring Q[v_1..v_m] graded by positive integer weights."""

    names: tuple
    weights: tuple

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.names) != len(self.weights):
            raise ValueError("one weight per variable required")
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if any(w <= 0 for w in self.weights):
            raise ValueError("weights must be strictly positive")
        for n in self.names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @cached_property
    def index(self) -> dict:
        return {n: i for i, n in enumerate(self.names)}

    def var_index(self, v) -> int:
        if isinstance(v, int):
            if not 0 <= v < self.nvars:
                raise KeyError(f"variable index {v} out of range")
            return v
        try:
            return self.index[v]
        except KeyError:
            raise KeyError(f"unknown variable {v!r} in ring {self.names}") from None

    def weight_of(self, v) -> int:
        return self.weights[self.var_index(v)]

    def mono_degree(self, exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps))

    def gen(self, v) -> "Polynomial":
        i = self.var_index(v)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> tuple:
        return tuple(self.gen(i) for i in range(self.nvars))

    def const(self, c) -> "Polynomial":
        c = Fraction(c)
        return Polynomial(self, {self.one_exps: c} if c else {})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    @cached_property
    def one_exps(self) -> tuple:
        return (0,) * self.nvars

    def monomials_of_degree(self, d: int) -> tuple:
        """All exponent vectors of weighted degree ``d`` (empty for d < 0)."""
        return _monomials_of_degree(self.weights, d)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def descriptor(self) -> dict:
        return {"names": list(self.names), "weights": list(self.weights)}

    @classmethod
    def from_descriptor(cls, d: Mapping) -> "WeightedRing":
        return cls(tuple(d["names"]), tuple(d["weights"]))

    def __repr__(self):
        inner = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"WeightedRing({inner})"


_MONO_CACHE: dict = {}


def _monomials_of_degree(weights: tuple, d: int) -> tuple:
    key = (weights, d)
    hit = _MONO_CACHE.get(key)
    if hit is not None:
        return hit
    out = []
    if d >= 0:
        n = len(weights)

        def rec(i, rem, acc):
            if i == n - 1:
                if rem % weights[i] == 0:
                    out.append(tuple(acc) + (rem // weights[i],))
                return
            for e in range(rem // weights[i], -1, -1):
                acc.append(e)
                rec(i + 1, rem - e * weights[i], acc)
                acc.pop()

        if n == 0:
            if d == 0:
                out.append(())
        else:
            rec(0, d, [])
    res = tuple(out)
    _MONO_CACHE[key] = res
    return res


def degrevlex_key(weights: tuple, exps: tuple) -> tuple:
    """Sort key for weighted degree reverse lexicographic order (larger key = larger term)."""
    return (sum(w * e for w, e in zip(weights, exps)),) + tuple(-e for e in reversed(exps))


class Polynomial:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: WeightedRing, terms: Mapping | None = None, *, _trusted=False):
        self.ring = ring
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = ring.nvars
            for e, c in (terms or {}).items():
                e = tuple(int(x) for x in e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e} for {ring}")
                c = Fraction(c)
                if c:
                    clean[e] = clean.get(e, 0) + c
            self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- construction helpers
    @classmethod
    def _make(cls, ring, terms):
        return cls(ring, terms, _trusted=True)

    def _check(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"{self.ring} vs {other.ring}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic
    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        return Polynomial._make(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._check(other)
        if other is NotImplemented:
            return other
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                t[e] = t.get(e, 0) + c1 * c2
        return Polynomial._make(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._make(self.ring, {e: v * c for e, v in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(c))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("non-negative integer powers only")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exps, c=1) -> "Polynomial":
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._make(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()},
        )

    # -- comparison / hashing
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get(self.ring.one_exps, Fraction(0))

    # -- calculus
    def partial_derivative(self, v) -> "Polynomial":
        i = self.ring.var_index(v)
        t = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                t[ne] = c * k
        return Polynomial._make(self.ring, t)

    diff = partial_derivative

    def integrate_from_zero(self, v) -> "Polynomial":
        """Antiderivative in ``v`` with zero constant of integration."""
        i = self.ring.var_index(v)
        t = {}
        for e, c in self.terms.items():
            k = e[i] + 1
            t[e[:i] + (k,) + e[i + 1:]] = c / k
        return Polynomial._make(self.ring, t)

    def substitute(self, mapping: Mapping, target: WeightedRing | None = None) -> "Polynomial":
        """Replace variables by polynomials of ``target`` (defaults to own ring).

        Variables absent from ``mapping`` must exist in ``target`` under the same name.
        """
        target = target or self.ring
        used = set()
        for e in self.terms:
            used.update(i for i, k in enumerate(e) if k)
        images: dict = {}
        for i in used:
            n = self.ring.names[i]
            if n in mapping:
                img = mapping[n]
            elif i in mapping:
                img = mapping[i]
            else:
                img = target.gen(n)
            if not isinstance(img, Polynomial):
                img = target.const(img)
            if img.ring != target:
                raise RingMismatch("substitution image lives in another ring")
            images[i] = img
        powers: dict = {i: {} for i in images}

        def pw(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = images[i] ** k
            return cache[k]

        acc: dict = {}
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k:
                    term = term * pw(i, k)
            for te, tc in term.terms.items():
                acc[te] = acc.get(te, 0) + tc
        return Polynomial._make(target, {e: c for e, c in acc.items() if c})

    def change_ring(self, target: WeightedRing) -> "Polynomial":
        """Re-express in ``target`` by variable name; missing variables must not occur."""
        idx = [target.var_index(n) if n in target.index else None for n in self.ring.names]
        t = {}
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                if k:
                    if idx[i] is None:
                        raise RingMismatch(f"variable {self.ring.names[i]} not in {target}")
                    ne[idx[i]] += k
            t[tuple(ne)] = c
        return Polynomial._make(target, t)

    def evaluate(self, point: Mapping) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(point[n]) for n in self.ring.names]
        for e, c in self.terms.items():
            m = c
            for v, k in zip(vals, e):
                if k:
                    m *= v ** k
            total += m
        return total

    def variables(self) -> set:
        used = set()
        for e in self.terms:
            used.update(self.ring.names[i] for i, k in enumerate(e) if k)
        return used

    # -- grading
    def weighted_degree(self):
        """Common weighted degree, ``BOTTOM`` for 0, ``INHOMOGENEOUS`` otherwise."""
        if not self.terms:
            return BOTTOM
        degs = {self.ring.mono_degree(e) for e in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return INHOMOGENEOUS

    def is_quasihomogeneous(self) -> bool:
        return self.weighted_degree() is not INHOMOGENEOUS

    def max_degree(self) -> int:
        return max(self.ring.mono_degree(e) for e in self.terms)

    def homogeneous_part(self, d: int) -> "Polynomial":
        return Polynomial._make(
            self.ring, {e: c for e, c in self.terms.items() if self.ring.mono_degree(e) == d})

    # -- ordering / printing
    def sorted_terms(self) -> list:
        w = self.ring.weights
        return sorted(self.terms.items(), key=lambda t: degrevlex_key(w, t[0]), reverse=True)

    def __iter__(self) -> Iterator:
        return iter(self.sorted_terms())

    def __len__(self):
        return len(self.terms)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"

    def to_json(self) -> dict:
        return {
            "ring": self.ring.descriptor(),
            "terms": [[list(e), _frac_str(c)] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, d: Mapping) -> "Polynomial":
        ring = WeightedRing.from_descriptor(d["ring"])
        return cls(ring, {tuple(e): Fraction(c) for e, c in d["terms"]})


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(f: Polynomial) -> str:
    if not f.terms:
        return "0"
    names = f.ring.names
    parts = []
    for e, c in f.sorted_terms():
        mono = "*".join(
            n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if mono:
            body = mono if a == 1 else f"{_frac_str(a)}*{mono}"
        else:
            body = _frac_str(a)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


class PolynomialSyntaxError(ValueError):
    pass


def parse_polynomial(text: str, ring: WeightedRing) -> Polynomial:
    """Parse ASCII syntax such as ``3/7*x^2*q1 - p2``."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected input at {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    tokens.append(("end", None))
    i = 0

    def peek():
        return tokens[i]

    def take():
        nonlocal i
        t = tokens[i]
        i += 1
        return t

    def expr():
        acc = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term():
        acc = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            if op == "*":
                acc = acc * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolynomialSyntaxError("division only by nonzero constants")
                acc = acc / rhs.constant_term()
        return acc

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            kind, val = take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer")
            return base ** val
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return ring.const(val)
        if kind == "name":
            if val not in ring.index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}")
            return ring.gen(val)
        if (kind, val) == ("op", "("):
            inner = expr()
            if take() != ("op", ")"):
                raise PolynomialSyntaxError("missing ')'")
            return inner
        raise PolynomialSyntaxError(f"unexpected token {val!r}")

    if peek()[0] == "end":
        raise PolynomialSyntaxError("empty polynomial")
    result = expr()
    if peek()[0] != "end":
        raise PolynomialSyntaxError(f"trailing input {peek()[1]!r}")
    return result


def polynomial_ring(spec: str | Iterable) -> tuple:
    """Convenience: ``polynomial_ring("x:1 q1:2")`` returns ``(ring, gens...)``."""
    if isinstance(spec, str):
        items = [s.split(":") for s in spec.split()]
    else:
        items = list(spec)
    ring = WeightedRing(tuple(n for n, _ in items), tuple(int(w) for _, w in items))
    return (ring,) + ring.gens()

