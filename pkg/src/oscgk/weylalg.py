"""Polynomial-coefficient differential operators in normal order.

A :class:`DiffOp` is a finite sum of terms ``c * x^mu * D^gamma`` with every
multiplication to the left of every derivative.  Composition expands
``D^gamma o x^mu`` by the Leibniz rule, so equality of operators is just
equality of term dictionaries.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping

from .exactpoly import (Coeff, Monomial, Polynomial, Ring, RingMismatch, _norm,
                        eval_expr, join_terms, mono_str, order_key)

Term = tuple  # (mult exponents, deriv exponents)


def _falling(e: int, k: int) -> int:
    return math.perm(e, k)


class DiffOp:
    """A normal-ordered element of the Weyl algebra over a :class:`Ring`."""

    __slots__ = ("ring", "_terms", "_shift")

    def __init__(self, ring: Ring, terms: Mapping[Term, Coeff] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for (mu, ga), c in terms.items():
                if len(mu) != ring.nvars or len(ga) != ring.nvars:
                    raise ValueError("term arity does not match ring")
                if c:
                    clean[(tuple(mu), tuple(ga))] = _norm(c)
        self._terms = clean
        self._shift = None

    @classmethod
    def _wrap(cls, ring: Ring, terms: dict) -> "DiffOp":
        op = cls.__new__(cls)
        op.ring = ring
        op._terms = terms
        op._shift = None
        return op

    # constructors
    @classmethod
    def identity(cls, ring: Ring, c: Coeff = 1) -> "DiffOp":
        return cls(ring, {(ring.one, ring.one): c})

    @classmethod
    def mul(cls, ring: Ring, kind: str, i: int) -> "DiffOp":
        return cls._wrap(ring, {(ring.unit(ring.index(kind, i)), ring.one): 1})

    @classmethod
    def d(cls, ring: Ring, kind: str, i: int) -> "DiffOp":
        return cls._wrap(ring, {(ring.one, ring.unit(ring.index(kind, i))): 1})

    @classmethod
    def from_poly(cls, p: Polynomial) -> "DiffOp":
        one = p.ring.one
        return cls._wrap(p.ring, {(m, one): c for m, c in p.terms.items()})

    @property
    def terms(self) -> Mapping[Term, Coeff]:
        return self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(),
                      key=lambda t: (order_key(t[0][0]), order_key(t[0][1])), reverse=True)

    def degree_shifts(self) -> set[int]:
        """Total-degree shift deg(mult) - deg(deriv) of each term."""
        if self._shift is None:
            self._shift = frozenset(sum(mu) - sum(ga) for mu, ga in self._terms)
        return set(self._shift)

    # linear structure
    def _check(self, other: "DiffOp") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        if isinstance(other, (int, Fraction)):
            other = DiffOp.identity(self.ring, other)
        self._check(other)
        out = dict(self._terms)
        for t, c in other._terms.items():
            v = out.get(t, 0) + c
            if v:
                out[t] = _norm(v)
            else:
                out.pop(t, None)
        return DiffOp._wrap(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "DiffOp":
        return DiffOp._wrap(self.ring, {t: -c for t, c in self._terms.items()})

    def __sub__(self, other) -> "DiffOp":
        return self + (-other)

    def __rsub__(self, other) -> "DiffOp":
        return (-self) + other

    def scale(self, c: Coeff) -> "DiffOp":
        if not c:
            return DiffOp(self.ring)
        return DiffOp._wrap(self.ring, {t: _norm(a * c) for t, a in self._terms.items()})

    def __mul__(self, other):
        """``a * b`` is composition; scalars scale."""
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return compose(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> "DiffOp":
        out = DiffOp.identity(self.ring)
        for _ in range(k):
            out = compose(out, self)
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self._terms.items())))

    def __call__(self, f: Polynomial) -> Polynomial:
        return apply(self, f)

    def to_text(self) -> str:
        pieces = []
        for (mu, ga), c in self.sorted_terms():
            body = [mono_str(mu, self.ring)]
            dpart = mono_str(ga, self.ring)
            if dpart:
                body.append("*".join("D" + v for v in dpart.split("*")))
            pieces.append(_op_term(c, "*".join(b for b in body if b)))
        return join_terms(pieces)

    __str__ = to_text

    def __repr__(self) -> str:
        return f"DiffOp({self.to_text()!r})"


def _op_term(c, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def apply(op: DiffOp, f: Polynomial) -> Polynomial:
    if op.ring != f.ring:
        raise RingMismatch(f"{op.ring} vs {f.ring}")
    out: dict = {}
    for (mu, ga), c in op._terms.items():
        active = [(k, g) for k, g in enumerate(ga) if g]
        for m, a in f.terms.items():
            coef = c * a
            ok = True
            for k, g in active:
                e = m[k]
                if e < g:
                    ok = False
                    break
                if g == 1:
                    coef *= e
                else:
                    coef *= _falling(e, g)
            if not ok:
                continue
            new = tuple(e - g + u for e, g, u in zip(m, ga, mu))
            v = out.get(new, 0) + coef
            if v:
                out[new] = v
            else:
                del out[new]
    return Polynomial._wrap(f.ring, {m: _norm(c) for m, c in out.items()})


def _leibniz(ga: Monomial, mu: Monomial):
    """Expand D^ga o x^mu = sum coeff * x^(mu-k) D^(ga-k) over 0 <= k <= min."""
    choices = [range(min(g, u) + 1) for g, u in zip(ga, mu)]
    out = []

    def rec(pos: int, ks: list, coef: int):
        if pos == len(choices):
            k = tuple(ks)
            out.append((coef,
                        tuple(u - x for u, x in zip(mu, k)),
                        tuple(g - x for g, x in zip(ga, k))))
            return
        g, u = ga[pos], mu[pos]
        for k in choices[pos]:
            ks.append(k)
            rec(pos + 1, ks, coef * math.comb(g, k) * _falling(u, k))
            ks.pop()

    rec(0, [], 1)
    return out


def compose(a: DiffOp, b: DiffOp) -> DiffOp:
    """Normal-ordered product ``a o b``."""
    a._check(b)
    out: dict = {}
    for (mu1, ga1), c1 in a._terms.items():
        for (mu2, ga2), c2 in b._terms.items():
            for coef, mu_rest, ga_rest in _leibniz(ga1, mu2):
                mu = tuple(x + y for x, y in zip(mu1, mu_rest))
                ga = tuple(x + y for x, y in zip(ga_rest, ga2))
                key = (mu, ga)
                out[key] = out.get(key, 0) + c1 * c2 * coef
    return DiffOp(a.ring, out)


def bracket(a: DiffOp, b: DiffOp) -> DiffOp:
    return compose(a, b) - compose(b, a)


def parse_op(text: str, ring: Ring) -> DiffOp:
    """Parse notation such as ``-x1*Dx2 - Dy1*Dy2``; products compose left to right."""
    names: dict = {}
    for i, name in enumerate(ring.names):
        names[name] = DiffOp._wrap(ring, {(ring.unit(i), ring.one): 1})
        names["D" + name] = DiffOp._wrap(ring, {(ring.one, ring.unit(i)): 1})
    return eval_expr(text, names, DiffOp.identity(ring))
