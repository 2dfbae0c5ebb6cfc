"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are dense exponent tuples over the variables of a :class:`Ring`,
stored in increasing precedence ``x0 < x1 < ... < xn < y1 < ... < yn``
(``x0`` only exists in the odd orthogonal ring).  Coefficients are Python
``int`` when integral and :class:`fractions.Fraction` otherwise.

Rank computations go through :class:`RowReducer`, an incremental
fraction-free sparse eliminator whose pivots are leading monomials under
the graded-lex order.  The pivot set of a row space does not depend on the
order in which rows are inserted.
"""

from __future__ import annotations

import ast
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Mapping, Sequence, Union

Coeff = Union[int, Fraction]
Monomial = tuple


class RingMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """Polynomial ring B = C[x1..xn, y1..yn], or B' when ``odd`` adds x0."""

    n: int
    odd: bool = False

    @property
    def nvars(self) -> int:
        return 2 * self.n + (1 if self.odd else 0)

    @property
    def names(self) -> tuple[str, ...]:
        xs = [f"x{i}" for i in range(0 if self.odd else 1, self.n + 1)]
        ys = [f"y{i}" for i in range(1, self.n + 1)]
        return tuple(xs + ys)

    def index(self, kind: str, i: int) -> int:
        """Position of variable ``x_i`` / ``y_i`` in exponent tuples."""
        off = 1 if self.odd else 0
        if kind == "x":
            if i == 0 and self.odd:
                return 0
            if 1 <= i <= self.n:
                return off + i - 1
        elif kind == "y":
            if 1 <= i <= self.n:
                return off + self.n + i - 1
        raise ValueError(f"variable {kind}{i} not in {self}")

    def unit(self, pos: int, power: int = 1) -> Monomial:
        e = [0] * self.nvars
        e[pos] = power
        return tuple(e)

    @property
    def one(self) -> Monomial:
        return (0,) * self.nvars

    def __str__(self) -> str:
        return f"B'(n={self.n})" if self.odd else f"B(n={self.n})"


def _norm(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


@lru_cache(maxsize=None)
def order_key(m: Monomial) -> tuple:
    """Graded-lex sort key; the last variable (y_n) has highest precedence."""
    return (sum(m), m[::-1])


@lru_cache(maxsize=None)
def _neg_key(m: Monomial) -> tuple:
    return (-sum(m), tuple(-e for e in reversed(m)))


def mono_str(m: Monomial, ring: Ring) -> str:
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _term_str(c: Coeff, body: str) -> str:
    if not body:
        return str(c)
    if c == 1:
        return body
    if c == -1:
        return "-" + body
    return f"{c}*{body}"


def join_terms(pieces: Sequence[str]) -> str:
    if not pieces:
        return "0"
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


class Polynomial:
    """An element of B (or B').  Treat instances as immutable."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Coeff] | None = None):
        self.ring = ring
        clean = {}
        if terms:
            for m, c in terms.items():
                if len(m) != ring.nvars:
                    raise ValueError(f"monomial {m} has wrong arity for {ring}")
                if c:
                    clean[tuple(m)] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, ring: Ring, terms: dict) -> "Polynomial":
        # caller guarantees canonical form (no zeros, normalized coefficients)
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, ring: Ring, c: Coeff = 1) -> "Polynomial":
        return cls(ring, {ring.one: c})

    @classmethod
    def var(cls, ring: Ring, kind: str, i: int, power: int = 1) -> "Polynomial":
        return cls._wrap(ring, {ring.unit(ring.index(kind, i), power): 1})

    @classmethod
    def monomial(cls, ring: Ring, m: Monomial, c: Coeff = 1) -> "Polynomial":
        return cls(ring, {m: c})

    @property
    def terms(self) -> Mapping[Monomial, Coeff]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def sorted_terms(self) -> list[tuple[Monomial, Coeff]]:
        """Terms in decreasing monomial order (leading term first)."""
        return sorted(self._terms.items(), key=lambda t: order_key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self._terms, key=order_key)

    def degree(self) -> int:
        return max((sum(m) for m in self._terms), default=-1)

    def _check(self, other: "Polynomial") -> None:
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.const(self.ring, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = _norm(v)
            else:
                out.pop(m, None)
        return Polynomial._wrap(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._wrap(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coeff) -> "Polynomial":
        if not c:
            return Polynomial(self.ring)
        return Polynomial._wrap(self.ring, {m: _norm(a * c) for m, a in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                out[m] = out.get(m, 0) + c1 * c2
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.const(self.ring, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def to_text(self) -> str:
        return join_terms([_term_str(c, mono_str(m, self.ring)) for m, c in self.sorted_terms()])

    __str__ = to_text

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


def poly_add(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a + b


def poly_mul(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    return a * b


# -- text parsing ---------------------------------------------------------

def eval_expr(text: str, names: Mapping[str, object], one):
    """Evaluate an arithmetic expression over ``names`` with ``+ - * ^ ()``.

    Integers become ``one * k``; ``a/b`` is allowed between integer literals.
    """
    tree = ast.parse(text.replace("^", "**"), mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return node.value
        if isinstance(node, ast.Name):
            if node.id not in names:
                raise ValueError(f"unknown symbol {node.id!r}")
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Add):
                return a + b
            if isinstance(node.op, ast.Sub):
                return a - b
            if isinstance(node.op, ast.Mult):
                return a * b
            if isinstance(node.op, ast.Div) and isinstance(b, (int, Fraction)) and isinstance(a, (int, Fraction)):
                return Fraction(a) / b
            if isinstance(node.op, ast.Pow) and isinstance(b, int):
                return a ** b
        raise ValueError(f"unsupported expression: {ast.dump(node)}")

    v = ev(tree)
    if isinstance(v, (int, Fraction)):
        return one * v
    return v


def parse_poly(text: str, ring: Ring) -> Polynomial:
    names = {name: Polynomial.monomial(ring, ring.unit(i)) for i, name in enumerate(ring.names)}
    return eval_expr(text, names, Polynomial.const(ring))


# -- exact rank -----------------------------------------------------------

@dataclass(frozen=True)
class RankProfile:
    rank: int
    pivots: tuple  # increasing monomial order


def _content(row: dict) -> int:
    g = 0
    for c in row.values():
        g = math.gcd(g, c)
        if g == 1:
            return 1
    return g


def _integral(terms: Mapping[Monomial, Coeff]) -> dict:
    den = 1
    for c in terms.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // math.gcd(den, c.denominator)
    if den == 1:
        return dict(terms)
    return {m: int(c * den) for m, c in terms.items()}


class RowReducer:
    """Incremental exact row echelon form over Q.

    Each stored row is a primitive integer vector keyed by monomials whose
    leading monomial is its pivot.  ``insert`` reduces a new row only until
    its leading monomial is not a pivot, so fill-in stays local to the
    monomials a row actually touches.
    """

    def __init__(self):
        self.pivots: dict[Monomial, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, terms: Mapping[Monomial, Coeff]) -> dict:
        """Return the row reduced until its leading monomial is a non-pivot ({} if in span)."""
        row = _integral(terms)
        if not row:
            return row
        heap = [(_neg_key(m), m) for m in row]
        heapq.heapify(heap)
        pivots = self.pivots
        while heap:
            _, m = heapq.heappop(heap)
            c = row.get(m)
            if not c:
                continue
            prow = pivots.get(m)
            if prow is None:
                return row
            pc = prow[m]
            if pc in (1, -1):
                f = c * pc
            else:
                g = math.gcd(pc, c)
                s = pc // g
                f = c // g
                if s < 0:
                    s, f = -s, -f
                if s != 1:
                    for k in row:
                        row[k] *= s
            for k, v in prow.items():
                nv = row.get(k)
                if nv is None:
                    row[k] = -f * v
                    heapq.heappush(heap, (_neg_key(k), k))
                else:
                    nv -= f * v
                    if nv:
                        row[k] = nv
                    else:
                        del row[k]
        return row

    def insert(self, poly: Polynomial | Mapping[Monomial, Coeff]) -> bool:
        terms = poly.terms if isinstance(poly, Polynomial) else poly
        row = self.reduce(terms)
        if not row:
            return False
        lead = max(row, key=order_key)
        g = _content(row)
        if row[lead] < 0:
            g = -g
        if g != 1:
            row = {k: v // g for k, v in row.items()}
        self.pivots[lead] = row
        return True

    def contains(self, poly: Polynomial) -> bool:
        return not self.reduce(poly.terms)

    def profile(self) -> RankProfile:
        return RankProfile(self.rank, tuple(sorted(self.pivots, key=order_key)))


def exact_rank(rows: Iterable[Polynomial]) -> RankProfile:
    rows = list(rows)
    rings = {p.ring for p in rows}
    if len(rings) > 1:
        raise RingMismatch(f"rows from several rings: {rings}")
    red = RowReducer()
    for p in rows:
        red.insert(p)
    return red.profile()


def kernel(images: Sequence[Polynomial]) -> list[dict[int, int]]:
    """Basis of {c : sum_j c_j * images[j] = 0} as sparse integer vectors.

    Images are processed in the given order; each kernel vector is primitive
    with a positive coefficient on its largest index.
    """
    pivots: dict[Monomial, tuple[dict, dict]] = {}
    out = []
    for j, img in enumerate(images):
        row = {m: Fraction(c) for m, c in img.terms.items()}
        combo = {j: Fraction(1)}
        while row:
            lead = max(row, key=order_key)
            hit = pivots.get(lead)
            if hit is None:
                break
            prow, pcombo = hit
            f = row[lead]
            for m, v in prow.items():
                nv = row.get(m, 0) - f * v
                if nv:
                    row[m] = nv
                else:
                    row.pop(m, None)
            for i, v in pcombo.items():
                nv = combo.get(i, 0) - f * v
                if nv:
                    combo[i] = nv
                else:
                    combo.pop(i, None)
        if row:
            lead = max(row, key=order_key)
            inv = 1 / row[lead]
            pivots[lead] = ({m: v * inv for m, v in row.items()},
                            {i: v * inv for i, v in combo.items()})
        else:
            out.append(_primitive(combo))
    return out


def _primitive(vec: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in vec.values():
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = {i: int(v * den) for i, v in vec.items()}
    g = 0
    for v in ints.values():
        g = math.gcd(g, v)
    if ints[max(ints)] < 0:
        g = -g
    return {i: v // g for i, v in sorted(ints.items())}


def monomials_up_to(nvars: int, max_degree: int) -> Iterator[Monomial]:
    """All exponent tuples of total degree <= max_degree."""

    def rec(prefix: list, left: int, slots: int):
        if slots == 0:
            yield tuple(prefix)
            return
        for e in range(left + 1):
            prefix.append(e)
            yield from rec(prefix, left - e, slots - 1)
            prefix.pop()

    yield from rec([], max_degree, nvars)
