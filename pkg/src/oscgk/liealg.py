"""Matrix Lie algebras o(2n), o(2n+1), sp(2n) and their oscillator representations.

Matrix units ``E(r, s)`` use rows/columns ``1..2n`` (plus ``0`` for
o(2n+1)).  Each unit is sent to a differential operator on B (or B') by the
piecewise rules in :func:`unit_operator`; a basis element is sent to the
matching linear combination.  The root-vector tables used for the g1/g2
split are transcribed separately (:data:`EVEN_CASE1` and friends) and are
cross-checked against the unit rules in the test suite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Iterator

from .exactpoly import Polynomial, Ring, exact_rank
from .parallel import pmap
from .weylalg import DiffOp, bracket, parse_op


class AlgebraKind(str, enum.Enum):
    EVEN_ORTHOGONAL = "o-even"
    ODD_ORTHOGONAL = "o-odd"
    SYMPLECTIC = "sp"

    @property
    def title(self) -> str:
        return {"o-even": "o(2n)", "o-odd": "o(2n+1)", "sp": "sp(2n)"}[self.value]


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RepConfig:
    kind: AlgebraKind
    n: int
    n1: int
    n2: int

    def __post_init__(self):
        object.__setattr__(self, "kind", AlgebraKind(self.kind))
        if self.n < 1:
            raise ConfigError(f"n must be positive, got {self.n}")
        if not 1 <= self.n1 <= self.n2 <= self.n:
            raise ConfigError(f"need 1 <= n1 <= n2 <= n, got n1={self.n1}, n2={self.n2}, n={self.n}")

    @property
    def ring(self) -> Ring:
        return Ring(self.n, odd=self.kind is AlgebraKind.ODD_ORTHOGONAL)

    @property
    def case(self) -> int:
        return 1 if self.n1 < self.n2 else 2

    def describe(self) -> str:
        size = 2 * self.n + (1 if self.kind is AlgebraKind.ODD_ORTHOGONAL else 0)
        name = "sp" if self.kind is AlgebraKind.SYMPLECTIC else "o"
        return f"{name}({size}) n1={self.n1} n2={self.n2}"

    def as_dict(self) -> dict:
        return {"algebra": self.kind.value, "n": self.n, "n1": self.n1, "n2": self.n2}


def admissible(kind: AlgebraKind, n: int) -> Iterator[RepConfig]:
    for n1 in range(1, n + 1):
        for n2 in range(n1, n + 1):
            yield RepConfig(kind, n, n1, n2)


# -- abstract matrices ----------------------------------------------------

Matrix = dict  # {(r, s): coefficient}


def mat_add(*terms: tuple) -> Matrix:
    out: Matrix = {}
    for c, m in terms:
        for k, v in m.items():
            nv = out.get(k, 0) + c * v
            if nv:
                out[k] = nv
            else:
                out.pop(k, None)
    return out


def mat_commutator(a: Matrix, b: Matrix) -> Matrix:
    out: Matrix = {}
    for (r, s), u in a.items():
        for (p, q), v in b.items():
            if s == p:
                out[(r, q)] = out.get((r, q), 0) + u * v
            if q == r:
                out[(p, s)] = out.get((p, s), 0) - u * v
    return {k: v for k, v in out.items() if v}


class _MatExpr:
    """Tiny helper so table entries can be written as ``E(s,i) - E(n+i,n+s)``."""

    def __init__(self, m: Matrix):
        self.m = m

    def __add__(self, o):
        return _MatExpr(mat_add((1, self.m), (1, o.m)))

    def __sub__(self, o):
        return _MatExpr(mat_add((1, self.m), (-1, o.m)))

    def __neg__(self):
        return _MatExpr({k: -v for k, v in self.m.items()})


def _E(r: int, s: int) -> _MatExpr:
    return _MatExpr({(r, s): 1})


@dataclass(frozen=True, order=True)
class BasisElement:
    """One spanning matrix of the algebra.

    Families: ``K`` E(i,j)-E(n+j,n+i); ``P+`` E(i,n+j)-/+E(j,n+i) (i<j, or
    E(i,n+i) for sp); ``P-`` the transposed partners; ``S-`` E(0,i)-E(n+i,0);
    ``S+`` E(0,n+i)-E(i,0).
    """

    family: str
    i: int
    j: int = 0


_FAMILY_ORDER = {"K": 0, "P+": 1, "P-": 2, "S-": 3, "S+": 4}


@dataclass(frozen=True)
class Algebra:
    kind: AlgebraKind
    n: int

    @cached_property
    def basis(self) -> tuple[BasisElement, ...]:
        n = self.n
        out = [BasisElement("K", i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
        diag = self.kind is AlgebraKind.SYMPLECTIC
        for fam in ("P+", "P-"):
            out += [BasisElement(fam, i, j) for i in range(1, n + 1)
                    for j in range(i if diag else i + 1, n + 1)]
        if self.kind is AlgebraKind.ODD_ORTHOGONAL:
            out += [BasisElement("S-", i) for i in range(1, n + 1)]
            out += [BasisElement("S+", i) for i in range(1, n + 1)]
        return tuple(out)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self, b: BasisElement) -> Matrix:
        n, i, j = self.n, b.i, b.j
        sp = self.kind is AlgebraKind.SYMPLECTIC
        sign = 1 if sp else -1
        if b.family == "K":
            return mat_add((1, {(i, j): 1}), (-1, {(n + j, n + i): 1}))
        if b.family == "P+":
            if i == j:
                return {(i, n + i): 1}
            return {(i, n + j): 1, (j, n + i): sign}
        if b.family == "P-":
            if i == j:
                return {(n + i, i): 1}
            if sp:
                return {(n + i, j): 1, (n + j, i): 1}
            return {(n + j, i): 1, (n + i, j): -1}
        if b.family == "S-":
            return {(0, i): 1, (n + i, 0): -1}
        if b.family == "S+":
            return {(0, n + i): 1, (i, 0): -1}
        raise ValueError(b)

    def _key(self, b: BasisElement) -> tuple:
        n, i, j = self.n, b.i, b.j
        return {
            "K": (i, j),
            "P+": (i, n + j),
            "P-": (n + i, j) if self.kind is AlgebraKind.SYMPLECTIC else (n + j, i),
            "S-": (0, i),
            "S+": (0, n + i),
        }[b.family]

    @cached_property
    def _keys(self) -> dict:
        return {self._key(b): b for b in self.basis}

    def decompose(self, m: Matrix) -> dict[BasisElement, Fraction]:
        """Coordinates of ``m`` in the basis; raises if ``m`` is not in the algebra."""
        coords = {}
        for key, c in m.items():
            b = self._keys.get(key)
            if b is not None:
                coords[b] = Fraction(c, self.matrix(b)[key])
        back = mat_add(*((c, self.matrix(b)) for b, c in coords.items()))
        if back != {k: v for k, v in m.items() if v}:
            raise ValueError(f"matrix {m} is not in {self.kind.title} (n={self.n})")
        return {b: coords[b] for b in sorted(coords, key=self.sort_key)}

    def sort_key(self, b: BasisElement) -> tuple:
        return (_FAMILY_ORDER[b.family], b.i, b.j)

    def label(self, b: BasisElement) -> str:
        return mat_label(self.matrix(b))

    @property
    def kplus(self) -> list[BasisElement]:
        return [b for b in self.basis if b.family == "K" and b.i < b.j]

    @property
    def cartan(self) -> list[BasisElement]:
        return [b for b in self.basis if b.family == "K" and b.i == b.j]

    @property
    def parabolic_minus(self) -> list[BasisElement]:
        """Root vectors spanning the negative part plus P+ (where g1 and g2 live)."""
        return [b for b in self.basis if not (b.family == "K" and b.i <= b.j)]


def mat_label(m: Matrix) -> str:
    pieces = []
    for (r, s), c in sorted(m.items(), key=lambda t: (-t[1], t[0])):
        unit = f"E[{r},{s}]"
        if c == 1:
            pieces.append(unit)
        elif c == -1:
            pieces.append("-" + unit)
        else:
            pieces.append(f"{c}*{unit}")
    out = pieces[0]
    for p in pieces[1:]:
        out += p if p.startswith("-") else "+" + p
    return out


def matrix_bracket(alg: Algebra, a: BasisElement, b: BasisElement) -> dict[BasisElement, Fraction]:
    return alg.decompose(mat_commutator(alg.matrix(a), alg.matrix(b)))


# -- the oscillator representation ----------------------------------------

def unit_operator(cfg: RepConfig, r: int, s: int) -> DiffOp:
    """Image of the matrix unit E(r, s)."""
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    ring = cfg.ring
    op = lambda text: parse_op(text, ring)
    if r == 0 and s == 0:
        raise ValueError("E(0,0) has no image")
    if r == 0 or s == 0:
        if not cfg.ring.odd:
            raise ValueError("index 0 only exists for o(2n+1)")
        i = s if r == 0 else r
        if r == 0:
            if i <= n1:
                return op(f"-x0*x{i}")
            if i <= n:
                return op(f"x0*Dx{i}")
            if i <= n + n2:
                return op(f"x0*Dy{i - n}")
            return op(f"-x0*y{i - n}")
        if i <= n1:
            return op(f"Dx0*Dx{i}")
        if i <= n:
            return op(f"x{i}*Dx0")
        if i <= n + n2:
            return op(f"y{i - n}*Dx0")
        return op(f"Dx0*Dy{i - n}")
    if r <= n and s <= n:
        i, j = r, s
        if i <= n1 and j <= n1:
            return op(f"-x{j}*Dx{i}") - (1 if i == j else 0)
        if i <= n1:
            return op(f"Dx{i}*Dx{j}")
        if j <= n1:
            return op(f"-x{i}*x{j}")
        return op(f"x{i}*Dx{j}")
    if r > n and s > n:
        i, j = r - n, s - n
        if i <= n2 and j <= n2:
            return op(f"y{i}*Dy{j}")
        if i <= n2:
            return op(f"-y{i}*y{j}")
        if j <= n2:
            return op(f"Dy{i}*Dy{j}")
        return op(f"-y{j}*Dy{i}") - (1 if i == j else 0)
    if r <= n:
        i, j = r, s - n
        if i <= n1 and j <= n2:
            return op(f"Dx{i}*Dy{j}")
        if i <= n1:
            return op(f"-y{j}*Dx{i}")
        if j <= n2:
            return op(f"x{i}*Dy{j}")
        return op(f"-x{i}*y{j}")
    i, j = r - n, s
    if j <= n1 and i <= n2:
        return op(f"-x{j}*y{i}")
    if j <= n1:
        return op(f"-x{j}*Dy{i}")
    if i <= n2:
        return op(f"y{i}*Dx{j}")
    return op(f"Dx{j}*Dy{i}")


def matrix_operator(cfg: RepConfig, m: Matrix) -> DiffOp:
    out = DiffOp(cfg.ring)
    for (r, s), c in sorted(m.items()):
        out = out + unit_operator(cfg, r, s).scale(c)
    return out


# -- transcribed root-vector tables ---------------------------------------

def _lt(lo: int, hi: int, a: str, b: str):
    return [{a: u, b: v} for u in range(lo, hi + 1) for v in range(u + 1, hi + 1)]


def _box(alo: int, ahi: int, blo: int, bhi: int, a: str, b: str):
    return [{a: u, b: v} for u in range(alo, ahi + 1) for v in range(blo, bhi + 1)]


def _one(lo: int, hi: int, a: str):
    return [{a: u} for u in range(lo, hi + 1)]


@dataclass(frozen=True)
class TableRow:
    label: str
    ranges: Callable[[int, int, int], list]
    matrix: str
    operator: str


# (label, index ranges from (n, n1, n2), matrix expression, operator expression)
EVEN_CASE1 = [
    TableRow("ri", lambda n, a, b: _lt(1, a, "i", "r"), "E(r,i) - E(n+i,n+r)", "-x{i}*Dx{r} - y{i}*Dy{r}"),
    TableRow("si", lambda n, a, b: _box(1, a, a + 1, b, "i", "s"), "E(s,i) - E(n+i,n+s)", "-x{i}*x{s} - y{i}*Dy{s}"),
    TableRow("ti", lambda n, a, b: _box(1, a, b + 1, n, "i", "t"), "E(t,i) - E(n+i,n+t)", "-x{i}*x{t} + y{i}*y{t}"),
    TableRow("sj", lambda n, a, b: _lt(a + 1, b, "j", "s"), "E(s,j) - E(n+j,n+s)", "x{s}*Dx{j} - y{j}*Dy{s}"),
    TableRow("ts", lambda n, a, b: _box(a + 1, b, b + 1, n, "s", "t"), "E(t,s) - E(n+s,n+t)", "x{t}*Dx{s} + y{s}*y{t}"),
    TableRow("tp", lambda n, a, b: _lt(b + 1, n, "p", "t"), "E(t,p) - E(n+p,n+t)", "x{t}*Dx{p} + y{t}*Dy{p}"),
    TableRow("inr", lambda n, a, b: _lt(1, a, "i", "r"), "E(i,n+r) - E(r,n+i)", "Dx{i}*Dy{r} - Dx{r}*Dy{i}"),
    TableRow("nri", lambda n, a, b: _lt(1, a, "i", "r"), "E(n+r,i) - E(n+i,r)", "-x{i}*y{r} + x{r}*y{i}"),
    TableRow("ins", lambda n, a, b: _box(1, a, a + 1, b, "i", "s"), "E(i,n+s) - E(s,n+i)", "Dx{i}*Dy{s} - x{s}*Dy{i}"),
    TableRow("nsi", lambda n, a, b: _box(1, a, a + 1, b, "i", "s"), "E(n+s,i) - E(n+i,s)", "-x{i}*y{s} - y{i}*Dx{s}"),
    TableRow("int", lambda n, a, b: _box(1, a, b + 1, n, "i", "t"), "E(i,n+t) - E(t,n+i)", "-y{t}*Dx{i} - x{t}*Dy{i}"),
    TableRow("nti", lambda n, a, b: _box(1, a, b + 1, n, "i", "t"), "E(n+t,i) - E(n+i,t)", "-x{i}*Dy{t} - y{i}*Dx{t}"),
    TableRow("jns", lambda n, a, b: _lt(a + 1, b, "j", "s"), "E(j,n+s) - E(s,n+j)", "x{j}*Dy{s} - x{s}*Dy{j}"),
    TableRow("njs", lambda n, a, b: _lt(a + 1, b, "j", "s"), "E(n+j,s) - E(n+s,j)", "-y{s}*Dx{j} + y{j}*Dx{s}"),
    TableRow("snt", lambda n, a, b: _box(a + 1, b, b + 1, n, "s", "t"), "E(s,n+t) - E(t,n+s)", "-x{s}*y{t} - x{t}*Dy{s}"),
    # sign of the y_s*Dx_t term corrected; the homomorphism check rejects the other sign
    TableRow("nst", lambda n, a, b: _box(a + 1, b, b + 1, n, "s", "t"), "E(n+s,t) - E(n+t,s)", "-Dx{s}*Dy{t} + y{s}*Dx{t}"),
    TableRow("pnt", lambda n, a, b: _lt(b + 1, n, "p", "t"), "E(p,n+t) - E(t,n+p)", "-x{p}*y{t} + x{t}*y{p}"),
    TableRow("npt", lambda n, a, b: _lt(b + 1, n, "p", "t"), "E(n+p,t) - E(n+t,p)", "-Dx{p}*Dy{t} + Dx{t}*Dy{p}"),
]

EVEN_CASE2 = [
    TableRow("ri-", lambda n, a, b: _lt(1, a, "i", "r"), "E(r,i) - E(n+i,n+r)", "-x{i}*Dx{r} - y{i}*Dy{r}"),
    TableRow("ti-", lambda n, a, b: _box(1, a, a + 1, n, "i", "t"), "E(t,i) - E(n+i,n+t)", "-x{i}*x{t} + y{i}*y{t}"),
    TableRow("tp-", lambda n, a, b: _lt(a + 1, n, "p", "t"), "E(t,p) - E(n+p,n+t)", "x{t}*Dx{p} + y{t}*Dy{p}"),
    TableRow("inr-", lambda n, a, b: _lt(1, a, "i", "r"), "E(i,n+r) - E(r,n+i)", "Dx{i}*Dy{r} - Dx{r}*Dy{i}"),
    TableRow("nri-", lambda n, a, b: _lt(1, a, "i", "r"), "E(n+r,i) - E(n+i,r)", "-x{i}*y{r} + x{r}*y{i}"),
    TableRow("int-", lambda n, a, b: _box(1, a, a + 1, n, "i", "t"), "E(i,n+t) - E(t,n+i)", "-y{t}*Dx{i} - x{t}*Dy{i}"),
    TableRow("nti-", lambda n, a, b: _box(1, a, a + 1, n, "i", "t"), "E(n+t,i) - E(n+i,t)", "-x{i}*Dy{t} - y{i}*Dx{t}"),
    TableRow("pnt-", lambda n, a, b: _lt(a + 1, n, "p", "t"), "E(p,n+t) - E(t,n+p)", "-x{p}*y{t} + x{t}*y{p}"),
    TableRow("npt-", lambda n, a, b: _lt(a + 1, n, "p", "t"), "E(n+p,t) - E(n+t,p)", "-Dx{p}*Dy{t} + Dx{t}*Dy{p}"),
]

ODD_CASE1 = [
    TableRow("0i", lambda n, a, b: _one(1, a, "i"), "E(0,i) - E(n+i,0)", "-x0*x{i} - y{i}*Dx0"),
    TableRow("0s", lambda n, a, b: _one(a + 1, b, "s"), "E(0,s) - E(n+s,0)", "x0*Dx{s} - y{s}*Dx0"),
    TableRow("0t", lambda n, a, b: _one(b + 1, n, "t"), "E(0,t) - E(n+t,0)", "x0*Dx{t} - Dx0*Dy{t}"),
    TableRow("0ni", lambda n, a, b: _one(1, a, "i"), "E(0,n+i) - E(i,0)", "x0*Dy{i} - Dx0*Dx{i}"),
    TableRow("0ns", lambda n, a, b: _one(a + 1, b, "s"), "E(0,n+s) - E(s,0)", "x0*Dy{s} - x{s}*Dx0"),
    TableRow("0nt", lambda n, a, b: _one(b + 1, n, "t"), "E(0,n+t) - E(t,0)", "-x0*y{t} - x{t}*Dx0"),
]

ODD_CASE2 = [
    TableRow("0i-", lambda n, a, b: _one(1, a, "i"), "E(0,i) - E(n+i,0)", "-x0*x{i} - y{i}*Dx0"),
    TableRow("0t-", lambda n, a, b: _one(b + 1, n, "t"), "E(0,t) - E(n+t,0)", "x0*Dx{t} - Dx0*Dy{t}"),
    TableRow("0ni-", lambda n, a, b: _one(1, a, "i"), "E(0,n+i) - E(i,0)", "x0*Dy{i} - Dx0*Dx{i}"),
    TableRow("0nt-", lambda n, a, b: _one(b + 1, n, "t"), "E(0,n+t) - E(t,0)", "-x0*y{t} - x{t}*Dx0"),
]

SP_TABLE = [
    TableRow("si3", lambda n, a, b: _box(1, a, a + 1, b, "i", "s"), "E(s,i) - E(n+i,n+s)", "-x{i}*x{s} - y{i}*Dy{s}"),
    TableRow("ti3", lambda n, a, b: _box(1, a, b + 1, n, "i", "t"), "E(t,i) - E(n+i,n+t)", "-x{i}*x{t} + y{i}*y{t}"),
    TableRow("ts3", lambda n, a, b: _box(a + 1, b, b + 1, n, "s", "t"), "E(t,s) - E(n+s,n+t)", "x{t}*Dx{s} + y{s}*y{t}"),
    TableRow("nri3", lambda n, a, b: _lt(1, a, "i", "r"), "E(n+r,i) + E(n+i,r)", "-x{i}*y{r} - x{r}*y{i}"),
    TableRow("nsi3", lambda n, a, b: _box(1, a, a + 1, b, "i", "s"), "E(n+s,i) + E(n+i,s)", "-x{i}*y{s} + y{i}*Dx{s}"),
    TableRow("snt3", lambda n, a, b: _box(a + 1, b, b + 1, n, "s", "t"), "E(s,n+t) + E(t,n+s)", "-x{s}*y{t} + x{t}*Dy{s}"),
    TableRow("pnt3", lambda n, a, b: _lt(b + 1, n, "p", "t"), "E(p,n+t) + E(t,n+p)", "-x{p}*y{t} - x{t}*y{p}"),
    TableRow("ini", lambda n, a, b: _one(1, a, "i"), "E(n+i,i)", "-x{i}*y{i}"),
    TableRow("tnt", lambda n, a, b: _one(b + 1, n, "t"), "E(t,n+t)", "-x{t}*y{t}"),
]

EVEN_G2 = {"si", "ti", "ts", "nri", "nsi", "snt", "pnt", "ti-", "nri-", "pnt-"}
ODD_G2 = {"0i", "0nt", "0i-", "0nt-"}


@dataclass(frozen=True)
class RootVector:
    """A transcribed table entry with concrete indices."""

    label: str
    indices: tuple
    matrix: tuple  # sorted ((r, s), coeff) pairs
    op: DiffOp

    @property
    def name(self) -> str:
        idx = ",".join(f"{k}={v}" for k, v in self.indices)
        return f"({self.label}) {idx}"


def table_rows(cfg: RepConfig) -> list[TableRow]:
    if cfg.kind is AlgebraKind.SYMPLECTIC:
        return list(SP_TABLE)
    rows = list(EVEN_CASE1 if cfg.case == 1 else EVEN_CASE2)
    if cfg.kind is AlgebraKind.ODD_ORTHOGONAL:
        rows += ODD_CASE1 if cfg.case == 1 else ODD_CASE2
    return rows


def transcribed_roots(cfg: RepConfig) -> list[RootVector]:
    """Root vectors from the case tables, with operators parsed from their formulas."""
    out = []
    ring = cfg.ring
    for row in table_rows(cfg):
        for idx in row.ranges(cfg.n, cfg.n1, cfg.n2):
            env = dict(idx, n=cfg.n, E=_E)
            m = eval(row.matrix, {"__builtins__": {}}, env).m  # constant table strings only
            op = parse_op(row.operator.format(**idx), ring)
            out.append(RootVector(row.label, tuple(sorted(idx.items())), tuple(sorted(m.items())), op))
    return out


@dataclass
class RepTable:
    config: RepConfig
    algebra: Algebra
    ops: dict  # BasisElement -> DiffOp
    roots: list = field(default_factory=list)  # RootVector
    g1: list = field(default_factory=list)  # BasisElement
    g2: list = field(default_factory=list)

    @property
    def kplus(self) -> list[BasisElement]:
        return self.algebra.kplus

    def kplus_ops(self) -> list[DiffOp]:
        return [self.ops[b] for b in self.kplus]

    def cartan_ops(self) -> list[DiffOp]:
        return [self.ops[b] for b in self.algebra.cartan]

    def g1_ops(self) -> list[DiffOp]:
        return [self.ops[b] for b in self.g1]

    def g2_ops(self) -> list[DiffOp]:
        return [self.ops[b] for b in self.g2]

    def push(self, combo: dict) -> DiffOp:
        out = DiffOp(self.config.ring)
        for b, c in combo.items():
            out = out + self.ops[b].scale(c)
        return out

    def dump(self) -> str:
        lines = [f"{self.algebra.label(b)} := {self.ops[b].to_text()}" for b in self.algebra.basis]
        return "\n".join(lines) + "\n"

    def mutated(self, b: BasisElement, factor=-1) -> "RepTable":
        ops = dict(self.ops)
        ops[b] = ops[b].scale(factor)
        return RepTable(self.config, self.algebra, ops, self.roots, self.g1, self.g2)


def build_rep(cfg: RepConfig) -> RepTable:
    alg = Algebra(cfg.kind, cfg.n)
    ops = {b: matrix_operator(cfg, alg.matrix(b)) for b in alg.basis}
    roots = transcribed_roots(cfg)
    g2_labels = EVEN_G2 | ODD_G2
    g1, g2 = [], []
    for rv in roots:
        coords = alg.decompose(dict(rv.matrix))
        if len(coords) != 1:
            raise ValueError(f"{rv.name} is not a single basis element")
        (b,) = coords
        if cfg.kind is AlgebraKind.SYMPLECTIC or rv.label in g2_labels:
            g2.append(b)
        else:
            g1.append(b)
    if cfg.kind is AlgebraKind.SYMPLECTIC:
        taken = set(g2)
        g1 = [b for b in alg.parabolic_minus if b not in taken]
    return RepTable(cfg, alg, ops, roots, g1, g2)


@dataclass(frozen=True)
class Violation:
    a: BasisElement
    b: BasisElement
    lhs: DiffOp  # bracket of the images
    rhs: DiffOp  # image of the matrix bracket

    def describe(self, alg: Algebra) -> str:
        return (f"[{alg.label(self.a)}, {alg.label(self.b)}]: "
                f"bracket of images = {self.lhs.to_text()} ; image of bracket = {self.rhs.to_text()}")


def _pair_check(table: RepTable, a: BasisElement, b: BasisElement) -> Violation | None:
    lhs = bracket(table.ops[a], table.ops[b])
    rhs = table.push(matrix_bracket(table.algebra, a, b))
    return None if lhs == rhs else Violation(a, b, lhs, rhs)


def _check_block(args) -> list:
    table, pairs = args
    return [_pair_check(table, a, b) for a, b in pairs]


def check_homomorphism(table: RepTable, workers: int = 1) -> list[Violation]:
    """All ordered basis pairs whose bracket is not preserved (empty list means pass)."""
    basis = table.algebra.basis
    pairs = [(a, b) for a in basis for b in basis]
    nblocks = max(1, min(len(pairs), 4 * workers)) if workers > 1 else 1
    size = -(-len(pairs) // nblocks)
    blocks = [(table, pairs[i:i + size]) for i in range(0, len(pairs), size)]
    return [v for part in pmap(_check_block, blocks, workers) for v in part if v is not None]


def span_check(alg: Algebra, elems: Iterable[BasisElement]) -> int:
    """Dimension of the span of the given basis elements' matrices."""
    keys = sorted({k for b in alg.basis for k in alg.matrix(b)})
    ring = Ring(len(keys))
    rows = []
    for b in elems:
        terms = {}
        for k, c in alg.matrix(b).items():
            terms[ring.unit(keys.index(k))] = c
        rows.append(Polynomial(ring, terms))
    return exact_rank(rows).rank
