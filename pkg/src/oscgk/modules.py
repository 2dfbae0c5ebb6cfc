"""Graded slices, Laplace-type operators, harmonics, singular vectors and seed spaces."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .exactpoly import (Monomial, Polynomial, RankProfile, RowReducer, kernel,
                        monomials_up_to, order_key, parse_poly)
from .liealg import AlgebraKind, ConfigError, RepConfig, RepTable
from .weylalg import DiffOp, apply, parse_op


class LaplaceKind(str, enum.Enum):
    EVEN_D = "D"
    ODD_D_PRIME = "D'"
    SP_GRADING = "D_sp"


def grade_weights(cfg: RepConfig) -> tuple[int, ...]:
    """Per-variable weights, aligned with the ring's exponent tuples."""
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    xs = [-1 if i <= n1 else 1 for i in range(1, n + 1)]
    ys = [1 if i <= n2 else -1 for i in range(1, n + 1)]
    head = [1] if cfg.ring.odd else []
    return tuple(head + xs + ys)


def grade_weight(cfg: RepConfig, m: Monomial) -> int:
    return sum(w * e for w, e in zip(grade_weights(cfg), m))


def poly_weights(cfg: RepConfig, f: Polynomial) -> set[int]:
    w = grade_weights(cfg)
    return {sum(a * e for a, e in zip(w, m)) for m in f.terms}


def op_weights(cfg: RepConfig, op: DiffOp) -> set[int]:
    """Weight shift of each term of ``op`` (mult weight minus deriv weight)."""
    w = grade_weights(cfg)
    return {sum(a * (u - g) for a, u, g in zip(w, mu, ga)) for mu, ga in op.terms}


@dataclass(frozen=True)
class GradedSlice:
    config: RepConfig
    kprime: int
    cap: int
    basis: tuple  # monomials in increasing order

    def __len__(self) -> int:
        return len(self.basis)

    def polys(self) -> list[Polynomial]:
        ring = self.config.ring
        return [Polynomial.monomial(ring, m) for m in self.basis]


def graded_slice(cfg: RepConfig, kprime: int, N: int) -> GradedSlice:
    if N < 0:
        raise ValueError("degree cap must be nonnegative")
    w = grade_weights(cfg)
    mons = [m for m in monomials_up_to(cfg.ring.nvars, N)
            if sum(a * e for a, e in zip(w, m)) == kprime]
    return GradedSlice(cfg, kprime, N, tuple(sorted(mons, key=order_key)))


def laplace_kind(cfg: RepConfig) -> LaplaceKind:
    return {
        AlgebraKind.EVEN_ORTHOGONAL: LaplaceKind.EVEN_D,
        AlgebraKind.ODD_ORTHOGONAL: LaplaceKind.ODD_D_PRIME,
        AlgebraKind.SYMPLECTIC: LaplaceKind.SP_GRADING,
    }[cfg.kind]


def _dhat_terms(cfg: RepConfig) -> list[str]:
    """Terms of sum x_i Dy_i - sum Dx_r Dy_r + sum y_s Dx_s over the three index blocks."""
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    out = [f"x{i}*Dy{i}" for i in range(1, n1 + 1)]
    out += [f"-Dx{r}*Dy{r}" for r in range(n1 + 1, n2 + 1)]
    out += [f"y{s}*Dx{s}" for s in range(n2 + 1, n + 1)]
    return out


def laplace(cfg: RepConfig) -> DiffOp:
    ring = cfg.ring
    kind = laplace_kind(cfg)
    if kind is LaplaceKind.SP_GRADING:
        n, n1, n2 = cfg.n, cfg.n1, cfg.n2
        terms = [f"x{r}*Dx{r}" for r in range(n1 + 1, n + 1)]
        terms += [f"-x{i}*Dx{i}" for i in range(1, n1 + 1)]
        terms += [f"y{i}*Dy{i}" for i in range(1, n2 + 1)]
        terms += [f"-y{r}*Dy{r}" for r in range(n2 + 1, n + 1)]
        return parse_op(" + ".join(terms), ring)
    even = parse_op(" + ".join(_dhat_terms(cfg)), ring)
    if kind is LaplaceKind.EVEN_D:
        return even
    return parse_op("Dx0*Dx0", ring) - even.scale(2)


def twist_operator(cfg: RepConfig) -> DiffOp:
    """The operator D-hat = -(even Laplacian) used by the odd-case twist map, on B'."""
    return -parse_op(" + ".join(_dhat_terms(cfg)), cfg.ring)


def twist(cfg: RepConfig, f: Polynomial) -> Polynomial:
    """T1(f) = sum_i (-2)^i x0^(2i+1) Dhat^i(f) / (2i+1)!, stopping once Dhat^i(f) = 0."""
    if not cfg.ring.odd:
        raise ConfigError("the twist map needs the ring with x0")
    dhat = twist_operator(cfg)
    x0 = Polynomial.var(cfg.ring, "x", 0)
    out = Polynomial(cfg.ring)
    cur, i = f, 0
    while cur:
        out = out + (x0 ** (2 * i + 1) * cur).scale(Fraction((-2) ** i, math.factorial(2 * i + 1)))
        cur = apply(dhat, cur)
        i += 1
    return out


def harmonic_basis(cfg: RepConfig, kprime: int, N: int) -> list[Polynomial]:
    """Basis of ker(D) on the weight-k' monomials of degree <= N."""
    if cfg.kind is AlgebraKind.SYMPLECTIC:
        raise ConfigError("sp(2n) slices carry no harmonic condition")
    sl = graded_slice(cfg, kprime, N)
    d = laplace(cfg)
    polys = sl.polys()
    out = []
    for vec in kernel([apply(d, p) for p in polys]):
        out.append(Polynomial(cfg.ring, {sl.basis[j]: c for j, c in vec.items()}))
    return out


def is_harmonic(cfg: RepConfig, f: Polynomial) -> bool:
    return not apply(laplace(cfg), f)


def is_weight_vector(table: RepTable, f: Polynomial) -> bool:
    """True when every Cartan operator acts on ``f`` by a scalar."""
    lead = max(f.terms, key=order_key)
    for h in table.cartan_ops():
        g = apply(h, f)
        if g != f.scale(g.terms.get(lead, 0) / f.terms[lead]):
            return False
    return True


def is_singular(table: RepTable, f: Polynomial) -> bool:
    """K-singular: a Cartan weight vector killed by every K+ operator."""
    if not f:
        raise ValueError("the zero polynomial is not a weight vector")
    return is_weight_vector(table, f) and all(not apply(op, f) for op in table.kplus_ops())


@dataclass(frozen=True)
class SingularVector:
    poly: Polynomial
    label: str
    params: tuple = ()

    @property
    def text(self) -> str:
        return self.poly.to_text()


def _p(cfg: RepConfig, text: str) -> Polynomial:
    return parse_poly(text, cfg.ring)


def singular_catalog(cfg: RepConfig, bound: int = 4) -> list[SingularVector]:
    """Named singular-vector families for ``cfg`` with all parameters in 0..bound.

    Families whose variables do not exist at this (n, n1, n2) are left out.
    """
    n, n1, n2 = cfg.n, cfg.n1, cfg.n2
    rng = range(bound + 1)
    out: list[SingularVector] = []

    def add(label, text, params):
        f = _p(cfg, text)
        if f:
            out.append(SingularVector(f, label, params))

    if cfg.kind is AlgebraKind.EVEN_ORTHOGONAL:
        if cfg.case == 1:
            for a in rng:
                for b in rng:
                    if n2 < n:
                        add("x_{n1}^a y_{n2+1}^b", f"x{n1}^{a}*y{n2 + 1}^{b}", (a, b))
                        add("x_{n1+1}^a y_{n2+1}^b", f"x{n1 + 1}^{a}*y{n2 + 1}^{b}", (a, b))
                    add("x_{n1}^a y_{n2}^b", f"x{n1}^{a}*y{n2}^{b}", (a, b))
        else:
            for a in rng:
                if n1 < n:
                    for b in rng:
                        add("x_{n1}^a y_{n1+1}^b", f"x{n1}^{a}*y{n1 + 1}^{b}", (a, b))
                for m in rng:
                    if n1 >= 2:
                        zeta1 = f"(x{n1 - 1}*y{n1} - x{n1}*y{n1 - 1})"
                        add("x_{n1}^a zeta1^(m+1)", f"x{n1}^{a}*{zeta1}^{m + 1}", (a, m))
                    if n1 + 2 <= n:
                        zeta2 = f"(x{n1 + 1}*y{n1 + 2} - x{n1 + 2}*y{n1 + 1})"
                        add("y_{n1+1}^a zeta2^(m+1)", f"y{n1 + 1}^{a}*{zeta2}^{m + 1}", (a, m))
    elif cfg.kind is AlgebraKind.ODD_ORTHOGONAL:
        for a in rng:
            add("x_{n1}^a", f"x{n1}^{a}", (a,))
            if cfg.case == 1:
                add("x_{n1+1}^a", f"x{n1 + 1}^{a}", (a,))
            else:
                f = twist(cfg, _p(cfg, f"y{n1}^{a}"))
                out.append(SingularVector(f, "T1(y_{n1}^a)", (a,)))
    else:
        for a in rng:
            add("x_{n1}^a", f"x{n1}^{a}", (a,))
            if n1 < n:
                add("x_{n1+1}^(a+1)", f"x{n1 + 1}^{a + 1}", (a,))
            if n1 == n:
                add("y_n^(a+1)", f"y{n}^{a + 1}", (a,))
        if n1 == n2 == n and n >= 2:
            add("x_{n-1}y_n - x_n y_{n-1}", f"x{n - 1}*y{n} - x{n}*y{n - 1}", ())
    return out


def default_seed(cfg: RepConfig, kprime: int, component: int = 0) -> SingularVector:
    """The generator used for the weight-k' module; ``component`` picks the second k'=0 summand."""
    n, n1 = cfg.n, cfg.n1
    kind = cfg.kind
    if component and not (kind is AlgebraKind.SYMPLECTIC and kprime == 0 and cfg.n1 == cfg.n2 == n and n >= 2):
        raise ConfigError("a second component only exists for sp with k'=0 and n1=n2=n")
    if kprime <= 0 and not (kind is AlgebraKind.SYMPLECTIC and kprime == 0):
        f = _p(cfg, f"x{n1}^{-kprime}")
        return SingularVector(f, f.to_text(), (kprime,))
    if kind is AlgebraKind.SYMPLECTIC:
        if kprime == 0:
            if component:
                text = f"x{n - 1}*y{n} - x{n}*y{n - 1}"
                return SingularVector(_p(cfg, text), text, (0, 1))
            return SingularVector(_p(cfg, "1"), "1", (0,))
        text = f"x{n1 + 1}^{kprime}" if n1 < n else f"y{n}^{kprime}"
        return SingularVector(_p(cfg, text), text, (kprime,))
    if cfg.case == 1:
        text = f"x{n1 + 1}^{kprime}"
        return SingularVector(_p(cfg, text), text, (kprime,))
    if kind is AlgebraKind.ODD_ORTHOGONAL:
        f = twist(cfg, _p(cfg, f"y{n1}^{kprime - 1}"))
        return SingularVector(f, f"T1(y{n1}^{kprime - 1})", (kprime,))
    raise ConfigError(f"no catalog generator of positive weight when n1 = n2 ({cfg.describe()})")


def seed_from_text(cfg: RepConfig, text: str) -> SingularVector:
    f = _p(cfg, text)
    if not f:
        raise ConfigError("seed polynomial is zero")
    return SingularVector(f, text)


class SweepCapExceeded(RuntimeError):
    pass


@dataclass
class SeedModule:
    seed: SingularVector
    basis: list = field(default_factory=list)  # Polynomial, in insertion order
    profile: RankProfile | None = None
    sweeps: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def descriptor(self) -> dict:
        return {
            "seed": self.seed.label,
            "seed_poly": self.seed.text,
            "dim": self.dim,
            "sweeps": self.sweeps,
            "pivots": [Polynomial.monomial(self.seed.poly.ring, m).to_text() for m in self.profile.pivots],
        }


def seed_module(table: RepTable, seed: SingularVector, sweep_cap: int = 200,
                require_singular: bool = True) -> SeedModule:
    """Span closure of ``seed`` under the g1 operators."""
    if require_singular and not is_singular(table, seed.poly):
        raise ValueError(f"seed {seed.label} is not K-singular for {table.config.describe()}")
    ops = table.g1_ops()
    red = RowReducer()
    red.insert(seed.poly)
    basis = [seed.poly]
    frontier = [seed.poly]
    sweeps = 0
    while frontier:
        if sweeps >= sweep_cap:
            raise SweepCapExceeded(f"g1 closure of {seed.label} did not stabilize in {sweep_cap} sweeps")
        sweeps += 1
        new = []
        for op in ops:
            for f in frontier:
                g = apply(op, f)
                if g and red.insert(g):
                    new.append(g)
        basis += new
        frontier = new
    return SeedModule(seed, basis, red.profile(), sweeps)
