"""Counting utilities and brute-force span dimensions of degree-2 generator families."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

from .exactpoly import Polynomial, Ring, exact_rank, parse_poly
from .growth import estimate_gk
from .parallel import pmap

FAMILIES = ("Mk", "Tk", "Sk", "Rk", "Uk", "Vk", "Wk", "Zk", "NprimeK")
DEFAULT_PRODUCT_CAP = 200_000


class FamilyError(ValueError):
    """Parameters outside a family's admissible range."""


class BudgetExceeded(RuntimeError):
    pass


def binom(a: int, b: int) -> int:
    if a < 0:
        raise ValueError("binom needs a >= 0")
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


def compositions(total: int, parts: int) -> Iterator[tuple]:
    """Tuples of ``parts`` nonnegative integers summing to ``total``, lexicographically."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for a in range(total + 1):
        for rest in compositions(total - a, parts - 1):
            yield (a,) + rest


def count_compositions(total: int, parts: int) -> int:
    return sum(1 for _ in compositions(total, parts))


@lru_cache(maxsize=None)
def bernoulli(k: int, b1: Fraction = Fraction(-1, 2)) -> Fraction:
    """Bernoulli number B_k; ``b1`` picks the sign convention for B_1."""
    if k == 1:
        return Fraction(b1)
    return _bernoulli_minus(k)


@lru_cache(maxsize=None)
def _bernoulli_minus(m: int) -> Fraction:
    # sum_{j<=m} C(m+1, j) B_j = 0, which yields B_1 = -1/2
    if m == 0:
        return Fraction(1)
    s = sum(Fraction(math.comb(m + 1, j)) * _bernoulli_minus(j) for j in range(m))
    return -s / (m + 1)


def faulhaber_sum(p: int, n: int, b1: Fraction = Fraction(-1, 2)) -> Fraction:
    """sum_{i=0}^n i^p from the Bernoulli closed form in powers of n+1."""
    if p < 1 or n < 0:
        raise ValueError("need p >= 1 and n >= 0")
    N = n + 1
    total = Fraction(N ** (p + 1), p + 1)
    for k in range(1, p + 1):
        total += bernoulli(k, b1) / (p - k + 1) * math.comb(p, k) * N ** (p - k + 1)
    return total


def power_sum(p: int, n: int) -> int:
    return sum(i ** p for i in range(n + 1))


def prop31_formula(n: int, n1: int, k: int) -> int:
    """Closed-form count of the monomial family x_i x_t (i <= n1 < t)."""
    if not 1 <= n1 < n:
        raise FamilyError(f"need 1 <= n1 < n, got n={n}, n1={n1}")
    return binom(n1 + k - 1, k) * binom(n - n1 + k - 1, k)


# -- generator families ---------------------------------------------------

@dataclass(frozen=True)
class GeneratorFamily:
    name: str
    n: int
    n1: int | None
    n2: int | None
    generators: tuple  # Polynomial
    texts: tuple  # source text of each generator

    def __len__(self) -> int:
        return len(self.generators)

    def params(self) -> dict:
        return {"family": self.name, "n": self.n, "n1": self.n1, "n2": self.n2}


def _minor(a: int, b: int) -> str:
    return f"x{a}*y{b} - x{b}*y{a}"


def _hyper(a: int, b: int) -> str:
    return f"x{a}*x{b} - y{a}*y{b}"


def _family_texts(name: str, n: int, n1: int | None, n2: int | None) -> list[str]:
    rng = lambda a, b: range(a, b + 1)
    if name == "Mk":
        _need(n1 is not None and 1 <= n1 < n, name, "1 <= n1 < n")
        return [f"x{i}*x{t}" for i in rng(1, n1) for t in rng(n1 + 1, n)]
    if name == "Tk":
        _need(n >= 2, name, "n >= 2")
        return ([_minor(p, t) for p in rng(2, n) for t in rng(p + 1, n)]
                + [_hyper(1, t) for t in rng(2, n)])
    if name == "Sk":
        _need(n >= 2, name, "n >= 2")
        return ([_minor(i, r) for i in rng(1, n - 1) for r in rng(i + 1, n - 1)]
                + [_hyper(i, n) for i in rng(1, n - 1)])
    if name == "Rk":
        _need(n >= 2, name, "n >= 2")
        return [_minor(i, r) for i in rng(1, n) for r in rng(i + 1, n)]
    if name == "Uk":
        _need(n1 is not None and 1 < n1 < n - 1, name, "1 < n1 < n-1")
        return ([_minor(p, t) for p in rng(n1 + 1, n) for t in rng(p + 1, n)]
                + [_minor(i, r) for i in rng(1, n1) for r in rng(i + 1, n1)]
                + [_hyper(i, t) for i in rng(1, n1) for t in rng(n1 + 1, n)])
    if name == "Vk":
        _need(n1 is not None and 1 < n1 < n - 1, name, "1 < n1 < n-1 (n2 = n-1)")
        s_rng = rng(n1 + 1, n - 1)
        return ([f"x{i}*x{s}" for i in rng(1, n1) for s in s_rng]
                + [f"x{i}*y{s}" for i in rng(1, n1) for s in s_rng]
                + [f"x{s}*y{n}" for s in s_rng]
                + [f"y{s}*y{n}" for s in s_rng]
                + [_hyper(i, n) for i in rng(1, n1)]
                + [_minor(i, r) for i in rng(1, n1) for r in rng(i + 1, n1)])
    if name == "Wk":
        _need(n2 is not None and 1 < n2 < n - 1, name, "1 < n2 < n-1 (n1 = 1)")
        return ([f"x1*x{s}" for s in rng(2, n2)]
                + [f"x1*y{s}" for s in rng(2, n2)]
                + [f"x{s}*y{t}" for s in rng(2, n2) for t in rng(n2 + 1, n)]
                + [f"y{s}*y{t}" for s in rng(2, n2) for t in rng(n2 + 1, n)]
                + [_hyper(1, t) for t in rng(n2 + 1, n)]
                + [_minor(p, t) for p in rng(n2 + 1, n) for t in rng(p + 1, n)])
    if name == "Zk":
        _need(n1 is not None and 1 < n1 < n, name, "1 < n1 < n (n2 = n)")
        return ([f"x{i}*x{s}" for i in rng(1, n1) for s in rng(n1 + 1, n)]
                + [f"x{i}*y{s}" for i in rng(1, n1) for s in rng(n1 + 1, n)]
                + [_minor(i, r) for i in rng(1, n1) for r in rng(i + 1, n1)])
    if name == "NprimeK":
        _need(n1 is not None and n2 is not None and 1 < n1 < n2 < n - 1, name, "1 < n1 < n2 < n-1")
        # index blocks follow the operator table: s in (n1, n2], t and p in (n2, n]
        s_rng, t_rng = rng(n1 + 1, n2), rng(n2 + 1, n)
        return ([f"x{i}*x{s}" for i in rng(1, n1) for s in s_rng]
                + [f"y{s}*y{t}" for s in s_rng for t in t_rng]
                + [f"x{i}*y{s}" for i in rng(1, n1) for s in s_rng]
                + [f"x{s}*y{t}" for s in s_rng for t in t_rng]
                + [_hyper(i, t) for i in rng(1, n1) for t in t_rng]
                + [_minor(i, r) for i in rng(1, n1) for r in rng(i + 1, n1)]
                + [_minor(p, t) for p in t_rng for t in rng(p + 1, n)])
    raise FamilyError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")


def _need(ok: bool, name: str, rule: str) -> None:
    if not ok:
        raise FamilyError(f"{name} needs {rule}")


def build_family(name: str, n: int, n1: int | None = None, n2: int | None = None) -> GeneratorFamily:
    texts = _family_texts(name, n, n1, n2)
    ring = Ring(n)
    gens = tuple(parse_poly(t, ring) for t in texts)
    return GeneratorFamily(name, n, n1, n2, gens, tuple(texts))


def _expand(args) -> list[Polynomial]:
    gens, tuples = args
    ring = gens[0].ring
    powers: dict = {}
    out = []
    for exps in tuples:
        f = Polynomial.const(ring)
        for j, e in enumerate(exps):
            if e:
                key = (j, e)
                if key not in powers:
                    powers[key] = gens[j] ** e
                f = f * powers[key]
        out.append(f)
    return out


def family_products(family: GeneratorFamily, k: int, cap: int = DEFAULT_PRODUCT_CAP,
                    workers: int = 1) -> list[Polynomial]:
    m = len(family.generators)
    count = binom(m + k - 1, k) if m else (1 if k == 0 else 0)
    if count > cap:
        raise BudgetExceeded(f"{family.name}: {count} products at k={k} exceeds cap {cap}")
    tuples = list(compositions(k, m))
    if not tuples:
        return []
    if workers > 1:
        size = math.ceil(len(tuples) / workers)
        chunks = [tuples[i:i + size] for i in range(0, len(tuples), size)]
        return [f for part in pmap(_expand, [(family.generators, c) for c in chunks], workers) for f in part]
    return _expand((family.generators, tuples))


def span_dim_oracle(family: GeneratorFamily, k: int, cap: int = DEFAULT_PRODUCT_CAP,
                    workers: int = 1) -> int:
    """Rank of all products of ``k`` generators (with repetition)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return exact_rank(family_products(family, k, cap, workers)).rank


# -- exponent claims ------------------------------------------------------

def claimed_exponent(name: str, n: int, n1: int | None = None, n2: int | None = None) -> int | None:
    """Growth exponent asserted for the family, or None where no claim is made."""
    if name == "Mk":
        return n - 2
    if name in ("Tk", "Sk", "Rk"):
        return 2 * n - 4 if n in (2, 3) else 2 * n - 3 if n == 4 else 2 * n - 2
    if name == "Uk":
        return 2 * n - 3 if n == 4 else 2 * n - 2 if n >= 5 else None
    if name in ("Vk", "Wk", "NprimeK"):
        return 2 * n - 2
    if name == "Zk":
        return 2 * n - 3 if n1 == 2 else 2 * n - 2
    raise FamilyError(f"unknown family {name!r}")


def family_parameters(name: str, n: int) -> list[tuple]:
    """Every admissible (n1, n2) for the family at this n (None where unused)."""
    if name == "Mk":
        return [(a, None) for a in range(1, n)]
    if name in ("Tk", "Sk", "Rk"):
        return [(None, None)] if n >= 2 else []
    if name in ("Uk", "Vk", "Zk"):
        hi = n - 1 if name == "Zk" else n - 2
        return [(a, None) for a in range(2, hi + 1)]
    if name == "Wk":
        return [(None, b) for b in range(2, n - 1)]
    if name == "NprimeK":
        return [(a, b) for a in range(2, n) for b in range(a + 1, n - 1)]
    raise FamilyError(f"unknown family {name!r}")


@dataclass
class ExponentFit:
    family: str
    params: dict
    series: list
    measured: int | str
    claimed: int | None
    verdict: str  # match / mismatch / no-claim / unstable
    leading: Fraction | None = None
    note: str = ""

    def as_dict(self) -> dict:
        return {**self.params, "series": self.series, "measured_degree": self.measured,
                "claimed_exponent": self.claimed, "verdict": self.verdict,
                "leading_coefficient": None if self.leading is None else str(self.leading),
                "note": self.note}


@dataclass(frozen=True)
class SkipRecord:
    family: str
    n: int
    reason: str


def fit_family_exponent(family: GeneratorFamily, kmax: int = 10, window: int = 3,
                        cap: int = DEFAULT_PRODUCT_CAP, workers: int = 1) -> ExponentFit:
    if kmax < 4:
        raise ValueError("kmax must be at least 4")
    series, note = [], ""
    for k in range(kmax + 1):
        try:
            series.append(span_dim_oracle(family, k, cap, workers))
        except BudgetExceeded as exc:
            note = str(exc)
            break
    est = estimate_gk(series, window)
    claim = claimed_exponent(family.name, family.n, family.n1, family.n2)
    if not est.stable:
        verdict = "unstable"
    elif claim is None:
        verdict = "no-claim"
    else:
        verdict = "match" if est.degree == claim else "mismatch"
    return ExponentFit(family.name, family.params(), series, est.degree, claim, verdict, est.leading, note)


def survey(n: int, kmax: int = 10, names=FAMILIES, window: int = 3,
           cap: int = DEFAULT_PRODUCT_CAP, workers: int = 1) -> tuple[list[ExponentFit], list[SkipRecord]]:
    """Fit every admissible family at ``n``; inadmissible families get a skip record."""
    fits, skips = [], []
    for name in names:
        params = family_parameters(name, n)
        if not params:
            skips.append(SkipRecord(name, n, f"no admissible parameters at n={n}"))
            continue
        for n1, n2 in params:
            fam = build_family(name, n, n1, n2)
            fits.append(fit_family_exponent(fam, kmax, window, cap, workers))
    return fits, skips
