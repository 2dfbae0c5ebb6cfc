"""PBW-filtration growth: phi(k) = dim U_k(g2) M0 and its eventual polynomial degree."""

from __future__ import annotations

import itertools
import math
import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactpoly import Polynomial, Ring, RowReducer, exact_rank
from .liealg import RepTable
from .modules import SeedModule
from .parallel import pmap
from .weylalg import DiffOp, apply


@dataclass(frozen=True)
class Budget:
    """Resource limits for one series; ``None`` means unlimited.

    Only ``max_seconds`` depends on the machine, so leave it unset when
    byte-identical output matters.
    """

    max_rows: int | None = 60_000
    max_images: int | None = 2_000_000
    max_seconds: float | None = None

    @classmethod
    def from_env(cls, base: "Budget | None" = None) -> "Budget":
        """Override fields from OSCGK_MAX_ROWS / OSCGK_MAX_IMAGES / OSCGK_MAX_SECONDS."""
        base = base or cls()
        vals = {}
        for name, conv in (("max_rows", int), ("max_images", int), ("max_seconds", float)):
            raw = os.environ.get("OSCGK_" + name.upper())
            if raw:
                vals[name] = None if raw.lower() == "none" else conv(raw)
        return cls(**{**base.__dict__, **vals})


@dataclass(frozen=True)
class StopRule:
    """Stop early once the degree estimate has held for ``window + margin`` zero differences."""

    window: int = 3
    margin: int = 1


@dataclass
class FiltrationSeries:
    phi: list
    config: dict = field(default_factory=dict)
    seed: str = ""
    truncated: bool = False
    reason: str = ""

    def diffs(self, order: int) -> list[int]:
        seq = list(self.phi)
        for _ in range(order):
            seq = [b - a for a, b in zip(seq, seq[1:])]
        return seq

    def rows(self, max_order: int = 5) -> list[list]:
        """Table rows ``k, phi, diff1..diffN`` (blank where undefined)."""
        cols = [self.diffs(j) for j in range(1, max_order + 1)]
        out = []
        for k, v in enumerate(self.phi):
            row = [k, v]
            for j, col in enumerate(cols, start=1):
                row.append(col[k - j] if k - j >= 0 and k - j < len(col) else "")
            out.append(row)
        return out


@dataclass(frozen=True)
class GrowthEstimate:
    degree: int | str  # "unstable" when no degree is certified
    window: int
    leading: Fraction | None = None

    @property
    def stable(self) -> bool:
        return self.degree != "unstable"

    def as_dict(self) -> dict:
        lead = None if self.leading is None else str(self.leading)
        bernstein = None
        if self.leading is not None:
            bernstein = str(self.leading * math.factorial(self.degree))
        return {"degree": self.degree, "window": self.window, "leading_coefficient": lead,
                "bernstein_degree": bernstein}


def _differences(seq: Sequence[int], order: int) -> list[int]:
    seq = list(seq)
    for _ in range(order):
        seq = [b - a for a, b in zip(seq, seq[1:])]
    return seq


def estimate_gk(series: FiltrationSeries | Sequence[int], window: int = 3) -> GrowthEstimate:
    """Smallest d with zero (d+1)-th differences and positive d-th differences on the tail."""
    phi = list(series.phi if isinstance(series, FiltrationSeries) else series)
    for d in range(len(phi)):
        nxt = _differences(phi, d + 1)
        if len(nxt) < window:
            break
        if any(nxt[-window:]):
            continue
        cur = _differences(phi, d)
        if cur[-1] > 0:
            return GrowthEstimate(d, window, Fraction(cur[-1], math.factorial(d)))
    return GrowthEstimate("unstable", window)


def _stable_with_margin(phi: list, rule: StopRule) -> bool:
    est = estimate_gk(phi, rule.window + rule.margin)
    return est.stable


def _apply_block(args) -> list:
    ops, chunk = args
    return [[apply(op, f) for f in chunk] for op in ops]


def grow(ops: Sequence[DiffOp], start: Sequence[Polynomial], K: int, budget: Budget | None = None,
         stop: StopRule | None = None, workers: int = 1) -> tuple[list[int], bool, str]:
    """phi(0..K) for the span filtration generated by ``ops`` from ``start``.

    Each step applies every operator to the vectors that raised the rank in
    the previous step, inserting images in (operator, frontier) order.
    Returns ``(phi, truncated, reason)``.
    """
    budget = budget or Budget()
    t0 = time.monotonic()
    red = RowReducer()
    frontier = [f for f in start if red.insert(f)]
    phi = [red.rank]
    images = 0
    for _ in range(K):
        if stop is not None and _stable_with_margin(phi, stop):
            return phi, False, "stable"
        if workers > 1 and len(frontier) > 1:
            size = math.ceil(len(frontier) / workers)
            chunks = [frontier[i:i + size] for i in range(0, len(frontier), size)]
            parts = pmap(_apply_block, [(list(ops), c) for c in chunks], workers)
            per_op = [[g for part in parts for g in part[j]] for j in range(len(ops))]
        else:
            per_op = _apply_block((ops, frontier))
        new = []
        for imgs in per_op:
            for g in imgs:
                images += 1
                if g and red.insert(g):
                    new.append(g)
                if budget.max_rows is not None and red.rank > budget.max_rows:
                    return phi, True, f"row budget {budget.max_rows} exceeded at k={len(phi)}"
        if budget.max_images is not None and images > budget.max_images:
            return phi, True, f"image budget {budget.max_images} exceeded at k={len(phi)}"
        phi.append(red.rank)
        frontier = new
        if budget.max_seconds is not None and time.monotonic() - t0 > budget.max_seconds:
            return phi, True, f"time budget {budget.max_seconds}s exceeded at k={len(phi) - 1}"
    return phi, False, "horizon"


def filtration_series(table: RepTable, m0: SeedModule, K: int = 14, budget: Budget | None = None,
                      stop: StopRule | None = None, workers: int = 1) -> FiltrationSeries:
    phi, truncated, reason = grow(table.g2_ops(), m0.basis, K, budget, stop, workers)
    return FiltrationSeries(phi, table.config.as_dict(), m0.seed.label, truncated, reason)


def word_series(ops: Sequence[DiffOp], start: Sequence[Polynomial], K: int) -> list[int]:
    """Brute-force phi(k): rank of every word of length <= k applied to ``start``."""
    phi = []
    for k in range(K + 1):
        rows = list(start)
        for length in range(1, k + 1):
            for word in itertools.product(ops, repeat=length):
                for f in start:
                    g = f
                    for op in reversed(word):
                        g = apply(op, g)
                    rows.append(g)
        phi.append(exact_rank(rows).rank)
    return phi


def polynomial_ring_ops(c: int) -> tuple[Ring, list[DiffOp]]:
    """Multiplication by x1..xc on C[x1..xc] (written in the ring with n = c, y's unused)."""
    ring = Ring(c)
    return ring, [DiffOp.mul(ring, "x", i) for i in range(1, c + 1)]


def calibrate(c: int, K: int = 10, workers: int = 1) -> FiltrationSeries:
    """Growth of the free polynomial ring in ``c`` variables from the seed 1."""
    ring, ops = polynomial_ring_ops(c)
    phi, truncated, reason = grow(ops, [Polynomial.const(ring)], K, Budget(None, None, None), workers=workers)
    return FiltrationSeries(phi, {"calibration": "polynomial-ring", "c": c}, "1", truncated, reason)
