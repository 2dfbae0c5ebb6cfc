"""End-to-end acceptance checks, one per numbered criterion.

Each ``crit_N(workers)`` returns ``(passed, artifact)`` where ``artifact`` is a
canonical JSON text of everything the criterion computed; criterion 10 compares
those texts between one and eight workers. Run this file directly for a plain
pass/fail listing.
"""

from __future__ import annotations

import functools
import json
import random
import sys
from fractions import Fraction

import pytest

from oscgk.combinatorics import build_family, prop31_formula, span_dim_oracle, survey
from oscgk.exactpoly import Polynomial
from oscgk.growth import StopRule, calibrate, estimate_gk, filtration_series
from oscgk.combinatorics import binom
from oscgk.liealg import AlgebraKind, RepConfig, admissible, build_rep, check_homomorphism
from oscgk.modules import (default_seed, harmonic_basis, is_harmonic, is_singular, seed_module,
                           singular_catalog)
from oscgk.weylalg import apply

WORKERS_PARALLEL = 8
K, WINDOW = 14, 3
EVEN, ODD, SP = AlgebraKind.EVEN_ORTHOGONAL, AlgebraKind.ODD_ORTHOGONAL, AlgebraKind.SYMPLECTIC


def _dump(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, default=str)


def measure(cfg: RepConfig, kprime: int, component: int = 0, workers: int = 1) -> dict:
    table = build_rep(cfg)
    m0 = seed_module(table, default_seed(cfg, kprime, component))
    series = filtration_series(table, m0, K=K, stop=StopRule(WINDOW, 1), workers=workers)
    est = estimate_gk(series, WINDOW)
    return {"config": cfg.describe(), "kprime": kprime, "component": component, "seed": m0.seed.label,
            "dim_m0": m0.dim, "phi": series.phi, "truncated": series.truncated, "degree": est.degree}


def _degree_rows(cases, workers):
    rows, ok = [], True
    for cfg, kprime, component, claim in cases:
        r = measure(cfg, kprime, component, workers)
        r["claim"] = claim
        r["ok"] = r["degree"] == claim
        ok &= r["ok"]
        rows.append(r)
    return ok, rows


# -- 1: every bracket relation holds ------------------------------------------

def crit_1(workers: int):
    rows = []
    for kind, n in [(EVEN, 2), (EVEN, 3), (ODD, 2), (ODD, 3), (SP, 2), (SP, 3)]:
        for cfg in admissible(kind, n):
            bad = check_homomorphism(build_rep(cfg), workers=workers)
            rows.append({"config": cfg.describe(), "violations": len(bad)})
    return all(r["violations"] == 0 for r in rows), _dump(rows)


# -- 2: the singular-vector catalog -------------------------------------------

def crit_2(workers: int):
    rows = []
    for kind in (EVEN, ODD, SP):
        for n in (2, 3):
            for cfg in admissible(kind, n):
                table = build_rep(cfg)
                for sv in singular_catalog(cfg, bound=4):
                    rows.append({"config": cfg.describe(), "label": sv.label, "params": list(sv.params),
                                 "singular": is_singular(table, sv.poly)})
    return bool(rows) and all(r["singular"] for r in rows), _dump(rows)


# -- 3: harmonic spaces are invariant -----------------------------------------

def crit_3(workers: int):
    rng = random.Random(20240601)
    rows = []
    for n in (2, 3):
        for cfg in admissible(EVEN, n):
            table = build_rep(cfg)
            ops = [table.ops[b] for b in table.algebra.basis]
            for kprime in (-2, -1, 0, 1):
                basis = harmonic_basis(cfg, kprime, 6)
                if not basis:
                    continue
                for trial in range(5):
                    f = Polynomial(cfg.ring)
                    for b in basis:
                        f = f + b.scale(Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
                    if not f:
                        f = basis[0]
                    good = all(is_harmonic(cfg, apply(op, f)) for op in ops)
                    rows.append({"config": cfg.describe(), "kprime": kprime, "trial": trial,
                                 "dim": len(basis), "invariant": good})
    return all(r["invariant"] for r in rows), _dump(rows)


# -- 4: GK degrees for o(4) and o(6) -------------------------------------------

def crit_4_cases():
    claims = {(2, 1, 1): 1, (2, 2, 2): 1, (2, 1, 2): 2,
              (3, 1, 1): 3, (3, 2, 2): 3, (3, 3, 3): 3, (3, 1, 2): 4, (3, 1, 3): 4, (3, 2, 3): 4}
    return [(RepConfig(EVEN, n, n1, n2), kp, 0, d) for (n, n1, n2), d in claims.items() for kp in (-2, -1, 0)]


def crit_4(workers: int):
    ok, rows = _degree_rows(crit_4_cases(), workers)
    return ok, _dump(rows)


# -- 5: GK degrees for sp(4) and sp(6) -----------------------------------------

def crit_5_cases():
    cases = []
    for n in (2, 3):
        for cfg in admissible(SP, n):
            for kp in (-2, -1, 0, 1, 2):
                cases.append((cfg, kp, 0, 2 * n - 1))
            if cfg.n1 == cfg.n2 == n:
                cases.append((cfg, 0, 1, 2 * n - 1))
    return cases


def crit_5(workers: int):
    ok, rows = _degree_rows(crit_5_cases(), workers)
    return ok, _dump(rows)


# -- 6: GK degrees for o(5) ----------------------------------------------------

def crit_6_cases():
    claims = {(1, 1): 2, (1, 2): 3, (2, 2): 3}
    return [(RepConfig(ODD, 2, n1, n2), kp, 0, d) for (n1, n2), d in claims.items() for kp in (-2, -1, 0)]


def crit_6(workers: int):
    ok, rows = _degree_rows(crit_6_cases(), workers)
    return ok, _dump(rows)


# -- 7: closed form for the monomial family ------------------------------------

def crit_7(workers: int):
    rows = []
    for n in range(2, 6):
        fams = {n1: build_family("Mk", n, n1) for n1 in range(1, n)}
        for n1, fam in fams.items():
            for k in range(7):
                got = span_dim_oracle(fam, k, workers=workers)
                rows.append({"n": n, "n1": n1, "k": k, "oracle": got, "formula": prop31_formula(n, n1, k)})
    return all(r["oracle"] == r["formula"] for r in rows), _dump(rows)


# -- 8: family exponents at n = 2, 3 -------------------------------------------

def crit_8(workers: int):
    out, ok = {}, True
    for n in (2, 3):
        fits, skips = survey(n, kmax=10, workers=workers)
        ok &= bool(fits) and all(f.verdict == "match" for f in fits)
        out[n] = {"fits": [f.as_dict() | {"family": f.family} for f in fits],
                  "skips": [s.__dict__ for s in skips]}
    return ok, _dump(out)


# -- 9: polynomial-ring calibration --------------------------------------------

def crit_9(workers: int):
    rows = []
    for c in range(1, 5):
        s = calibrate(c, K=10, workers=workers)
        rows.append({"c": c, "phi": s.phi, "degree": estimate_gk(s, WINDOW).degree,
                     "exact": s.phi == [binom(c + k, k) for k in range(11)]})
    return all(r["exact"] and r["degree"] == r["c"] for r in rows), _dump(rows)


CRITERIA = {1: crit_1, 2: crit_2, 3: crit_3, 4: crit_4, 5: crit_5, 6: crit_6, 7: crit_7, 8: crit_8, 9: crit_9}
TITLES = {
    1: "representation is a homomorphism (o(4), o(6), o(5), o(7), sp(4), sp(6))",
    2: "catalog vectors are singular (n <= 3, parameters <= 4)",
    3: "harmonic spaces are invariant (o(4), o(6), N = 6)",
    4: "o(4)/o(6) GK degrees",
    5: "sp(4)/sp(6) GK degree 2n-1",
    6: "o(5) GK degrees",
    7: "monomial family closed form (n <= 5, k <= 6)",
    8: "family exponents at n = 2, 3",
    9: "polynomial-ring calibration (c <= 4)",
    10: "identical artifacts with 1 and 8 workers",
}


@functools.lru_cache(maxsize=None)
def run(number: int, workers: int):
    return CRITERIA[number](workers)


def crit_10():
    same = {i: run(i, 1)[1] == run(i, WORKERS_PARALLEL)[1] for i in CRITERIA}
    return all(same.values()), _dump(same)


def _failures(artifact: str) -> list:
    data = json.loads(artifact)
    if isinstance(data, list):
        return [r for r in data if isinstance(r, dict) and r.get("ok") is False]
    return []


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_results):
    passed, artifact = run(number, 1)
    acceptance_results[number] = (passed, TITLES[number])
    assert passed, f"criterion {number} failed: {_failures(artifact)}"


def test_criterion_10_determinism(acceptance_results):
    passed, artifact = crit_10()
    acceptance_results[10] = (passed, TITLES[10])
    assert passed, artifact


if __name__ == "__main__":
    results = {i: run(i, 1)[0] for i in CRITERIA}
    results[10] = crit_10()[0]
    for i, ok in results.items():
        print(f"criterion {i:2d}: {'PASS' if ok else 'FAIL'}  {TITLES[i]}")
    sys.exit(0 if all(results.values()) else 1)
