"""Measure GK degrees across every admissible (n1, n2, k') and compare with the closed-form claims.

    python3 scripts/gk_sweep.py --algebra o-odd --n 2 3
    python3 scripts/gk_sweep.py --algebra sp --n 2 --kprimes -2 -1 0 1 2 --csv sp.csv
"""

import argparse
import csv
import sys

from oscgk.growth import Budget, StopRule, estimate_gk, filtration_series
from oscgk.liealg import AlgebraKind, ConfigError, admissible, build_rep
from oscgk.modules import default_seed, seed_module


def claim_even(n, n1, n2):
    if n1 == n2:
        return 2 * n - 3 if n in (2, 3) else 2 * n - 2 if n == 4 else 2 * n - 1
    if (n1 == 1 and n2 < n - 1) or (n1 >= 3 and n2 == n) or (1 < n1 and n2 <= n - 1):
        return 2 * n - 1
    return 2 * n - 2  # 1 = n1 < n2 in {n-1, n}, or 2 = n1 < n2 = n


def claim_odd(n, n1, n2):
    if n1 == n2:
        if n >= 5 or (n1 == n == 3) or (n1 > 1 and n == 4):
            return 2 * n
        if n1 == 1 and n in (2, 3):
            return 2 * n - 2
        return 2 * n - 1
    if (n2 < n - 1) or (n1 >= 3 and n2 == n) or (n1 > 1 and n2 == n - 1):
        return 2 * n
    return 2 * n - 1


def claim(kind, n, n1, n2):
    if kind is AlgebraKind.SYMPLECTIC:
        return 2 * n - 1
    return (claim_even if kind is AlgebraKind.EVEN_ORTHOGONAL else claim_odd)(n, n1, n2)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", choices=[k.value for k in AlgebraKind], default="o-even")
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--kprimes", type=int, nargs="+", default=[-2, -1, 0])
    ap.add_argument("--K", type=int, default=14)
    ap.add_argument("--window", type=int, default=3)
    ap.add_argument("--max-rows", type=int, default=60_000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--csv")
    args = ap.parse_args(argv)

    kind = AlgebraKind(args.algebra)
    budget = Budget.from_env(Budget(max_rows=args.max_rows))
    rows = []
    for n in args.n:
        for cfg in admissible(kind, n):
            table = build_rep(cfg)
            components = [0, 1] if kind is AlgebraKind.SYMPLECTIC and cfg.n1 == cfg.n2 == n > 1 else [0]
            for kp in args.kprimes:
                for comp in components if kp == 0 else [0]:
                    try:
                        seed = default_seed(cfg, kp, comp)
                    except ConfigError as exc:
                        print(f"{cfg.describe():18s} k'={kp:+d}  skipped: {exc}")
                        continue
                    m0 = seed_module(table, seed)
                    s = filtration_series(table, m0, args.K, budget, StopRule(args.window), args.workers)
                    est = estimate_gk(s, args.window)
                    want = claim(kind, n, cfg.n1, cfg.n2)
                    verdict = "match" if est.degree == want else "MISMATCH"
                    if s.truncated:
                        verdict += " (truncated)"
                    rows.append([cfg.describe(), kp, seed.label, m0.dim, est.degree, want, verdict,
                                 " ".join(map(str, s.phi))])
                    print(f"{cfg.describe():18s} k'={kp:+d} seed={seed.label:24s} dim M0={m0.dim:3d} "
                          f"degree={est.degree} claim={want}  {verdict}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["config", "kprime", "seed", "dim_m0", "degree", "claim", "verdict", "phi"])
            w.writerows(rows)
    return 0 if all(r[6] == "match" for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
