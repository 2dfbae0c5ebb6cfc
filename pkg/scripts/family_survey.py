"""Span-dimension exponents of every generator family at the requested n."""

import argparse
import sys

from oscgk.combinatorics import FAMILIES, survey


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--families", nargs="+", choices=FAMILIES, default=list(FAMILIES))
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    clean = True
    for n in args.n:
        fits, skips = survey(n, args.kmax, args.families, workers=args.workers)
        for f in fits:
            params = ", ".join(f"{k}={v}" for k, v in f.params.items() if v is not None and k != "family")
            print(f"{f.family:8s} {params:16s} measured={f.measured} claimed={f.claimed} {f.verdict:9s} "
                  f"d_k={f.series}{'  ' + f.note if f.note else ''}")
            clean &= f.verdict in ("match", "no-claim")
        for s in skips:
            print(f"{s.family:8s} n={s.n:<14d} skipped: {s.reason}")
    return 0 if clean else 1


if __name__ == "__main__":
    sys.exit(main())
