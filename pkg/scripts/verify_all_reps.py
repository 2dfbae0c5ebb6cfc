"""Check the bracket relations for every admissible (n1, n2) of each algebra up to a given n."""

import argparse
import sys
import time

from oscgk.liealg import AlgebraKind, admissible, build_rep, check_homomorphism


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args(argv)

    failures = 0
    for kind in AlgebraKind:
        for n in range(1, args.max_n + 1):
            for cfg in admissible(kind, n):
                t0 = time.perf_counter()
                table = build_rep(cfg)
                bad = check_homomorphism(table, workers=args.workers)
                failures += bool(bad)
                status = "ok" if not bad else f"{len(bad)} violations, first: {bad[0].describe(table.algebra)}"
                print(f"{cfg.describe():18s} dim={table.algebra.dim:3d}  {status}  ({time.perf_counter() - t0:.1f}s)")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
