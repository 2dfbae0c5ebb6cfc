"""Command-line driver: verify-rep, gk, oracle, harmonic, calibrate.

Every artifact embeds the experiment config and the engine version and
contains nothing run-dependent (no timestamps, no worker counts), so two runs
with the same config produce identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import ENGINE
from .combinatorics import (FAMILIES, BudgetExceeded, FamilyError, build_family,
                            fit_family_exponent, prop31_formula)
from .growth import Budget, StopRule, calibrate, estimate_gk, filtration_series
from .liealg import AlgebraKind, ConfigError, RepConfig, build_rep, check_homomorphism
from .modules import (SweepCapExceeded, default_seed, harmonic_basis, is_harmonic,
                      is_singular, seed_from_text, seed_module, singular_catalog)

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_CONFIG = 0, 1, 2, 3


@dataclass
class ExperimentConfig:
    algebra: str = "o-even"
    n: int = 2
    n1: int = 1
    n2: int = 1
    kprime: int = -1
    seed: str | None = None
    component: int = 0
    K: int = 14
    N: int = 6
    window: int = 3
    margin: int = 1
    early_stop: bool = True
    expect: int | None = None
    family: str = "Rk"
    kmax: int = 10
    bound: int = 4
    c: int = 2
    mutate: bool = False
    max_rows: int | None = 60_000
    max_images: int | None = 2_000_000
    product_cap: int = 200_000

    def rep_config(self) -> RepConfig:
        try:
            return RepConfig(AlgebraKind(self.algebra), self.n, self.n1, self.n2)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc

    def budget(self) -> Budget:
        return Budget.from_env(Budget(self.max_rows, self.max_images, None))


# fields echoed into each subcommand's artifacts
ECHO = {
    "verify-rep": ("algebra", "n", "n1", "n2", "mutate"),
    "gk": ("algebra", "n", "n1", "n2", "kprime", "seed", "component", "K", "window", "margin",
           "early_stop", "max_rows", "max_images"),
    "oracle": ("family", "n", "n1", "n2", "kmax", "window", "product_cap"),
    "harmonic": ("algebra", "n", "n1", "n2", "kprime", "N", "bound"),
    "calibrate": ("c", "K", "window"),
}


def _echo(cfg: ExperimentConfig, command: str) -> dict:
    d = dataclasses.asdict(cfg)
    return {"command": command, **{k: d[k] for k in ECHO[command]}}


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _csv_text(header: list, rows: list, meta: dict) -> str:
    buf = io.StringIO()
    buf.write(f"# engine: {ENGINE}\n")
    buf.write(f"# config: {json.dumps(meta, sort_keys=True)}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


class Output:
    """Collects named artifacts; writes them when an output directory is set."""

    def __init__(self, out_dir: str | None):
        self.dir = Path(out_dir) if out_dir else None
        self.files: dict[str, str] = {}

    def put(self, name: str, text: str) -> None:
        self.files[name] = text
        if self.dir is not None:
            self.dir.mkdir(parents=True, exist_ok=True)
            (self.dir / name).write_text(text)


# -- subcommands -----------------------------------------------------------

def cmd_verify_rep(cfg: ExperimentConfig, out: Output, workers: int = 1) -> int:
    rc = cfg.rep_config()
    table = build_rep(rc)
    if cfg.mutate:
        target = table.algebra.parabolic_minus[0]
        table = table.mutated(target)
        print(f"mutated: sign of {table.algebra.label(target)} flipped")
    violations = check_homomorphism(table, workers)
    alg = table.algebra
    report = {
        "engine": ENGINE,
        "config": _echo(cfg, "verify-rep"),
        "algebra_dim": alg.dim,
        "pairs_checked": alg.dim ** 2,
        "status": "PASS" if not violations else "FAIL",
        "violations": [{"a": alg.label(v.a), "b": alg.label(v.b),
                        "bracket_of_images": v.lhs.to_text(), "image_of_bracket": v.rhs.to_text()}
                       for v in violations],
    }
    out.put("verify.json", _dump_json(report))
    out.put("rep_table.txt", f"# engine: {ENGINE}\n# {rc.describe()}\n" + table.dump())
    print(f"{rc.describe()}: {alg.dim ** 2} pairs, {len(violations)} violations -> {report['status']}")
    for v in violations[:20]:
        print("  " + v.describe(alg))
    return EXIT_OK if not violations else EXIT_FAIL


def run_gk(cfg: ExperimentConfig, workers: int = 1) -> dict:
    rc = cfg.rep_config()
    table = build_rep(rc)
    if cfg.seed:
        seed = seed_from_text(rc, cfg.seed)
    else:
        seed = default_seed(rc, cfg.kprime, cfg.component)
    if not is_singular(table, seed.poly):
        raise ConfigError(f"seed {seed.label} is not K-singular for {rc.describe()}")
    m0 = seed_module(table, seed)
    stop = StopRule(cfg.window, cfg.margin) if cfg.early_stop else None
    series = filtration_series(table, m0, cfg.K, cfg.budget(), stop, workers)
    est = estimate_gk(series, cfg.window)
    return {"table": table, "m0": m0, "series": series, "estimate": est}


def cmd_gk(cfg: ExperimentConfig, out: Output, workers: int = 1) -> int:
    res = run_gk(cfg, workers)
    series, est, m0 = res["series"], res["estimate"], res["m0"]
    meta = _echo(cfg, "gk")
    rc = cfg.rep_config()
    label = f"component of B<{cfg.kprime}>" if rc.kind is AlgebraKind.SYMPLECTIC else f"H<{cfg.kprime}>"
    out.put("gk_series.csv", _csv_text(["k", "phi", "diff1", "diff2", "diff3", "diff4", "diff5"],
                                       series.rows(5), meta))
    doc = {
        "engine": ENGINE,
        "config": meta,
        "module": label,
        "seed_module": m0.descriptor(),
        "phi": series.phi,
        "truncated": series.truncated,
        "stop_reason": series.reason,
        "estimate": est.as_dict(),
    }
    status = EXIT_OK
    if cfg.expect is not None:
        doc["expected_degree"] = cfg.expect
        doc["verdict"] = "match" if est.degree == cfg.expect else "mismatch"
        if est.stable and est.degree != cfg.expect:
            status = EXIT_FAIL
    out.put("gk_estimate.json", _dump_json(doc))
    print(f"{rc.describe()} k'={cfg.kprime} seed={m0.seed.label} dim M0={m0.dim}")
    print(f"phi = {series.phi}  ({series.reason})")
    print(f"GK degree = {est.degree}" + (f", leading coefficient {est.leading}" if est.stable else ""))
    if not est.stable:
        return EXIT_BUDGET
    return status


def cmd_oracle(cfg: ExperimentConfig, out: Output, workers: int = 1) -> int:
    fam = build_family(cfg.family, cfg.n, cfg.n1 if cfg.family in ("Mk", "Uk", "Vk", "Zk", "NprimeK") else None,
                       cfg.n2 if cfg.family in ("Wk", "NprimeK") else None)
    fit = fit_family_exponent(fam, cfg.kmax, cfg.window, cfg.product_cap, workers)
    rows = []
    for k, d in enumerate(fit.series):
        row = [k, d, "" if fit.claimed is None else fit.claimed, fit.measured, fit.verdict]
        if fam.name == "Mk":
            row.append(prop31_formula(fam.n, fam.n1, k))
        rows.append(row)
    header = ["k", "d_k", "claimed_exponent", "measured_degree", "verdict"]
    if fam.name == "Mk":
        header.append("closed_form")
    meta = {**_echo(cfg, "oracle"), "n1": fam.n1, "n2": fam.n2}
    out.put(f"oracle_{fam.name}.csv", _csv_text(header, rows, meta))
    out.put(f"oracle_{fam.name}.json", _dump_json({"engine": ENGINE, "config": meta, **fit.as_dict(),
                                                    "generators": list(fam.texts)}))
    print(f"{fam.name} n={fam.n} n1={fam.n1} n2={fam.n2}: d_k = {fit.series}")
    print(f"measured degree {fit.measured}, claimed {fit.claimed}: {fit.verdict}")
    if fit.note:
        print(f"note: {fit.note}")
    if fit.verdict == "unstable":
        return EXIT_BUDGET
    if fit.verdict == "mismatch":
        return EXIT_FAIL
    if fam.name == "Mk" and any(d != prop31_formula(fam.n, fam.n1, k) for k, d in enumerate(fit.series)):
        return EXIT_FAIL
    return EXIT_OK


def cmd_harmonic(cfg: ExperimentConfig, out: Output, workers: int = 1) -> int:
    rc = cfg.rep_config()
    if rc.kind is AlgebraKind.SYMPLECTIC:
        raise ConfigError("harmonic: sp(2n) has no Laplace kernel condition; its graded slices are the modules")
    table = build_rep(rc)
    basis = harmonic_basis(rc, cfg.kprime, cfg.N)
    audit = []
    for sv in singular_catalog(rc, cfg.bound):
        audit.append({"family": sv.label, "params": list(sv.params), "poly": sv.text,
                      "singular": is_singular(table, sv.poly), "harmonic": is_harmonic(rc, sv.poly)})
    ok = all(a["singular"] and a["harmonic"] for a in audit)
    doc = {"engine": ENGINE, "config": _echo(cfg, "harmonic"),
           "basis": [f.to_text() for f in basis], "catalog": audit,
           "catalog_status": "PASS" if ok else "FAIL"}
    out.put("harmonic.json", _dump_json(doc))
    print(f"{rc.describe()} k'={cfg.kprime} N={cfg.N}: harmonic basis of size {len(basis)}")
    for f in basis[:12]:
        print("  " + f.to_text())
    if len(basis) > 12:
        print(f"  ... ({len(basis) - 12} more)")
    print(f"catalog: {sum(a['singular'] and a['harmonic'] for a in audit)}/{len(audit)} entries pass -> "
          f"{doc['catalog_status']}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_calibrate(cfg: ExperimentConfig, out: Output, workers: int = 1) -> int:
    from .combinatorics import binom

    series = calibrate(cfg.c, cfg.K, workers)
    est = estimate_gk(series, cfg.window)
    expected = [binom(cfg.c + k, k) for k in range(cfg.K + 1)]
    ok = series.phi == expected and est.degree == cfg.c
    meta = _echo(cfg, "calibrate")
    out.put("calibrate.csv", _csv_text(["k", "phi", "binom(c+k,k)"],
                                       [[k, p, e] for k, (p, e) in enumerate(zip(series.phi, expected))], meta))
    out.put("calibrate.json", _dump_json({"engine": ENGINE, "config": meta, "phi": series.phi,
                                          "estimate": est.as_dict(), "status": "PASS" if ok else "FAIL"}))
    print(f"polynomial ring in {cfg.c} variables: phi = {series.phi}, degree {est.degree} -> "
          f"{'PASS' if ok else 'FAIL'}")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "verify-rep": cmd_verify_rep,
    "gk": cmd_gk,
    "oracle": cmd_oracle,
    "harmonic": cmd_harmonic,
    "calibrate": cmd_calibrate,
}


# -- argument handling ----------------------------------------------------

def _opt_int(text: str) -> int | None:
    return None if text.lower() == "none" else int(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="oscgk", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file with ExperimentConfig fields; flags override it")
    common.add_argument("--out-dir", help="write CSV/JSON artifacts here")
    common.add_argument("--workers", type=int, default=1, help="process-level parallelism")
    rep = argparse.ArgumentParser(add_help=False)
    rep.add_argument("--algebra", choices=[k.value for k in AlgebraKind])
    rep.add_argument("--n", type=int)
    rep.add_argument("--n1", type=int)
    rep.add_argument("--n2", type=int)

    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("verify-rep", parents=[common, rep], help="check the bracket relations exactly")
    s.add_argument("--mutate", action="store_const", const=True, help="flip one operator's sign (self-test)")

    s = sub.add_parser("gk", parents=[common, rep], help="growth series and GK degree of one module")
    s.add_argument("--kprime", type=int)
    s.add_argument("--seed", help="seed polynomial, e.g. 'x1^2' (default: catalog generator)")
    s.add_argument("--component", type=int, help="1 selects the second k'=0 summand (sp, n1=n2=n)")
    s.add_argument("--K", type=int, help="filtration horizon")
    s.add_argument("--window", type=int)
    s.add_argument("--margin", type=int, help="extra zero differences before stopping early")
    s.add_argument("--no-early-stop", dest="early_stop", action="store_const", const=False)
    s.add_argument("--expect", type=int, help="expected degree; mismatch exits 1")
    s.add_argument("--max-rows", type=_opt_int)
    s.add_argument("--max-images", type=_opt_int)

    s = sub.add_parser("oracle", parents=[common], help="span dimensions of a generator family")
    s.add_argument("--family", choices=FAMILIES)
    s.add_argument("--n", type=int)
    s.add_argument("--n1", type=int)
    s.add_argument("--n2", type=int)
    s.add_argument("--kmax", type=int)
    s.add_argument("--window", type=int)
    s.add_argument("--product-cap", type=int)

    s = sub.add_parser("harmonic", parents=[common, rep], help="harmonic basis and singular-vector audit")
    s.add_argument("--kprime", type=int)
    s.add_argument("--N", type=int, help="degree cap")
    s.add_argument("--bound", type=int, help="largest catalog parameter")

    s = sub.add_parser("calibrate", parents=[common], help="growth of a free polynomial ring")
    s.add_argument("--c", type=int, help="number of variables")
    s.add_argument("--K", type=int)
    s.add_argument("--window", type=int)
    return p


def resolve_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        try:
            values.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {args.config}: {exc}") from exc
    names = {f.name for f in dataclasses.fields(ExperimentConfig)}
    unknown = set(values) - names
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    for name in names:
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.command in ("verify-rep", "gk", "harmonic"):
            cfg.rep_config()
        return COMMANDS[args.command](cfg, Output(args.out_dir), args.workers)
    except (ConfigError, FamilyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (BudgetExceeded, SweepCapExceeded) as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
