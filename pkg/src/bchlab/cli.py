"""Command-line front end.

Commands: code-search, code-info, checks, sim-hard, sim-soft, plan-flips,
rm-verify.  Every command that writes an output file also writes a
<output>.manifest.json recording the full configuration, seed, code hash,
and wall time.  Exit codes: 0 success, 2 configuration error, 3 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

import numpy as np

from . import __version__
from .codes import (
    BchCode,
    bch_from_cosets,
    code_spec_hash,
    coset_selections,
    cyclotomic_cosets,
    designed_distance,
    dual_code,
    load_code_spec,
)
from .errors import BchLabError, ConfigError
from .gf2 import BinaryField, poly_degree
from .harness import (
    HardDecoderConfig,
    SoftDecoderConfig,
    run_hard_campaign,
    run_soft_campaign,
    write_campaign_csv,
)
from .hard import FlipPlan, flip_plan_by_weight
from .rm import (
    verify_generator_roots,
    verify_rm_equivalence,
    verify_rmstar_cyclic,
)
from .soft import plan_flips, simulate_error_ranks
from .wsearch import (
    DEFAULT_SEARCH_BUDGET,
    build_check_set,
    check_polynomial_set,
    load_check_cache,
    min_weight_search,
    mine_or_load_checks,
    save_check_cache,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3


def _write_manifest(out_path: str, command: str, config: dict,
                    code: BchCode | None, seed: int | None,
                    wall_time_s: float, outputs: list[str]) -> None:
    manifest = {
        "command": command,
        "config": config,
        "code_spec_hash": code_spec_hash(code) if code else None,
        "seed": seed,
        "version": __version__,
        "wall_time_s": wall_time_s,
        "outputs": outputs,
    }
    with open(out_path + ".manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=2, default=str)
        fh.write("\n")


def _parse_range(text: str) -> list[float]:
    """'1:14' -> 1..14; '2:4:0.5' -> 2,2.5,...,4; '1,3,5' -> listed values."""
    if "," in text:
        return [float(x) for x in text.split(",")]
    if ":" in text:
        parts = [float(x) for x in text.split(":")]
        if len(parts) == 2:
            lo, hi, step = parts[0], parts[1], 1.0
        elif len(parts) == 3:
            lo, hi, step = parts
        else:
            raise ConfigError(f"bad range {text!r}")
        out = []
        x = lo
        while x <= hi + 1e-9:
            out.append(round(x, 10))
            x += step
        return out
    return [float(text)]


def _load_code(args) -> BchCode:
    if getattr(args, "spec", None):
        return load_code_spec(args.spec)
    if getattr(args, "m", None) is not None and getattr(args, "leaders", None):
        field = BinaryField(args.m, getattr(args, "prim_poly", None))
        leaders = [int(x) for x in args.leaders.split(",")]
        return bch_from_cosets(field, leaders)
    raise ConfigError("need --spec FILE or --m and --leaders")


def _checks_for(code: BchCode, args):
    if getattr(args, "checks_file", None):
        return load_check_cache(args.checks_file, code)
    return mine_or_load_checks(
        code,
        min_count=getattr(args, "min_checks", 1) or 1,
        max_weight=getattr(args, "max_weight", None),
        budget=getattr(args, "search_budget", DEFAULT_SEARCH_BUDGET),
        cache=not getattr(args, "no_cache", False),
    )


# ---------------------------------------------------------------------------
# code-search
# ---------------------------------------------------------------------------

def cmd_code_search(args) -> int:
    field = BinaryField(args.m, args.prim_poly)
    n = field.n
    table = cyclotomic_cosets(n)
    combos = coset_selections(table, args.k)
    print(f"{len(combos)} coset selections give n={n}, k={args.k}")

    rows = []
    if args.best_d or args.props:
        for picked in combos:
            exps = set()
            for l in picked:
                exps.update(table.cosets[l])
            d = designed_distance(exps, n, wrap=False)
            rows.append({"leaders": sorted(picked), "d": d})
        rows.sort(key=lambda r: (-r["d"], r["leaders"]))
        if args.best_d:
            best = rows[0]
            print(f"best designed distance d={best['d']} leaders={best['leaders']}")
            rows = [r for r in rows if r["d"] == rows[0]["d"]]
        if args.props:
            limit = args.limit or 10
            for row in rows[:limit]:
                code = bch_from_cosets(field, row["leaders"])
                rep = min_weight_search(code, budget=args.budget)
                dual_rep = min_weight_search(dual_code(code), budget=args.budget)
                row.update(
                    delta=rep.min_weight,
                    delta_perp=dual_rep.min_weight,
                    num_checks=len(dual_rep.witnesses),
                    exhaustive=rep.exhaustive and dual_rep.exhaustive,
                )
                print(row)
            rows = rows[:limit]
    if args.out:
        payload = {
            "m": args.m, "k": args.k, "prim_poly": field.prim_poly,
            "count": len(combos), "codes": rows,
        }
        with open(args.out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# code-info
# ---------------------------------------------------------------------------

def cmd_code_info(args) -> int:
    code = _load_code(args)
    dual = dual_code(code)
    x_n_1 = (1 << code.n) | 1
    from .gf2 import clmul
    gh_ok = clmul(code.g, code.h) == x_n_1
    rep = min_weight_search(code, budget=args.budget)
    code.delta_true = rep.min_weight
    checks = build_check_set(code, min_count=args.min_checks,
                             max_weight=args.max_weight, budget=args.budget)
    info = {
        "name": args.spec or "",
        "n": code.n,
        "k": code.k,
        "d": designed_distance(code.exponents, code.n, wrap=False),
        "d_perp": designed_distance(dual.exponents, code.n, wrap=False),
        "delta": rep.min_weight,
        "delta_exhaustive": rep.exhaustive,
        "delta_perp": checks.delta_perp,
        "num_checks": checks.size,
        "checks_by_weight": checks.counts_by_weight,
        "checks_exhaustive": checks.exhaustive,
        "g_times_h_is_ring_modulus": gh_ok,
        "prim_poly": code.field.prim_poly,
        "leaders": list(code.selected_leaders),
        "deg_g": poly_degree(code.g),
        "spec_hash": code_spec_hash(code),
    }
    print(json.dumps(info, indent=2))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(info, fh, indent=2)
            fh.write("\n")
    if not (rep.exhaustive and checks.exhaustive) and not args.allow_partial:
        print("warning: search budget exhausted; distances are bounds",
              file=sys.stderr)
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

def cmd_checks(args) -> int:
    t0 = time.perf_counter()
    code = _load_code(args)
    checks = build_check_set(code, min_count=args.min_count,
                             max_weight=args.max_weight, budget=args.budget)
    out = args.out
    if out is None:
        from .wsearch import cache_path_for
        out = cache_path_for(code)
    save_check_cache(checks, out)
    print(f"{checks.size} checks (min weight {checks.delta_perp}, "
          f"exhaustive={checks.exhaustive}) -> {out}")
    _write_manifest(out, "checks", {
        "spec": args.spec, "min_count": args.min_count,
        "max_weight": args.max_weight, "budget": args.budget,
    }, code, None, time.perf_counter() - t0, [out])
    if not checks.exhaustive and not args.allow_partial:
        return EXIT_BUDGET
    return EXIT_OK


# ---------------------------------------------------------------------------
# sim-hard / sim-soft
# ---------------------------------------------------------------------------

def _load_plan(path) -> FlipPlan:
    with open(path) as fh:
        payload = json.load(fh)
    return FlipPlan(payload["k"], [int(p) for p in payload["patterns"]],
                    provenance=payload.get("provenance", "file"))


def cmd_sim_hard(args) -> int:
    t0 = time.perf_counter()
    code = _load_code(args)
    checks = None
    if args.decoder in ("isd", "erd", "rsd"):
        checks = _checks_for(code, args)
    plan = _load_plan(args.flip_plan) if args.flip_plan else None
    cfg = HardDecoderConfig(
        decoder=args.decoder,
        flip_weight=args.flip_weight,
        plan=plan,
        max_iter=args.max_iter,
        maxflip=args.maxflip,
        mu=args.mu,
        shifts=args.shifts,
        rsd_flip_budget=args.flip_budget,
        bdd_radius=args.bdd_t,
    )
    taus = [int(x) for x in _parse_range(args.tau)]
    record = run_hard_campaign(
        code, cfg, taus, args.trials, args.seed, checks=checks,
        min_failures=args.min_failures, max_trials=args.max_trials,
        workers=args.workers,
    )
    write_campaign_csv(record, args.out)
    _write_manifest(args.out, "sim-hard", {
        "spec": args.spec, "decoder": args.decoder, "params": record.params,
    }, code, args.seed, time.perf_counter() - t0, [args.out])
    print(f"{len(record.points)} points -> {args.out} "
          f"({record.wall_time_s:.1f}s simulation)")
    return EXIT_OK


def cmd_sim_soft(args) -> int:
    t0 = time.perf_counter()
    code = _load_code(args)
    if args.isd_h:
        checks = check_polynomial_set(code)
    elif args.alpha != 0.0:
        checks = _checks_for(code, args)
    else:
        checks = None
    plan = _load_plan(args.flip_plan) if args.flip_plan else None
    cfg = SoftDecoderConfig(
        alpha=args.alpha,
        top_t=args.T,
        flip_weight=args.flip_weight,
        plan=plan,
        metric=args.metric,
    )
    ebn0s = _parse_range(args.ebn0)
    record = run_soft_campaign(
        code, checks, cfg, ebn0s, args.trials, args.seed,
        min_failures=args.min_failures, max_trials=args.max_trials,
        workers=args.workers,
    )
    write_campaign_csv(record, args.out)
    _write_manifest(args.out, "sim-soft", {
        "spec": args.spec, "params": record.params, "isd_h": args.isd_h,
    }, code, args.seed, time.perf_counter() - t0, [args.out])
    print(f"{len(record.points)} points -> {args.out} "
          f"({record.wall_time_s:.1f}s simulation)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# plan-flips / rm-verify
# ---------------------------------------------------------------------------

def cmd_plan_flips(args) -> int:
    t0 = time.perf_counter()
    code = _load_code(args)
    checks = _checks_for(code, args) if args.alpha != 0.0 else None
    rng = np.random.default_rng(args.seed)
    stats = simulate_error_ranks(code, checks, args.ebn0, args.alpha,
                                 args.T, args.trials, rng)
    plan, wer_est = plan_flips(stats, args.budget)
    payload = {
        "k": plan.k,
        "patterns": plan.patterns,
        "provenance": plan.provenance,
        "wer_est": wer_est,
        "context": stats.context,
        "total_mass": stats.total_mass,
    }
    with open(args.out, "w") as fh:
        json.dump(payload, fh)
        fh.write("\n")
    _write_manifest(args.out, "plan-flips", {
        "spec": args.spec, "ebn0": args.ebn0, "alpha": args.alpha,
        "T": args.T, "trials": args.trials, "budget": args.budget,
    }, code, args.seed, time.perf_counter() - t0, [args.out])
    print(f"plan with {plan.size} patterns, estimated WER {wer_est:.4g} "
          f"-> {args.out}")
    return EXIT_OK


def cmd_rm_verify(args) -> int:
    rng = np.random.default_rng(args.seed)
    equivalent = verify_rm_equivalence(args.m, args.r, args.prim_poly)
    cyclic = verify_rmstar_cyclic(args.m, args.r, args.prim_poly,
                                  trials=args.trials, rng=rng)
    roots = verify_generator_roots(args.m, args.r, args.prim_poly)
    verdict = {
        "r": args.r, "m": args.m,
        "equivalent": equivalent,
        "punctured_rm_cyclic": cyclic,
        "generator_roots_match": roots,
    }
    print(json.dumps(verdict, indent=2))
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(verdict, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if (equivalent and cyclic and roots) else EXIT_CONFIG


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_code_args(p):
    p.add_argument("--spec", help="code-spec JSON file")
    p.add_argument("--m", type=int, help="extension degree (with --leaders)")
    p.add_argument("--prim-poly", type=int, dest="prim_poly")
    p.add_argument("--leaders", help="comma-separated coset leaders")


def _add_checks_args(p):
    p.add_argument("--min-checks", type=int, default=1)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--search-budget", type=int, default=DEFAULT_SEARCH_BUDGET,
                   dest="search_budget", help="check-mining enumeration budget")
    p.add_argument("--checks-file", help="load checks from this cache file")
    p.add_argument("--no-cache", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="bchlab",
        description="Cyclic-code workbench: construction, check mining, "
                    "hard and soft decoding campaigns.",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("code-search", help="enumerate coset selections for a dimension")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--prim-poly", type=int, dest="prim_poly")
    p.add_argument("--best-d", action="store_true")
    p.add_argument("--props", action="store_true",
                   help="search true distances for the listed codes")
    p.add_argument("--limit", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code_search)

    p = sub.add_parser("code-info", help="parameters and check summary of one code")
    _add_code_args(p)
    p.add_argument("--min-checks", type=int, default=1)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--allow-partial", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_code_info)

    p = sub.add_parser("checks", help="mine and cache the check set")
    _add_code_args(p)
    p.add_argument("--min-count", type=int, default=1)
    p.add_argument("--max-weight", type=int, default=None)
    p.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    p.add_argument("--allow-partial", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_checks)

    p = sub.add_parser("sim-hard", help="fixed-weight BSC campaign")
    _add_code_args(p)
    _add_checks_args(p)
    p.add_argument("--decoder", required=True,
                   choices=["isd", "erd", "rsd", "bdd"])
    p.add_argument("--tau", required=True, help="e.g. 1:14 or 2,4,6")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--flip-weight", type=int, default=2)
    p.add_argument("--flip-plan", help="JSON flip plan file")
    p.add_argument("--max-iter", type=int, default=50)
    p.add_argument("--maxflip", type=int, default=1)
    p.add_argument("--mu", type=int, default=None)
    p.add_argument("--shifts", type=int, default=1)
    p.add_argument("--flip-budget", type=int, default=0)
    p.add_argument("--bdd-t", type=int, default=None)
    p.add_argument("--min-failures", type=int, default=None)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sim_hard)

    p = sub.add_parser("sim-soft", help="AWGN/BPSK campaign")
    _add_code_args(p)
    _add_checks_args(p)
    p.add_argument("--ebn0", required=True, help="e.g. 2:4:0.5 or 3")
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--T", type=int, default=None)
    p.add_argument("--flip-weight", type=int, default=2)
    p.add_argument("--flip-plan", help="JSON flip plan file")
    p.add_argument("--metric", choices=["channel", "combined"],
                   default="channel")
    p.add_argument("--isd-h", action="store_true",
                   help="use only the check polynomial's rotations")
    p.add_argument("--min-failures", type=int, default=None)
    p.add_argument("--max-trials", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sim_soft)

    p = sub.add_parser("plan-flips", help="derive a flip plan from error-rank statistics")
    _add_code_args(p)
    _add_checks_args(p)
    p.add_argument("--ebn0", type=float, required=True)
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--T", type=int, default=None)
    p.add_argument("--trials", type=int, default=10000)
    p.add_argument("--budget", type=int, default=101)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_plan_flips)

    p = sub.add_parser("rm-verify", help="Reed-Muller equivalence checks")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prim-poly", type=int, dest="prim_poly")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_rm_verify)

    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad usage, which matches our config-error code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BchLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
