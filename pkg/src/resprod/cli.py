"""Command line interface.

Subcommands: sieve, charsum, solve, fermat, count, verify, experiment.
Exit codes: 0 success, 1 violation (or negative search result), 2 bad
configuration or arguments, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import arith, chars, counting, fermat, solvers
from .errors import (
    ConfigError,
    IoError,
    NoSolutionError,
    ResourceExceededError,
    ResprodError,
)
from .harness import (
    ExperimentConfig,
    default_workers,
    emit_report,
    load_config_file,
    run_experiment,
    verify_suite,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_CONFIG = 2
EXIT_RESOURCE = 3


def _cmd_sieve(args) -> int:
    if args.pattern:
        if args.q is None:
            raise ConfigError("--pattern needs --q")
        pat = solvers.build_prime_pattern(args.q, args.pattern, widen=args.widen)
        print(
            f"{pat.variant} pattern mod {pat.modulus}: {pat.prime_count} primes, "
            f"span exponent {pat.r_exponent}"
            + (f", widened x{pat.widen}" if pat.widen else "")
        )
        for slot, primes in zip(pat.slots, pat.sampled_primes):
            print(f"  {slot.count} primes near q^{slot.exponent}: " + " ".join(map(str, primes)))
        print(f"r = {pat.r_value()}")
        return EXIT_OK
    if args.anchor is None:
        raise ConfigError("sieve needs --anchor (or --pattern with --q)")
    anchor = int(args.anchor) if float(args.anchor).is_integer() else args.anchor
    window = arith.dyadic_window(anchor, widen=args.widen)
    primes = arith.primes_in_window(window, coprime_to=args.coprime_to)
    print(f"window [{window.lo}, {window.hi}] at anchor {args.anchor}")
    print(" ".join(str(p) for p in primes) if primes else "(no primes)")
    return EXIT_OK


def _parse_chi(group: chars.CharacterGroup, text: str) -> chars.CharacterId:
    if not text:
        return group.principal
    return group.character(int(t) for t in text.split(","))


def _cmd_charsum(args) -> int:
    group = chars.build_character_group(args.q)
    if args.scan:
        scan = chars.char_sum_scan(group, args.upper)
        print(
            f"q={args.q} M={args.upper} max|sum|={scan.max_abs:.12g} "
            f"argmax={scan.argmax.digest()} "
            f"per-sqrt={scan.ratio_sqrt:.12g} per-linear={scan.ratio_linear:.12g}"
        )
        return EXIT_OK
    chi = _parse_chi(group, args.chi)
    if args.prime_window is not None:
        value = chars.prime_window_sum(group, chi, args.prime_window, widen=args.widen)
        print(f"sum over primes in window at {args.prime_window}: {value:.12g}")
        return EXIT_OK
    value = chars.char_sum(group, chi, args.upper)
    print(f"sum_{{m<={args.upper}}} chi(m) = {value:.12g}")
    return EXIT_OK


def _cmd_solve(args) -> int:
    try:
        if args.subgroup:
            sub = solvers.make_subgroup(args.q, args.subgroup)
            w = solvers.solve_product_subgroup(args.a, args.q, args.k, args.bound, sub)
        else:
            w = solvers.solve_product(args.a, args.q, args.k, args.bound)
    except NoSolutionError as exc:
        certainty = "certified" if exc.certified else "search exhausted"
        print(f"no solution ({certainty}): {exc}")
        return EXIT_VIOLATION
    factors = "*".join(str(n) for n in w.factors)
    tail = f" with coset element u={w.coset_element}" if w.coset_element != 1 else ""
    print(f"{factors} = {w.target} * {w.coset_element} (mod {w.modulus}){tail}")
    from .harness import product_witness_digest

    print(f"digest: {product_witness_digest(w)}")
    return EXIT_OK


def _cmd_fermat(args) -> int:
    if args.u is not None:
        print(fermat.fermat_quotient(args.u, args.p))
        return EXIT_OK
    if args.lengths:
        lengths = fermat.fq_length_map(args.p, args.upper)
        for a, l in enumerate(lengths):
            print(f"{a},{l if l is not None else 'inf'}")
        return EXIT_OK
    if args.a is None or args.k is None:
        raise ConfigError("fermat solve needs --a and --k (or use --u / --lengths)")
    try:
        w = fermat.solve_quotient_sum(args.a, args.p, args.k, args.upper)
    except NoSolutionError as exc:
        print(f"no solution (certified): {exc}")
        return EXIT_VIOLATION
    print("terms: " + ",".join(str(u) for u in w.terms))
    from .harness import fq_witness_digest

    print(f"digest: {fq_witness_digest(w)}")
    return EXIT_OK


def _cmd_count(args) -> int:
    if args.op == "coprime":
        anchor = int(args.anchor) if float(args.anchor).is_integer() else args.anchor
        res = counting.count_coprime_window(anchor, args.q)
        print(
            f"exact={res.exact} main={res.main_term:.12g} error={res.error:.12g} "
            f"tau={res.tau_q} within_2tau={str(res.within_2tau).lower()}"
        )
    elif args.op == "prime-cofactor":
        res = counting.count_prime_cofactor_pairs(args.anchor, args.zeta, args.q)
        print(f"exact={res.exact} main={res.main_term:.12g}")
    elif args.op == "mertens":
        res = counting.mertens_delta(args.x, args.y)
        print(
            f"sum={res.reciprocal_sum:.12g} main={res.main_term:.12g} delta={res.delta:.12g}"
        )
    elif args.op == "smooth":
        ms = counting.smooth_products(
            int(args.anchor) if float(args.anchor).is_integer() else args.anchor,
            args.zeta,
            q=args.q,
            require_coprime=args.coprime,
        )
        print(
            f"window=[{ms.window_lo},{ms.window_hi}] threshold={ms.threshold:.12g} "
            f"total={ms.total} distinct={len(ms.counts)}"
        )
        for k in sorted(ms.counts):
            print(f"{k},{ms.counts[k]}")
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown count op {args.op}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    suite = verify_suite(args.level)
    for check in suite.checks:
        status = "PASS" if check.passed else "FAIL"
        detail = f" ({check.detail})" if check.detail else ""
        print(
            f"{status} {check.name}: {check.violations} violations / "
            f"{check.checked} checks [{check.elapsed_s:.2f}s]{detail}"
        )
    print(
        f"{'PASS' if suite.passed else 'FAIL'} verify[{suite.level}] "
        f"in {suite.elapsed_s:.1f}s"
    )
    if args.json:
        payload = {
            "level": suite.level,
            "passed": suite.passed,
            "checks": [vars(c) for c in suite.checks],
        }
        Path(args.json).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return EXIT_OK if suite.passed else EXIT_VIOLATION


_EXPERIMENT_OVERRIDES = (
    ("experiment", "kind"),
    ("q_lo", "q_lo"),
    ("q_hi", "q_hi"),
    ("cube_free_only", "cube_free_only"),
    ("primes_only", "primes_only"),
    ("epsilon", "epsilon"),
    ("bound", "bound"),
    ("bound_exp", "bound_exp"),
    ("k_max", "k_max"),
    ("subgroup", "subgroup"),
    ("workers", "workers"),
    ("out", "out"),
    ("format", "out_format"),
    ("seed", "seed"),
    ("demo_widening", "demo_widening"),
    ("sample", "sample"),
    ("anchors", "anchors"),
    ("vectors", "vectors"),
    ("plot", "plot"),
)


def _cmd_experiment(args) -> int:
    data: dict = {}
    if args.config:
        data.update(load_config_file(args.config))
    for arg_name, field in _EXPERIMENT_OVERRIDES:
        value = getattr(args, arg_name)
        if value is not None:
            data[field] = value
    if "anchors" in data and isinstance(data["anchors"], str):
        data["anchors"] = [float(t) for t in data["anchors"].split(",")]
    if data.get("workers") is None:
        data["workers"] = default_workers()
    cfg = ExperimentConfig.from_dict(data).validate()
    report = run_experiment(cfg)
    out = cfg.out or f"experiment-{cfg.kind}.{cfg.out_format}"
    path = emit_report(report, out, cfg.out_format)
    print(f"wrote {path} ({report.summary['row_count']} rows)")
    if cfg.plot:
        from .harness.plots import render_report_figure

        fig_path = render_report_figure(report, Path(out).with_suffix(".png"))
        if fig_path is not None:
            print(f"wrote {fig_path}")
    violations = report.summary["violations"]
    if violations:
        print(f"{violations} violations found")
        return EXIT_VIOLATION
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resprod",
        description="Desk-scale experiments on products of small integers in "
        "residue classes, character sums, and Fermat quotients.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="primes in a dyadic window, or a prime pattern")
    p.add_argument("--anchor", type=float, default=None)
    p.add_argument("--coprime-to", type=int, default=1)
    p.add_argument("--widen", type=float, default=None)
    p.add_argument("--pattern", choices=("full", "subgroup"), default=None)
    p.add_argument("--q", type=int, default=None, help="modulus for --pattern")
    p.set_defaults(func=_cmd_sieve)

    p = sub.add_parser("charsum", help="character sums and scans")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--upper", type=int, default=1)
    p.add_argument("--chi", type=str, default="", help="comma-separated exponent vector")
    p.add_argument("--scan", action="store_true", help="max over nonprincipal characters")
    p.add_argument("--prime-window", type=float, default=None)
    p.add_argument("--widen", type=float, default=None)
    p.set_defaults(func=_cmd_charsum)

    p = sub.add_parser("solve", help="bounded-factor product representation")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.add_argument("--subgroup", type=str, default="")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("fermat", help="Fermat quotient values and sum solving")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--u", type=int, default=None, help="evaluate the quotient of u")
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--upper", type=int, default=1)
    p.add_argument("--lengths", action="store_true", help="print the length map")
    p.set_defaults(func=_cmd_fermat)

    p = sub.add_parser("count", help="window counts, prime sums, smooth products")
    p.add_argument("--op", choices=("coprime", "prime-cofactor", "mertens", "smooth"), required=True)
    p.add_argument("--anchor", type=float, default=10.0)
    p.add_argument("--q", type=int, default=1)
    p.add_argument("--zeta", type=float, default=0.5)
    p.add_argument("--x", type=float, default=10.0)
    p.add_argument("--y", type=float, default=100.0)
    p.add_argument("--coprime", action="store_true")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("verify", help="run the invariant batteries")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.add_argument("--json", type=str, default=None)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("experiment", help="run a verification sweep")
    p.add_argument("--experiment", type=str, default=None, help="experiment kind")
    p.add_argument("--config", type=str, default=None, help="JSON config file")
    p.add_argument("--q-lo", dest="q_lo", type=int, default=None)
    p.add_argument("--q-hi", dest="q_hi", type=int, default=None)
    p.add_argument("--cube-free-only", dest="cube_free_only", action="store_true", default=None)
    p.add_argument("--primes-only", dest="primes_only", action="store_true", default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--bound", type=int, default=None)
    p.add_argument("--bound-exp", dest="bound_exp", type=float, default=None)
    p.add_argument("--k-max", dest="k_max", type=int, default=None)
    p.add_argument("--subgroup", type=str, default=None)
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", type=str, choices=("csv", "json"), default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--demo-widening", dest="demo_widening", type=float, default=None)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--anchors", type=str, default=None, help="comma-separated anchors")
    p.add_argument("--vectors", type=int, default=None)
    p.add_argument("--plot", action="store_true", default=None)
    p.set_defaults(func=_cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceExceededError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ConfigError, IoError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ResprodError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
