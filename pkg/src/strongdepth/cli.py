"""Command-line interface: ``strongdepth info|depth|sdepth|replay|verify-decomp``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .bits import indices
from .cache import Cache, cached_pd, cached_sdepth
from .graphs import InvalidShape, build_family, diameter, parse_family
from .homology import DEFAULT_PRIME, check_prime
from .ideals import ZeroIdealError, family_ideal
from .replay import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    SUITES,
    Limits,
    StretchRefused,
    expected_value,
    run_suite,
    verdict,
)
from .stanley.decomposition import verify_decomposition
from .stanley.explicit import cycle_pair, pair_bound, paper_decomposition_C2, paper_decomposition_C3
from .stanley.poset import ideal_module, quotient_module

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, body: dict, lines: list[str]) -> None:
    if getattr(args, "json", False):
        print(json.dumps({"header": {"timestamp": time.strftime("%Y-%m-%dT%H:%M:%S%z")}, **body}, sort_keys=True))
    else:
        print("\n".join(lines))


def _spec(text: str):
    try:
        return parse_family(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _cache(args) -> Optional[Cache]:
    if args.no_cache:
        return None
    return Cache(args.cache_dir)


def cmd_info(args) -> int:
    spec = _spec(args.family)
    fam = build_family(spec)
    g = fam.graph
    d = diameter(g)
    ideal = family_ideal(spec)
    gens = ["".join(fam.indexer.label(k) for k in indices(s)) for s in ideal.gens]
    body = {
        "family": str(spec),
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "diameter": None if d == float("inf") else d,
        "generator_count": len(ideal.gens),
        "ideal": ideal.to_json(fam.indexer),
    }
    lines = [
        f"family      {spec}",
        f"vertices    {g.vertex_count}",
        f"edges       {g.edge_count}",
        f"diameter    {d}",
        f"generators  {len(ideal.gens)}",
        "  " + " ".join(gens),
    ]
    _emit(args, body, lines)
    return EXIT_PASS


def _judge(spec, kind: str, measure: str, lower: int, upper: int) -> tuple[str, Optional[str], int]:
    exp = expected_value(spec, kind, measure)
    if exp is None:
        return "no stated value", None, EXIT_PASS if lower == upper else EXIT_INCONCLUSIVE
    v = verdict(exp.form, lower, upper)
    code = {PASS: EXIT_PASS, FAIL: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[v]
    return f"{v} against {exp.form} ({exp.citation})", str(exp.form), code


def cmd_depth(args) -> int:
    spec = _spec(args.family)
    if args.module == "pair":
        raise UsageError("depth is computed for --module ideal or quotient only")
    p = check_prime(args.char)
    ideal = family_ideal(spec)
    pd, hit = cached_pd(ideal, p, _cache(args))
    value = ideal.ambient - pd + (1 if args.module == "ideal" else 0)
    text, form, code = _judge(spec, args.module, "depth", value, value)
    body = {"family": str(spec), "module": args.module, "char": p, "depth": value, "expected": form,
            "verdict": text, "cached": hit}
    _emit(args, body, [f"depth({args.module} {spec}) = {value} over GF({p})", text])
    return code


def cmd_sdepth(args) -> int:
    spec = _spec(args.family)
    if args.module == "pair":
        if spec.family != "C":
            raise UsageError("the pair module I(C)/I(P) needs a C family, e.g. C:5,2")
        descriptor = cycle_pair(spec.n, spec.m)
    else:
        ideal = family_ideal(spec)
        descriptor = ideal_module(ideal) if args.module == "ideal" else quotient_module(ideal)
    res, hit = cached_sdepth(descriptor, args.budget, _cache(args))
    text, form, code = _judge(spec, args.module, "sdepth", res.lower, res.upper)
    shown = str(res.lower) if res.exact else f"in [{res.lower}, {res.upper}] (budget hit)"
    body = {"family": str(spec), "module": args.module, "sdepth": res.to_json(with_witness=args.witness),
            "expected": form, "verdict": text, "cached": hit}
    _emit(args, body, [f"sdepth({args.module} {spec}) {'= ' if res.exact else ''}{shown}", text])
    return code


def cmd_replay(args) -> int:
    limits = Limits(args.max_vars, args.budget, check_prime(args.char))
    try:
        report = run_suite(args.suite, limits, allow_stretch=args.allow_stretch)
    except StretchRefused as exc:
        print(f"refusing: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.dumps() + "\n")
        out.with_suffix(".csv").write_text(report.to_csv())
    for r in report.rows:
        if r.verdict != PASS or args.verbose:
            print(f"{r.verdict:12} {r.check:14} {r.instance:14} {r.kind:8} {r.measure:6} "
                  f"{r.expected:22} [{r.lower}, {r.upper}] {r.note}")
    print(report.summary())
    return report.exit_code


def cmd_verify_decomp(args) -> int:
    builders = {"C2quot": (paper_decomposition_C2, 3), "C3quot": (paper_decomposition_C3, 5)}
    fn, least = builders[args.family]
    if args.n < least:
        raise UsageError(f"{args.family} needs n >= {least}, got {args.n}")
    dec = fn(args.n, args.budget)
    result = verify_decomposition(dec)
    need = pair_bound(args.n)
    ok = bool(result) and dec.min_dimension >= need
    body = {"family": args.family, "n": args.n, "spaces": len(dec.spaces), "verified": bool(result),
            "violation": None if result else {"pattern": list(result.pattern), "count": result.count},
            "min_dimension": dec.min_dimension, "bound": need}
    lines = [
        f"{args.family} n={args.n}: {len(dec.spaces)} spaces, "
        + ("verified" if result else f"NOT a decomposition (pattern {result.pattern} covered {result.count} times)"),
        f"min dimension {dec.min_dimension} vs ceil((n+2)/3) = {need}: {'ok' if dec.min_dimension >= need else 'below'}",
    ]
    _emit(args, body, lines)
    return EXIT_PASS if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="strongdepth", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, cache=True):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if cache:
            p.add_argument("--no-cache", action="store_true")
            p.add_argument("--cache-dir", default=None, help="overrides $STRONGDEPTH_CACHE_DIR")

    p = sub.add_parser("info", help="graph and ideal summary for a family")
    p.add_argument("family", help="e.g. P:6,4, C:3,1, Pstar:5, Cdiamond:6")
    common(p, cache=False)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("depth", help="depth via Hochster's formula")
    p.add_argument("family")
    p.add_argument("--module", choices=("ideal", "quotient", "pair"), default="quotient")
    p.add_argument("--char", type=int, default=DEFAULT_PRIME)
    common(p)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("sdepth", help="Stanley depth via interval partitions")
    p.add_argument("family")
    p.add_argument("--module", choices=("ideal", "quotient", "pair"), default="quotient")
    p.add_argument("--char", type=int, default=DEFAULT_PRIME, help="accepted for symmetry; sdepth does not use it")
    p.add_argument("--budget", type=float, default=60.0, help="wall-clock seconds")
    p.add_argument("--witness", action="store_true", help="include the partition in --json output")
    common(p)
    p.set_defaults(func=cmd_sdepth)

    p = sub.add_parser("replay", help="run a replay suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--max-vars", type=int, default=12)
    p.add_argument("--budget", type=float, default=30.0, help="seconds per sdepth computation")
    p.add_argument("--char", type=int, default=DEFAULT_PRIME)
    p.add_argument("--out", help="report path; a .csv is written next to it")
    p.add_argument("--allow-stretch", action="store_true", help="permit the long m = 4 suite")
    p.add_argument("-v", "--verbose", action="store_true", help="list passing rows too")
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("verify-decomp", help="build and check an explicit Stanley decomposition")
    p.add_argument("--family", choices=("C2quot", "C3quot"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=float, default=60.0)
    common(p, cache=False)
    p.set_defaults(func=cmd_verify_decomp)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, InvalidShape, ZeroIdealError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
