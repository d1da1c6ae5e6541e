"""
Command line interface.

    python -m qschur verify all --n 3 --out report.json
    python -m qschur compute --n 3 --r 3 --element "R 1_(1,1,1)" --vector 1,2,3
    python -m qschur bubbles reduce --n 4 --i 2 --dots 1,0,2,0

Exit status: 0 if everything passed, 1 if a check failed, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys

from . import bubblecalc
from .fockrep import RepConfig, apply_element, basis, format_state, WindowOverflow
from .harness import SUITES, ConfigError, SuiteConfig, run_suite
from .presentations import R_ORDERS, ParseError, parse_element

__all__ = ["main", "read_config", "parse_window", "parse_ints"]


class UsageError(Exception):
    pass


def parse_window(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"window must look like LO..HI, got {text!r}")
    try:
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must look like LO..HI, got {text!r}") from None


def parse_ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def read_config(path: str) -> dict:
    """`key = value` lines; blank lines and lines starting with # are ignored."""
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected key = value")
            out[key.strip().replace("-", "_")] = value.strip()
    return out


_CONFIG_KEYS = {"suite", "n", "r", "window", "jobs", "out", "r_order", "seed", "inject"}


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qschur", description="Affine q-Schur algebra verifier")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("suite", nargs="?", help="one of: all, " + ", ".join(SUITES))
    v.add_argument("--n", type=int)
    v.add_argument("--r", type=int)
    v.add_argument("--window", help="t-window LO..HI (default: sized from the longest word)")
    v.add_argument("--jobs", type=int)
    v.add_argument("--out", help="write the JSON report here")
    v.add_argument("--config", help="key = value file with defaults for these flags")
    v.add_argument("--r-order", dest="r_order", choices=R_ORDERS,
                   help="factor order of the R expansion monomials")
    v.add_argument("--seed", type=int)
    v.add_argument("--inject", action="append", help="negative control: corrupt-relation or wrong-convention")
    v.add_argument("--quiet", action="store_true")

    c = sub.add_parser("compute", help="apply an element to a basis vector")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--element", required=True)
    c.add_argument("--vector", required=True, help="T1,...,TR")

    b = sub.add_parser("bubbles", help="bubble calculus")
    bsub = b.add_subparsers(dest="action", required=True)
    red = bsub.add_parser("reduce", help="reduce a dotted digon to bubbles")
    red.add_argument("--n", type=int, required=True)
    red.add_argument("--i", type=int, required=True)
    red.add_argument("--dots", required=True, help="D1,...,DN: dots on the strand of each color")
    red.add_argument("--form", choices=("z", "y", "canonical"), default="z")
    return ap


def _verify(args) -> int:
    settings = {}
    if args.config:
        settings = read_config(args.config)
        unknown = set(settings) - _CONFIG_KEYS
        if unknown:
            raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in ("n", "r", "window", "jobs", "out", "r_order", "seed"):
        val = getattr(args, key)
        if val is not None:
            settings[key] = val
    if args.suite is not None:
        settings["suite"] = args.suite
    if args.inject:
        settings["inject"] = ",".join(args.inject)
    if "n" not in settings:
        raise UsageError("--n is required")
    suite = settings.get("suite", "all")
    suites = SUITES if suite == "all" else tuple(s.strip() for s in suite.split(","))
    window = settings.get("window")
    if isinstance(window, str):
        window = parse_window(window)
    try:
        cfg = SuiteConfig(
            n=int(settings["n"]),
            r=int(settings["r"]) if "r" in settings else None,
            suites=suites,
            window=window,
            jobs=int(settings.get("jobs", 1)),
            out=settings.get("out"),
            r_order=settings.get("r_order", "printed"),
            seed=int(settings.get("seed", 0)),
            inject=tuple(x for x in str(settings.get("inject", "")).split(",") if x),
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    report = run_suite(cfg)
    summary = report.summary()
    if not args.quiet:
        for suite_name, counts in summary["by_suite"].items():
            print(f"{suite_name:<15} passed {counts['passed']:>5}  failed {counts['failed']:>5}")
        for r in report.failures()[:20]:
            print(f"FAIL {r.suite} {r.relation}: {r.witness}")
        print(f"overall: {summary['status']} ({summary['passed']}/{summary['total']})"
              f" in {report.duration:.1f}s")
    return 0 if report.passed else 1


def _compute(args) -> int:
    ts = parse_ints(args.vector)
    if len(ts) != args.r:
        raise UsageError(f"vector has {len(ts)} entries, expected r={args.r}")
    try:
        elem = parse_element(args.element, args.n, args.r)
    except ParseError as exc:
        raise UsageError(f"cannot parse element: {exc}") from None
    span = elem.max_span()
    cfg = RepConfig(args.n, args.r, min(ts) - span - 1, max(ts) + span + 1)
    try:
        state = apply_element(elem, basis(ts), cfg)
    except WindowOverflow as exc:  # pragma: no cover - window is sized from the span
        raise UsageError(str(exc)) from None
    print(format_state(state))
    return 0


def _bubbles(args) -> int:
    dots = parse_ints(args.dots)
    try:
        d = bubblecalc.DigonState(args.i, args.n, dots)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.form == "y":
        p = bubblecalc.digon_closed_form_y(d)
    else:
        p = bubblecalc.digon_reduce_recursive(d)
        if args.form == "canonical":
            p = p.canonical()
    print(p)
    return 0


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _verify(args)
        if args.command == "compute":
            return _compute(args)
        return _bubbles(args)
    except (UsageError, ConfigError, OSError) as exc:
        print(f"qschur: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
