"""
Suites that run every relation catalog through the tensor-space oracle, plus
the bubble invariants, and collect the results into a JSON report.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from . import bubblecalc
from .fockrep import RepConfig, VerifyReport, basis, safe_basis, verify_pair, _apply_unchecked
from .presentations import (
    E,
    Element,
    R_ORDERS,
    RelationPair,
    delta_relation_catalog,
    iota_relation,
    r_corollary_catalog,
    r_expansion_catalog,
    schur_relation_catalog,
)
from .qarith import LaurentPoly, NotDivisible, exact_divide, q, quantum_factorial
from .weightlat import enumerate_compositions, format_weight, ones

__all__ = [
    "SUITES",
    "ConfigError",
    "SuiteConfig",
    "SuiteReport",
    "run_suite",
    "suite_catalog",
    "corrupt",
    "CONVENTIONS",
    "cli_main",
]

SUITES = ("presentation", "delta", "r_corollary", "r_expansion", "iota", "divided_powers", "bubbles")
INJECTIONS = ("corrupt-relation", "wrong-convention")

CONVENTIONS = {
    "coproduct": "E_{+i} on leg k with K_i K_{i+1}^-1 factors from legs right of k; "
                 "E_{-i} with K_i^-1 K_{i+1} factors from legs left of k",
    "words": "rightmost generator acts first",
    "e_delta": "E_{+-delta} = R^{-+1} restricted to weight (1,...,1)",
    "r_expansion_dedup": "one monomial per idempotent, i = min{j : a_j = 0}",
    "iota_r_rewrite": "R^{+-1} rewritten with the corrected expansion before mapping",
}


class ConfigError(ValueError):
    pass


@dataclass
class SuiteConfig:
    n: int
    r: int | None = None
    suites: tuple = SUITES
    window: tuple | None = None
    jobs: int = 1
    out: str | None = None
    r_order: str = "printed"
    inject: tuple = ()
    seed: int = 0
    samples: int = 100
    max_power: int = 3
    bubble_dots: int = 4

    def __post_init__(self):
        if self.r is None:
            self.r = self.n
        if self.n < 3:
            raise ConfigError(f"rank n must be at least 3, got {self.n}")
        if not 1 <= self.r <= self.n:
            raise ConfigError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        self.suites = tuple(self.suites)
        for s in self.suites:
            if s not in SUITES:
                raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        if self.window is not None:
            lo, hi = self.window
            if lo > hi:
                raise ConfigError(f"empty window {lo}..{hi}")
            self.window = (int(lo), int(hi))
        if self.jobs < 1:
            raise ConfigError("jobs must be positive")
        if self.r_order not in R_ORDERS:
            raise ConfigError(f"r_order must be one of {R_ORDERS}")
        self.inject = tuple(self.inject)
        for s in self.inject:
            if s not in INJECTIONS:
                raise ConfigError(f"unknown injection {s!r}")

    def echo(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("jobs")
        d["suites"] = list(self.suites)
        d["inject"] = list(self.inject)
        d["window"] = list(self.window) if self.window else None
        return d


@dataclass
class SuiteReport:
    config: dict
    reports: list
    conventions: dict
    duration: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def summary(self) -> dict:
        by_suite: dict = {}
        for r in self.reports:
            entry = by_suite.setdefault(r.suite, {"passed": 0, "failed": 0})
            entry["passed" if r.passed else "failed"] += 1
        failed = sum(1 for r in self.reports if not r.passed)
        return {
            "status": "pass" if failed == 0 else "fail",
            "total": len(self.reports),
            "passed": len(self.reports) - failed,
            "failed": failed,
            "by_suite": by_suite,
        }

    def failures(self) -> list:
        return [r for r in self.reports if not r.passed]

    def to_json(self, include_duration: bool = True) -> dict:
        out = {
            "config": self.config,
            "conventions": self.conventions,
            "notes": self.notes,
            "reports": [r.to_json() for r in self.reports],
            "summary": self.summary(),
        }
        if include_duration:
            out["duration_seconds"] = round(self.duration, 3)
        return out

    def dumps(self, include_duration: bool = True) -> str:
        return json.dumps(self.to_json(include_duration), indent=2, ensure_ascii=False, sort_keys=False)


# --- catalogs per suite ------------------------------------------------------------

def corrupt(p: RelationPair) -> RelationPair:
    """Negative control: the same relation with its right-hand side scaled by q."""
    if p.rhs.is_zero():
        raise ValueError("scaling a zero right-hand side changes nothing")
    rhs = p.rhs * q
    return RelationPair(f"corrupted:{p.id}", p.lhs, rhs, p.n, p.r, sources=p.sources)


@lru_cache(maxsize=32)
def suite_catalog(suite: str, n: int, r: int, r_order: str = "printed",
                  inject: tuple = ()) -> tuple:
    """Relation pairs of a suite, with the oracle ambient (n', r') they live in."""
    if suite == "presentation":
        cat = list(schur_relation_catalog(n, r))
        if "corrupt-relation" in inject:
            cat.append(corrupt(next(p for p in cat if p.id.startswith("rel3") and not p.rhs.is_zero())))
        return tuple(cat)
    if suite == "delta":
        return tuple(delta_relation_catalog(n))
    if suite == "r_corollary":
        return tuple(r_corollary_catalog(n))
    if suite == "r_expansion":
        return tuple(r_expansion_catalog(n, r_order))
    if suite == "iota":
        source = (list(schur_relation_catalog(n, n)) + list(delta_relation_catalog(n))
                  + list(r_corollary_catalog(n)))
        return tuple(iota_relation(p) for p in source)
    raise ConfigError(f"suite {suite!r} has no relation catalog")


def _oracle(cfg: SuiteConfig, suite: str, cat: tuple) -> RepConfig:
    p0 = cat[0]
    if cfg.window is not None:
        return RepConfig(p0.n, p0.r, cfg.window[0], cfg.window[1])
    span = max(p.max_span() for p in cat)
    return RepConfig.auto(p0.n, p0.r, span)


def _verify_chunk(args) -> list:
    suite, n, r, r_order, inject, rep, indices = args
    cat = suite_catalog(suite, n, r, r_order, inject)
    return [verify_pair(cat[k], rep, suite=suite) for k in indices]


# --- divided powers --------------------------------------------------------------

def _divided_power_reports(cfg: SuiteConfig) -> list:
    n, r = cfg.n, cfg.r
    rep = RepConfig.auto(n, r, cfg.max_power)
    pool = []
    for lam in enumerate_compositions(n, r):
        pool.extend(safe_basis(rep, lam, cfg.max_power))
    pool.sort()
    rng = random.Random(cfg.seed)
    vectors = [rng.choice(pool) for _ in range(cfg.samples)]
    out = []
    for sign in (1, -1):
        for i in range(1, n + 1):
            g = E(sign, i)
            for a in range(1, cfg.max_power + 1):
                d = quantum_factorial(a)
                witness = None
                for ts in vectors:
                    state = basis(ts)
                    for _ in range(a):
                        state = _apply_unchecked(n, g, state)
                    for t2, amp in sorted(state.items()):
                        try:
                            exact_divide(amp, d)
                        except NotDivisible:
                            witness = {"tuple": list(ts), "output": list(t2), "residual": str(amp)}
                            break
                    if witness:
                        break
                sg = "+" if sign > 0 else "-"
                out.append(VerifyReport("divided_powers", f"E{sg}{i}^{a}/[{a}]!", (), len(vectors),
                                        "fail" if witness else "pass", witness))
    return out


# --- bubbles ---------------------------------------------------------------------

def _bubble_reports(cfg: SuiteConfig) -> list:
    out = []
    runs = [("", bubblecalc.STANDARD)]
    if "wrong-convention" in cfg.inject:
        runs.append(("wrong-convention:", bubblecalc.WRONG_SIGN))
    for prefix, conv in runs:
        for chk in bubblecalc.bubble_checks(ns=(cfg.n,), max_dots=cfg.bubble_dots, conv=conv):
            out.append(VerifyReport("bubbles", f"{prefix}{chk.id}[n={chk.n}]", (ones(chk.n),),
                                    chk.cases, "pass" if chk.passed else "fail", chk.witness))
    return out


# --- driver ----------------------------------------------------------------------

def _chunks(size: int, jobs: int) -> list:
    if jobs <= 1:
        return [list(range(size))]
    k = max(1, size // (jobs * 4))
    return [list(range(a, min(size, a + k))) for a in range(0, size, k)]


def run_suite(cfg: SuiteConfig) -> SuiteReport:
    """Run the selected suites; failures are recorded in the report, not raised."""
    start = time.perf_counter()
    reports: list = []
    notes: list = []
    tasks = []
    for suite in cfg.suites:
        if suite in ("divided_powers", "bubbles"):
            continue
        cat = suite_catalog(suite, cfg.n, cfg.r, cfg.r_order, cfg.inject)
        rep = _oracle(cfg, suite, cat)
        if suite != "presentation" and cfg.r != cfg.n:
            notes.append(f"{suite}: runs in S({cfg.n},{cfg.n}) regardless of r")
        for idx in _chunks(len(cat), cfg.jobs):
            tasks.append((suite, cfg.n, cfg.r, cfg.r_order, cfg.inject, rep, idx))
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as ex:
            for part in ex.map(_verify_chunk, tasks):
                reports.extend(part)
    else:
        for t in tasks:
            reports.extend(_verify_chunk(t))
    if "divided_powers" in cfg.suites:
        reports.extend(_divided_power_reports(cfg))
    if "bubbles" in cfg.suites:
        reports.extend(_bubble_reports(cfg))
    reports.sort(key=lambda r: (SUITES.index(r.suite), r.relation))
    conventions = dict(CONVENTIONS)
    conventions["bubble_degree_zero"] = bubblecalc.STANDARD.describe()
    conventions["r_expansion_order"] = cfg.r_order
    out = SuiteReport(cfg.echo(), reports, conventions, time.perf_counter() - start, notes)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fh:
            fh.write(out.dumps())
            fh.write("\n")
    return out


def cli_main(argv=None) -> int:
    """Entry point of the `qschur` command; returns the exit status."""
    from .cli import main
    return main(argv)
