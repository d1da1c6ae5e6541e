"""
Acceptance criteria 1-8.  Each test records one PASS/FAIL line, printed in the
terminal summary, and asserts the criterion.
"""

import random
import time

from qschur import bubblecalc
from qschur.fockrep import RepConfig, verify_pair
from qschur.harness import SuiteConfig, corrupt, run_suite, suite_catalog
from qschur.presentations import r_expansion_catalog


def _fails(rep):
    return [f"{r.relation} {r.witness}" for r in rep.failures()]


def test_criterion_1_presentation(record):
    details, ok = [], True
    for n, limit in ((3, 60), (4, 900)):
        start = time.perf_counter()
        rep = run_suite(SuiteConfig(n=n, suites=("presentation",)))
        took = time.perf_counter() - start
        ok = ok and rep.passed and took < limit
        details.append(f"n={n}: {rep.summary()['passed']}/{rep.summary()['total']} in {took:.0f}s")
    record(1, ok, "; ".join(details))
    assert ok


def test_criterion_2_delta(record):
    reps = {n: run_suite(SuiteConfig(n=n, suites=("delta",))) for n in (3, 4)}
    ok = all(r.passed for r in reps.values())
    record(2, ok, "; ".join(f"n={n}: {r.summary()['passed']}/{r.summary()['total']}"
                            for n, r in reps.items()))
    assert ok, {n: _fails(r) for n, r in reps.items()}


def test_criterion_3_r(record):
    lines, failures = [], []
    for n in (3, 4):
        cor = run_suite(SuiteConfig(n=n, suites=("r_corollary",)))
        failures += _fails(cor)
        cfg = RepConfig.auto(n, n, n + 1)
        per_lambda = [p for p in r_expansion_catalog(n, "printed")
                      if "·1[" in p.id and 0 in p.sources[0]]
        bad = [p.id for p in per_lambda if not verify_pair(p, cfg).passed]
        failures += bad
        lines.append(f"n={n}: corollary {cor.summary()['passed']}/{cor.summary()['total']},"
                     f" expansion monomials {len(per_lambda) - len(bad)}/{len(per_lambda)}")
    record(3, not failures, "; ".join(lines))
    assert not failures, failures


def test_criterion_4_iota(record):
    reps = {n: run_suite(SuiteConfig(n=n, suites=("iota",))) for n in (3, 4)}
    ok = all(r.passed for r in reps.values())
    record(4, ok, "; ".join(f"n={n}: {r.summary()['passed']}/{r.summary()['total']}"
                            for n, r in reps.items()))
    assert ok, {n: _fails(r) for n, r in reps.items()}


def test_criterion_5_divided_powers(record):
    reps = {n: run_suite(SuiteConfig(n=n, suites=("divided_powers",), seed=n)) for n in (3, 4)}
    ok = all(r.passed for r in reps.values()) and all(
        x.vectors == 100 for r in reps.values() for x in r.reports)
    record(5, ok, "; ".join(f"n={n}: {r.summary()['passed']}/{r.summary()['total']} (sign, i, a<=3)"
                            for n, r in reps.items()))
    assert ok


def test_criterion_6_bubbles(record):
    start = time.perf_counter()
    results = bubblecalc.bubble_checks(ns=(3, 4, 5), max_dots=4, max_degree=6, max_slide=5)
    took = time.perf_counter() - start
    bad = [(r.n, r.id, r.witness) for r in results if not r.passed]
    kinds = sorted({r.id for r in results})
    record(6, not bad, f"{len(results) - len(bad)}/{len(results)} checks ({', '.join(kinds)}) in {took:.0f}s")
    assert not bad, bad


def test_criterion_7_negative_controls(record):
    rel = run_suite(SuiteConfig(n=3, suites=("presentation",), inject=("corrupt-relation",)))
    rel_bad = [r for r in rel.failures() if r.relation.startswith("corrupted:") and r.witness]
    bub = run_suite(SuiteConfig(n=3, suites=("bubbles",), inject=("wrong-convention",)))
    bub_bad = [r for r in bub.failures() if r.relation.startswith("wrong-convention:") and r.witness]
    clean = [r for r in rel.reports + bub.reports
             if not r.relation.startswith(("corrupted:", "wrong-convention:"))]
    ok = bool(rel_bad) and bool(bub_bad) and all(r.passed for r in clean)
    record(7, ok, f"corrupted relation -> {rel_bad[0].witness if rel_bad else None}; "
                  f"wrong bubble convention -> {len(bub_bad)} failing checks")
    assert ok


def test_criterion_8_truncation(record):
    rng = random.Random(2024)
    pool = []
    for suite in ("presentation", "delta", "r_corollary", "iota"):
        pool += [(suite, p) for p in suite_catalog(suite, 3, 3)]
    picks = rng.sample(pool, 17)
    picks += [("r_expansion", p) for p in r_expansion_catalog(3, "printed") if p.id == "R·1[λ=(2,1,0)]"]
    picks += [("r_expansion", p) for p in r_expansion_catalog(3, "printed") if p.id == "R^-1·1[λ=(0,2,1)]"]
    picks.append(("presentation", corrupt(next(p for _, p in pool if p.id == "rel3[i=1,j=1,λ=(2,1,0)]"))))
    assert len(picks) == 20
    mismatches = []
    for _, p in picks:
        cfg = RepConfig.auto(p.n, p.r, p.max_span())
        small, large = {}, {}
        a = verify_pair(p, cfg, stop_at_first=False, collect=small)
        b = verify_pair(p, cfg.doubled(), stop_at_first=False, collect=large)
        shared_ok = set(small) <= set(large) and all(large[v] == small[v] for v in small)
        if a.status != b.status or not shared_ok:
            mismatches.append(p.id)
    record(8, not mismatches, f"20 relations (2 with nonzero residuals), window doubled: "
                              f"{20 - len(mismatches)} unchanged")
    assert not mismatches, mismatches
