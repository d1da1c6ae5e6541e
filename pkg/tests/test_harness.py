import json

import pytest

from qschur.harness import ConfigError, SuiteConfig, corrupt, run_suite, suite_catalog
from qschur.presentations import r_expansion_terms, DividedPower, E


def test_config_validation():
    with pytest.raises(ConfigError):
        SuiteConfig(n=3, r=4)
    with pytest.raises(ConfigError):
        SuiteConfig(n=2)
    with pytest.raises(ConfigError):
        SuiteConfig(n=3, suites=("nonsense",))
    with pytest.raises(ConfigError):
        SuiteConfig(n=3, window=(5, 1))
    assert SuiteConfig(n=4).r == 4


def test_n_greater_than_r_presentation():
    rep = run_suite(SuiteConfig(n=3, r=2, suites=("presentation",)))
    assert rep.passed
    assert rep.summary()["total"] == len(suite_catalog("presentation", 3, 2))


def test_corrupted_relation_is_caught():
    rep = run_suite(SuiteConfig(n=3, suites=("presentation",), inject=("corrupt-relation",)))
    assert not rep.passed
    (bad,) = rep.failures()
    assert bad.relation.startswith("corrupted:")
    assert bad.witness["tuple"] and bad.witness["residual"] not in ("", "0")


def test_corrupt_refuses_zero_rhs():
    p = next(p for p in suite_catalog("presentation", 3, 3) if p.rhs.is_zero())
    with pytest.raises(ValueError):
        corrupt(p)


def test_wrong_convention_is_caught():
    rep = run_suite(SuiteConfig(n=3, suites=("bubbles",), inject=("wrong-convention",)))
    failed = [r.relation for r in rep.failures()]
    assert failed and all(f.startswith("wrong-convention:") for f in failed)


def test_deterministic_and_parallel_matches_serial():
    cfg = dict(n=3, suites=("presentation", "delta", "divided_powers"))
    a = run_suite(SuiteConfig(**cfg)).dumps(include_duration=False)
    b = run_suite(SuiteConfig(**cfg)).dumps(include_duration=False)
    c = run_suite(SuiteConfig(jobs=2, **cfg)).dumps(include_duration=False)
    assert a == b == c


def test_r_expansion_printed_vs_corrected():
    printed = run_suite(SuiteConfig(n=3, suites=("r_expansion",)))
    corrected = run_suite(SuiteConfig(n=3, suites=("r_expansion",), r_order="corrected"))
    assert corrected.passed
    failed = {r.relation for r in printed.failures()}
    # exactly the R monomials with two or more nontrivial factors, and R^-1 exp(R) = 1
    multi = {f"R·1[λ=({','.join(map(str, lam))})]"
             for lam, w in r_expansion_terms(3, 1).items()
             if sum(isinstance(g, (E, DividedPower)) for g in w) >= 2}
    assert failed == multi | {"R^-1·exp(R)"}
    assert all(not r.relation.startswith("R^-1·1") for r in printed.failures())


def test_report_json(tmp_path):
    out = tmp_path / "report.json"
    rep = run_suite(SuiteConfig(n=3, suites=("r_corollary",), out=str(out)))
    data = json.loads(out.read_text())
    assert data["summary"]["status"] == "pass"
    assert data["summary"]["total"] == len(rep.reports)
    assert "coproduct" in data["conventions"]
    assert data["conventions"]["bubble_degree_zero"] == {"ccw0": -1, "cw0": 1}
    ids = [r["relation"] for r in data["reports"]]
    assert ids == sorted(ids)


def test_divided_power_suite_is_seeded():
    a = run_suite(SuiteConfig(n=3, suites=("divided_powers",), seed=7))
    b = run_suite(SuiteConfig(n=3, suites=("divided_powers",), seed=7))
    assert a.passed and a.dumps(False) == b.dumps(False)
    assert all(r.vectors == 100 for r in a.reports)


def test_cli_main_delegates(capsys):
    from qschur.harness import cli_main
    assert cli_main(["compute", "--n", "3", "--r", "3", "--element", "R 1_(1,1,1)", "--vector", "1,2,3"]) == 0
    assert capsys.readouterr().out.strip() == "e2⊗e3⊗e4"
