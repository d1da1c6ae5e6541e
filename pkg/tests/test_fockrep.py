import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qschur.fockrep import (
    EmptySafeInterior,
    RepConfig,
    WindowOverflow,
    apply_element,
    apply_generator,
    apply_word,
    basis,
    format_state,
    safe_basis,
    verify_pair,
)
from qschur.presentations import (
    DividedPower,
    DividedWord,
    E,
    EDelta,
    Element,
    Idem,
    RelationPair,
    RShift,
    delta_relation_catalog,
    expand_divided_powers,
    parse_element,
    schur_relation_catalog,
)
from qschur.qarith import LaurentPoly, q, quantum_factorial
from qschur.weightlat import add, residue, root, rotate, scale, weight_of

ONE = LaurentPoly.constant(1)


def big(n, r):
    return RepConfig(n, r, -40, 40)


# independent oracle: act with the coproduct recursively, V (x) V^{(x)(r-1)}

def k_exponent(ts, i, n):
    # K_i K_{i+1}^{-1} acts on e_t by q^{<wt, alpha_i>}
    wt = weight_of(ts, n)
    return sum(a * b for a, b in zip(wt, root(i, n)))


def delta_e_plus(ts, i, n):
    if not ts:
        return {}
    head, rest = ts[0], ts[1:]
    out = {}
    if residue(head - 1, n) == i:
        key = (head - 1,) + rest
        out[key] = out.get(key, 0) + q ** k_exponent(rest, i, n)
    for t2, c in delta_e_plus(rest, i, n).items():
        key = (head,) + t2
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v != 0}


def delta_e_minus(ts, i, n):
    if not ts:
        return {}
    head, rest = ts[0], ts[1:]
    out = {}
    for t2, c in delta_e_minus(rest, i, n).items():
        key = (head,) + t2
        out[key] = out.get(key, 0) + c * q ** (-k_exponent((head,), i, n))
    if residue(head, n) == i:
        key = (head + 1,) + rest
        out[key] = out.get(key, 0) + ONE
    return {k: v for k, v in out.items() if v != 0}


tuples = st.integers(3, 5).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(1, n),
                        st.lists(st.integers(-6, 6), min_size=1, max_size=4).map(tuple)))


@given(tuples)
def test_leg_formula_matches_recursive_coproduct(case):
    n, i, ts = case
    cfg = big(n, len(ts))
    assert apply_generator(E(1, i), basis(ts), cfg) == delta_e_plus(ts, i, n)
    assert apply_generator(E(-1, i), basis(ts), cfg) == delta_e_minus(ts, i, n)


def test_worked_examples():
    assert apply_generator(E(1, 1), basis((2,)), big(3, 1)) == basis((1,))
    assert apply_generator(RShift(1), basis((0, 1)), big(3, 2)) == basis((1, 2))
    assert apply_generator(E(1, 1), basis((1, 2)), big(3, 2)) == basis((1, 1))
    assert apply_generator(Idem((1, 1, 1)), basis((1, 1, 2)), big(3, 3)) == {}


def test_rel3_example():
    e = parse_element("E1 E-1 1_(2,1,0) - E-1 E1 1_(2,1,0)", 3, 3)
    for v in [(1, 1, 2), (1, 4, -1), (4, 2, 1)]:
        assert apply_element(e, basis(v), big(3, 3)) == basis(v)
    assert apply_element(Element.zero(), basis((1, 1, 2)), big(3, 3)) == {}


def test_divided_powers_in_oracle():
    cfg = big(3, 3)
    assert apply_generator(DividedPower(-1, 1, 3), basis((1, 1, 1)), cfg) == basis((2, 2, 2))
    # E_{-1}^3 before division carries [3]!
    state = apply_word((E(-1, 1),) * 3, basis((1, 1, 1)), cfg)
    assert state == {(2, 2, 2): quantum_factorial(3)}
    assert apply_generator(DividedPower(1, 3, 3), basis((1, 4, 1)), cfg) == basis((0, 3, 0))


def test_divided_power_matches_expansion():
    cfg = big(3, 3)
    for w in [(DividedPower(1, 2, 2), E(1, 1)), (DividedWord((E(1, 3), E(1, 1)), 2),)]:
        for v in [(2, 3, 3), (3, 2, 4), (1, 2, 3), (2, 2, 3)]:
            direct = apply_word(w, basis(v), cfg)
            expanded = apply_element(expand_divided_powers(w), basis(v), cfg)
            assert {k: a for k, a in direct.items()} == {k: a for k, a in expanded.items()}


gens3 = st.one_of(
    st.builds(E, st.sampled_from([1, -1]), st.integers(1, 3)),
    st.builds(DividedPower, st.sampled_from([1, -1]), st.integers(1, 3), st.integers(2, 3)),
)


@given(gens3, st.lists(st.integers(-3, 6), min_size=3, max_size=3).map(tuple))
def test_weight_covariance(g, v):
    lam = weight_of(v, 3)
    out = apply_generator(g, basis(v), RepConfig(3, 3, -10, 15))
    power = g.power if isinstance(g, DividedPower) else 1
    expected = add(lam, scale(g.sign * power, root(g.color, 3)))
    assert all(weight_of(t, 3) == expected for t in out)
    shifted = apply_generator(RShift(1), basis(v), RepConfig(3, 3, -10, 15))
    assert all(weight_of(t, 3) == rotate(lam) for t in shifted)


@given(st.sampled_from([1, -1]), st.integers(1, 4),
       st.lists(st.integers(-3, 7), min_size=4, max_size=4).map(tuple))
def test_r_intertwines(sign, i, v):
    cfg = RepConfig(4, 4, -10, 15)
    lhs = apply_word((RShift(1), E(sign, i)), basis(v), cfg)
    rhs = apply_word((E(sign, residue(i + 1, 4)), RShift(1)), basis(v), cfg)
    assert lhs == rhs


def test_e_delta_is_restricted_shift():
    cfg = big(3, 3)
    assert apply_generator(EDelta(1), basis((1, 2, 3)), cfg) == basis((0, 1, 2))
    assert apply_generator(EDelta(-1), basis((1, 2, 3)), cfg) == basis((2, 3, 4))
    assert apply_generator(EDelta(1), basis((1, 1, 3)), cfg) == {}


def test_window_overflow():
    cfg = RepConfig(3, 2, 0, 5)
    with pytest.raises(WindowOverflow):
        apply_generator(RShift(1), basis((5, 1)), cfg)


def test_safe_basis():
    cfg = RepConfig(3, 3, -6, 9)
    vecs = safe_basis(cfg, (1, 1, 1), 3)
    assert (1, 2, 3) in vecs
    # interior [-3, 6]: residues 1, 2, 3 have 3, 3, 4 values; 3! orders
    assert len(vecs) == 6 * 3 * 3 * 4
    brute = [(a, b, c) for a in range(-3, 7) for b in range(-3, 7) for c in range(-3, 7)
             if weight_of((a, b, c), 3) == (1, 1, 1)]
    assert sorted(vecs) == sorted(brute)
    with pytest.raises(EmptySafeInterior):
        safe_basis(cfg, (1, 1, 1), 8)


def test_verify_pair_examples():
    cat = schur_relation_catalog(3, 3)
    cfg = RepConfig.auto(3, 3, 3)
    rel1 = next(p for p in cat if p.id == "rel1[λ=(1,1,1),μ=(1,1,1)]")
    rep = verify_pair(rel1, cfg, suite="presentation")
    assert rep.passed and rep.vectors > 0
    (iii,) = [p for p in delta_relation_catalog(3) if p.id == "iii[+-]"]
    assert verify_pair(iii, RepConfig.auto(3, 3, 2)).passed
    bad = RelationPair("bad", rel1.lhs, rel1.rhs * q, 3, 3)
    rep = verify_pair(bad, cfg, suite="presentation")
    assert not rep.passed
    assert rep.witness["residual"] == "-q + 1"
    data = json.loads(json.dumps(rep.to_json()))
    assert data["status"] == "fail" and data["lambda"] == "(1,1,1)"
    assert set(data) == {"suite", "relation", "lambda", "vectors", "status", "witness"}


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_truncation_soundness(seed):
    import random
    rng = random.Random(seed)
    cat = schur_relation_catalog(3, 3) + delta_relation_catalog(3)
    p = rng.choice(cat)
    cfg = RepConfig.auto(3, 3, max(1, p.max_span()))
    small, large = {}, {}
    a = verify_pair(p, cfg, stop_at_first=False, collect=small)
    b = verify_pair(p, cfg.doubled(), stop_at_first=False, collect=large)
    assert a.status == b.status
    assert all(large[v] == small[v] for v in small)


def test_format_state():
    s = {(2, 3): q + 1, (1, 1): -ONE}
    assert format_state(s) == "-e1⊗e1 + (q + 1)·e2⊗e3"
    assert format_state({}) == "0"
