import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qschur.qarith import (
    LaurentPoly,
    NotDivisible,
    PolyParseError,
    RatFunc,
    exact_divide,
    q,
    quantum_binomial,
    quantum_factorial,
    quantum_int,
)

P = LaurentPoly.parse

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(LaurentPoly)
nonzero = polys.filter(lambda p: not p.is_zero())


def brute_qint(a):
    # (q^a - q^-a) / (q - q^-1) by summing the geometric series directly
    if a == 0:
        return LaurentPoly()
    sign = 1 if a > 0 else -1
    a = abs(a)
    return LaurentPoly({a - 1 - 2 * k: sign for k in range(a)})


def test_quantum_int_examples():
    assert quantum_int(0) == 0
    assert quantum_int(2) == P("q + q^-1")
    assert quantum_int(3) == P("q^2 + 1 + q^-2")
    assert quantum_int(-2) == -quantum_int(2)


@given(st.integers(-8, 8))
def test_quantum_int_matches_definition(a):
    assert quantum_int(a) == brute_qint(a)
    assert quantum_int(a) * (q - q ** -1) == q ** a - q ** -a


def test_quantum_factorial_examples():
    assert quantum_factorial(0) == 1
    assert quantum_factorial(2) == P("q + q^-1")
    assert quantum_factorial(3) == P("q^3 + 2q + 2q^-1 + q^-3")
    with pytest.raises(ValueError):
        quantum_factorial(-1)


def test_quantum_binomial_examples():
    assert quantum_binomial(2, 1) == P("q + q^-1")
    assert quantum_binomial(0, 0) == 1
    assert quantum_binomial(4, 2) == P("q^4 + q^2 + 2 + q^-2 + q^-4")


@given(st.integers(1, 8), st.integers(1, 7))
def test_q_pascal(a, b):
    # [a b] = q^-b [a-1 b] + q^(a-b) [a-1 b-1]
    lhs = quantum_binomial(a, b)
    rhs = q ** -b * quantum_binomial(a - 1, b) + q ** (a - b) * quantum_binomial(a - 1, b - 1)
    assert lhs == rhs


def test_exact_divide_examples():
    assert exact_divide(P("q^2 - q^-2"), P("q - q^-1")) == P("q + q^-1")
    assert exact_divide(P("q + q^-1"), P("q + q^-1")) == 1
    f3 = quantum_factorial(3)
    assert exact_divide(f3 * q ** 5, f3) == q ** 5
    with pytest.raises(NotDivisible):
        exact_divide(P("q + 2"), P("q + q^-1"))


@given(polys, nonzero)
def test_exact_divide_inverts_multiplication(p, d):
    assert exact_divide(p * d, d) == p


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a
    assert a - a == 0


@given(polys)
def test_canonical_string_roundtrip(p):
    assert P(str(p)) == p
    assert p.bar().bar() == p


def test_string_forms():
    assert str(P("q^2 + 1 - q^-2")) == "q^2 + 1 - q^-2"
    assert str(P("2*q")) == "2q"
    assert str(LaurentPoly()) == "0"
    assert str(P("-q^(-3) + q")) == "q - q^-3"


def test_parse_error_position():
    with pytest.raises(PolyParseError) as exc:
        P("q + + 2")
    assert exc.value.position >= 3


def test_ratfunc_normalizes():
    r = RatFunc(P("q^2 - 1"), P("q - 1"))
    assert r.is_laurent()
    assert r.to_laurent() == P("q + 1")
    assert RatFunc(1, quantum_int(2)) * quantum_int(2) == 1
    assert RatFunc(2, 4) == RatFunc(1, 2)
    assert RatFunc(q, q ** 3) == q ** -2


@settings(max_examples=50)
@given(polys, nonzero, polys, nonzero)
def test_ratfunc_field_ops(a, b, c, d):
    x, y = RatFunc(a, b), RatFunc(c, d)
    assert (x + y) - y == x
    assert x * y == RatFunc(a * c, b * d)
    if not y.is_zero():
        assert (x / y) * y == x
