import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qschur.bubblecalc import (
    CCW,
    CW,
    MIRRORED,
    STANDARD,
    WRONG_SIGN,
    BubblePoly,
    BubbleSym,
    DigonState,
    UnsupportedSymbol,
    bubble,
    bubble_checks,
    cw_in_ccw,
    digon_closed_form_y,
    digon_closed_form_z,
    digon_reduce_recursive,
    grassmannian_convert,
    slide_convert,
    y_poly,
    z_poly,
)


def ccw(c, a):
    return bubble(c, CCW, a)


def cw(c, a):
    return bubble(c, CW, a)


def test_degree_zero_and_negative():
    assert ccw(1, 0) == -1
    assert cw(1, 0) == 1
    assert cw(2, -1).is_zero()


def test_grassmannian_low_degrees():
    assert cw_in_ccw(1, 1) == ccw(1, 1)
    assert cw_in_ccw(1, 2) == ccw(1, 2) + ccw(1, 1) * ccw(1, 1)
    series = [ccw(2, a) for a in range(5)]
    out = grassmannian_convert(series)
    assert out[0] == 1
    for b in range(5):
        total = sum((series[b - a] * out[a] for a in range(b + 1)), BubblePoly())
        assert total == (-1 if b == 0 else 0)


def test_grassmannian_involution():
    series = [ccw(3, a) for a in range(7)]
    assert grassmannian_convert(grassmannian_convert(series)) == series


def test_boxes():
    assert z_poly(2, 2, 4).is_zero()
    assert z_poly(1, 2, 4) == -ccw(1, 1)
    assert z_poly(3, 2, 4) == -(ccw(1, 1) + ccw(4, 1) + ccw(3, 1))
    assert y_poly(3, 2, 4).is_zero()
    assert y_poly(4, 2, 4) == -cw(4, 1)
    for n in (3, 4, 5):
        for i in range(1, n + 1):
            assert y_poly(i - 1, i, n).equals(z_poly(i + 2, i, n))


def test_digon_examples():
    assert digon_reduce_recursive(DigonState(1, 3, (0, 0, 0))) == 1
    assert digon_reduce_recursive(DigonState(2, 4, (0, 3, 0, 0))) == cw(2, 3)
    d = DigonState(2, 4, (0, 0, 1, 0))
    assert digon_reduce_recursive(d) == cw(2, 1) + z_poly(3, 2, 4) * cw(2, 0)
    assert digon_closed_form_y(DigonState(1, 3, (0, 0, 0))) == -1


@pytest.mark.parametrize("s,t", [(1, 0), (2, 1), (3, 2)])
def test_single_strand_closed_forms(s, t):
    from math import comb
    n, i, m = 4, 2, 4
    d = DigonState(i, n, (0, t, 0, s))
    expected = sum((cw(i, s + t - j) * z_poly(m, i, n) ** j * comb(s, j) for j in range(s + 1)),
                   BubblePoly())
    assert digon_closed_form_z(d) == expected
    # y side: t dots on strand m, s on strand i+1
    d = DigonState(i, n, (0, 0, s, t))
    expected = sum((ccw(3, s + t - j) * y_poly(m, i, n) ** j * comb(t, j) for j in range(t + 1)),
                   BubblePoly())
    assert digon_closed_form_y(d) == expected


states = st.integers(3, 5).flatmap(
    lambda n: st.builds(DigonState, st.integers(1, n), st.just(n),
                        st.lists(st.integers(0, 2), min_size=n, max_size=n).map(tuple)))


@given(states)
def test_recursive_equals_closed(d):
    assert digon_reduce_recursive(d) == digon_closed_form_z(d)


@settings(max_examples=30, deadline=None)
@given(states)
def test_z_form_slides_to_y_form(d):
    slid = slide_convert(digon_closed_form_z(d), "->", d.i, d.n)
    assert slid.equals(digon_closed_form_y(d))
    back = slide_convert(slid, "<-", d.i, d.n)
    assert back.equals(digon_closed_form_z(d))


def test_slide_at_s1():
    n, i = 4, 2
    out = slide_convert(ccw(3, 1), "<-", i, n)
    assert out == cw(2, 1) + z_poly(3, i, n) * cw(2, 0)


def test_slide_rejects_other_symbols():
    with pytest.raises(UnsupportedSymbol):
        slide_convert(ccw(2, 2), "->", 2, 4)
    with pytest.raises(UnsupportedSymbol):
        slide_convert(cw(2, 1) * cw(2, 2), "->", 2, 4)
    with pytest.raises(ValueError):
        slide_convert(cw(2, 1), "sideways", 2, 4)


def test_render():
    p = ccw(3, 1) * ccw(1, 1) * -1 + cw(2, 2) * 2
    assert str(p) == "2·cw[2]_2 - 1·ccw[1]_1·ccw[3]_1"
    assert str(BubblePoly()) == "0"
    assert str(BubblePoly.const(-3)) == "-3"


def test_symbols_need_positive_offset():
    with pytest.raises(ValueError):
        BubbleSym(1, CW, 0)


def test_battery_standard_and_mirrored():
    for conv in (STANDARD, MIRRORED):
        results = bubble_checks(ns=(3, 4), max_dots=3, conv=conv)
        assert all(r.passed for r in results), [r.id for r in results if not r.passed]


def test_wrong_convention_fails_with_witness():
    results = bubble_checks(ns=(3,), max_dots=2, conv=WRONG_SIGN)
    failed = {r.id: r for r in results if not r.passed}
    assert "boxes:y[i-1]=z[i+2]" in failed
    assert "grassmannian:identity" in failed
    assert failed["grassmannian:identity"].witness["sum"] == "1"
