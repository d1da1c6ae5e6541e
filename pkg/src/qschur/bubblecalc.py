"""
Formal bubble algebra at the region label (1, ..., 1).

Bubbles are indexed by color, orientation and *offset* a >= 0 (the number of
dots above the degree-zero count).  Offset-zero bubbles are scalars fixed by a
`Convention`; negative offsets vanish.  For each color the two orientations
are tied by the infinite Grassmannian relation

    sum_{a=0}^{b} ccw_{b-a} * cw_a = -delta_{b,0},

which `BubblePoly.canonical` uses to rewrite every clockwise symbol in terms
of counter-clockwise ones.

Digons are two-colored closed diagrams with dots on n strands colored
i, i-1, ..., i+1.  They reduce either to color-i clockwise bubbles with
z-box coefficients or to color-(i+1) counter-clockwise bubbles with y-box
coefficients; both reductions are implemented, recursively and in closed form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .weightlat import residue

__all__ = [
    "BubbleSym",
    "BubblePoly",
    "Convention",
    "STANDARD",
    "MIRRORED",
    "WRONG_SIGN",
    "UnsupportedSymbol",
    "bubble",
    "grassmannian_convert",
    "cw_in_ccw",
    "z_poly",
    "y_poly",
    "DigonState",
    "all_digon_states",
    "digon_reduce_recursive",
    "digon_closed_form_z",
    "digon_closed_form_y",
    "slide_convert",
    "BubbleCheck",
    "bubble_checks",
]

CW, CCW = "cw", "ccw"


@dataclass(frozen=True, order=True)
class BubbleSym:
    color: int
    orientation: str
    offset: int

    def __post_init__(self):
        if self.orientation not in (CW, CCW):
            raise ValueError(f"orientation must be 'cw' or 'ccw', got {self.orientation!r}")
        if self.offset < 1:
            raise ValueError("bubble symbols have offset >= 1; lower offsets are scalars")

    def __str__(self):
        return f"{self.orientation}[{self.color}]_{self.offset}"


@dataclass(frozen=True)
class Convention:
    """Values of the degree-zero bubbles (the same for every color)."""

    ccw0: int = -1
    cw0: int = 1

    def __post_init__(self):
        if self.ccw0 not in (1, -1) or self.cw0 not in (1, -1):
            raise ValueError("degree-zero bubble values must be +1 or -1")

    def scalar(self, orientation: str) -> int:
        return self.cw0 if orientation == CW else self.ccw0

    def describe(self) -> dict:
        return {"ccw0": self.ccw0, "cw0": self.cw0}


STANDARD = Convention(-1, 1)
MIRRORED = Convention(1, -1)
WRONG_SIGN = Convention(1, 1)


class UnsupportedSymbol(ValueError):
    pass


Monomial = tuple  # sorted tuple of BubbleSym, with repetition


class BubblePoly:
    """
    Integer polynomial in bubble symbols.  Equality via `==` is syntactic;
    use `equals` to compare modulo the Grassmannian relation.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        self.terms: dict[Monomial, int] = {}
        if terms:
            for m, c in terms.items():
                if c:
                    key = tuple(sorted(m))
                    v = self.terms.get(key, 0) + c
                    if v:
                        self.terms[key] = v
                    else:
                        self.terms.pop(key, None)

    @classmethod
    def const(cls, c: int) -> "BubblePoly":
        return cls({(): c})

    @classmethod
    def sym(cls, s: BubbleSym, coeff: int = 1) -> "BubblePoly":
        return cls({(s,): coeff})

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return self.terms.items()

    def symbols(self) -> set:
        return {s for m in self.terms for s in m}

    def __add__(self, other):
        if isinstance(other, int):
            other = BubblePoly.const(other)
        if not isinstance(other, BubblePoly):
            return NotImplemented
        out = BubblePoly()
        out.terms = dict(self.terms)
        for m, c in other.terms.items():
            v = out.terms.get(m, 0) + c
            if v:
                out.terms[m] = v
            else:
                out.terms.pop(m, None)
        return out

    __radd__ = __add__

    def __neg__(self):
        out = BubblePoly()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = BubblePoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            out = BubblePoly()
            if other:
                out.terms = {m: c * other for m, c in self.terms.items()}
            return out
        if not isinstance(other, BubblePoly):
            return NotImplemented
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                acc[key] = acc.get(key, 0) + c1 * c2
        out = BubblePoly()
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        out = BubblePoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BubblePoly.const(other)
        if not isinstance(other, BubblePoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def substitute(self, f) -> "BubblePoly":
        """Ring homomorphism sending each symbol s to f(s) (a BubblePoly)."""
        out = BubblePoly()
        cache: dict = {}
        for m, c in self.terms.items():
            term = BubblePoly.const(c)
            for s in m:
                if s not in cache:
                    cache[s] = f(s)
                term = term * cache[s]
            out = out + term
        return out

    def canonical(self, conv: Convention = STANDARD) -> "BubblePoly":
        """Rewrite every clockwise symbol through the Grassmannian relation."""
        return self.substitute(
            lambda s: cw_in_ccw(s.color, s.offset, conv) if s.orientation == CW else BubblePoly.sym(s))

    def equals(self, other: "BubblePoly", conv: Convention = STANDARD) -> bool:
        return (self - other).canonical(conv).is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
            body = "·".join(str(s) for s in m)
            a = abs(c)
            text = f"{a}·{body}" if body else str(a)
            parts.append(("-" if c < 0 else "+", text))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self):
        return f"BubblePoly({str(self)!r})"


def bubble(color: int, orientation: str, offset: int, conv: Convention = STANDARD) -> BubblePoly:
    """Bubble of the given offset: zero below 0, a scalar at 0, a symbol above."""
    if offset < 0:
        return BubblePoly()
    if offset == 0:
        return BubblePoly.const(conv.scalar(orientation))
    return BubblePoly.sym(BubbleSym(color, orientation, offset))


def grassmannian_convert(series: Sequence[BubblePoly], first: int | None = None) -> list[BubblePoly]:
    """
    Given a bubble series x_0, x_1, ..., x_N of one orientation (x_0 a scalar
    +-1), return the opposite-orientation series y_0, ..., y_N with
    sum_{a=0}^{b} x_{b-a} y_a = -delta_{b,0}.  `first` overrides y_0.
    """
    x0 = series[0]
    if not (x0 == 1 or x0 == -1):
        raise ValueError("the degree-zero entry of a bubble series must be +1 or -1")
    inv = 1 if x0 == 1 else -1
    ys = [BubblePoly.const(-inv if first is None else first)]
    for b in range(1, len(series)):
        acc = BubblePoly()
        for a in range(b):
            acc = acc + series[b - a] * ys[a]
        ys.append(acc * (-inv))
    return ys


@lru_cache(maxsize=None)
def cw_in_ccw(color: int, offset: int, conv: Convention = STANDARD) -> BubblePoly:
    """A clockwise bubble written in counter-clockwise symbols of the same color."""
    series = [bubble(color, CCW, a, conv) for a in range(offset + 1)]
    return grassmannian_convert(series, first=conv.cw0)[offset]


# --- boxes ----------------------------------------------------------------------

def _cyclic_down(start: int, stop: int, n: int) -> list[int]:
    """Colors start, start-1, ..., stop (mod n), both ends included."""
    out = [residue(start, n)]
    while out[-1] != residue(stop, n):
        out.append(residue(out[-1] - 1, n))
    return out


def z_poly(m: int, i: int, n: int) -> BubblePoly:
    """z_m = -(sum of offset-1 ccw bubbles of colors i-1, i-2, ..., m); z_i = 0."""
    m, i = residue(m, n), residue(i, n)
    if m == i:
        return BubblePoly()
    out = BubblePoly()
    for c in _cyclic_down(i - 1, m, n):
        out = out - BubblePoly.sym(BubbleSym(c, CCW, 1))
    return out


def y_poly(m: int, i: int, n: int) -> BubblePoly:
    """y_m = -(sum of offset-1 cw bubbles of colors m, m-1, ..., i+2); y_{i+1} = 0."""
    m, i = residue(m, n), residue(i, n)
    if m == residue(i + 1, n):
        return BubblePoly()
    out = BubblePoly()
    for c in _cyclic_down(m, i + 2, n):
        out = out - BubblePoly.sym(BubbleSym(c, CW, 1))
    return out


# --- digons ---------------------------------------------------------------------

@dataclass(frozen=True)
class DigonState:
    """Base color i, rank n, and dots[c-1] = number of dots on the strand of color c."""

    i: int
    n: int
    dots: tuple

    def __post_init__(self):
        if len(self.dots) != self.n:
            raise ValueError(f"need one dot count per color, got {len(self.dots)} for n={self.n}")
        if any(d < 0 for d in self.dots):
            raise ValueError("dot counts must be nonnegative")
        if not 1 <= self.i <= self.n:
            raise ValueError(f"base color {self.i} outside 1..{self.n}")
        object.__setattr__(self, "dots", tuple(self.dots))

    def get(self, c: int) -> int:
        return self.dots[residue(c, self.n) - 1]

    def with_dots(self, changes: Mapping[int, int]) -> "DigonState":
        d = list(self.dots)
        for c, delta in changes.items():
            d[residue(c, self.n) - 1] += delta
        return DigonState(self.i, self.n, tuple(d))

    def strand_order(self) -> list[int]:
        """Off-i strands in the order i-1, i-2, ..., i+1."""
        return [residue(self.i - k, self.n) for k in range(1, self.n)]


def all_digon_states(n: int, max_dots: int) -> list[DigonState]:
    out = []
    for i in range(1, n + 1):
        for dots in itertools.product(range(max_dots + 1), repeat=n):
            if sum(dots) <= max_dots:
                out.append(DigonState(i, n, dots))
    return out


def digon_reduce_recursive(d: DigonState, conv: Convention = STANDARD) -> BubblePoly:
    """
    Move dots off the strands i-1, i-2, ..., i+1 one at a time using
    D(.., s_m, ..) = D(s_i + 1, .., s_m - 1, ..) + z_m D(s_i, .., s_m - 1, ..).
    """
    return _reduce(d, conv)


@lru_cache(maxsize=None)
def _reduce(d: DigonState, conv: Convention) -> BubblePoly:
    for m in d.strand_order():
        if d.get(m) > 0:
            left = _reduce(d.with_dots({d.i: 1, m: -1}), conv)
            right = z_poly(m, d.i, d.n) * _reduce(d.with_dots({m: -1}), conv)
            return left + right
    return bubble(d.i, CW, d.get(d.i), conv)


def _closed_form(d: DigonState, special: int, box, orientation: str, conv: Convention) -> BubblePoly:
    total = sum(d.dots)
    others = [c for c in range(1, d.n + 1) if c != special]
    out = BubblePoly()
    boxes = {c: box(c) for c in others}
    for js in itertools.product(*(range(d.get(c) + 1) for c in others)):
        coeff = 1
        mono = BubblePoly.const(1)
        for c, j in zip(others, js):
            if j:
                coeff *= comb(d.get(c), j)
                mono = mono * boxes[c] ** j
        out = out + mono * bubble(special, orientation, total - sum(js), conv) * coeff
    return out


def digon_closed_form_z(d: DigonState, conv: Convention = STANDARD) -> BubblePoly:
    """Sum over j of prod binom(s_m, j_m) z_m^{j_m} times cw[i] at offset sum(s) - sum(j)."""
    return _closed_form(d, d.i, lambda c: z_poly(c, d.i, d.n), CW, conv)


def digon_closed_form_y(d: DigonState, conv: Convention = STANDARD) -> BubblePoly:
    """Sum over j of prod binom(s_m, j_m) y_m^{j_m} times ccw[i+1] at offset sum(s) - sum(j)."""
    i1 = residue(d.i + 1, d.n)
    return _closed_form(d, i1, lambda c: y_poly(c, d.i, d.n), CCW, conv)


# --- bubble slides ----------------------------------------------------------------

_FORWARD = ("->", "→", "forward")
_BACKWARD = ("<-", "←", "backward")


def slide_convert(p: BubblePoly, direction: str, i: int, n: int,
                  conv: Convention = STANDARD) -> BubblePoly:
    """
    Trade the family of color-i cw bubbles for color-(i+1) ccw bubbles (->)
    or back (<-), as a linear substitution in the family symbol:

        ->  cw[i]_s      = sum_j binom(s, j) y_i^j ccw[i+1]_{s-j}
        <-  ccw[i+1]_s   = sum_j binom(s, j) z_{i+1}^j cw[i]_{s-j}

    Every term must contain the family symbol at most once; a term without it
    carries the offset-zero family bubble.  Offset-1 box bubbles of the other
    colors are carried along the digon color identification
    ccw[c]_1 -> -cw[c+1]_1 (resp. cw[c]_1 -> -ccw[c-1]_1), which sends
    z_m to y_m - y_i.
    """
    i = residue(i, n)
    i1 = residue(i + 1, n)
    if direction in _FORWARD:
        fam_color, fam_or, new_color, new_or = i, CW, i1, CCW
        box_or, box_new_or, box_step = CCW, CW, 1
        shift = y_poly(i, i, n)
    elif direction in _BACKWARD:
        fam_color, fam_or, new_color, new_or = i1, CCW, i, CW
        box_or, box_new_or, box_step = CW, CCW, -1
        shift = z_poly(i1, i, n)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    fam0 = conv.scalar(fam_or)

    def image(s: int) -> BubblePoly:
        out = BubblePoly()
        for j in range(s + 1):
            out = out + shift ** j * bubble(new_color, new_or, s - j, conv) * comb(s, j)
        return out

    def box(sym: BubbleSym) -> BubblePoly:
        if sym.orientation != box_or or sym.offset != 1 or sym.color == fam_color:
            raise UnsupportedSymbol(f"{sym} is neither a family bubble nor a box for this slide")
        return BubblePoly.sym(BubbleSym(residue(sym.color + box_step, n), box_new_or, 1), -1)

    out = BubblePoly()
    for mono, c in p.items():
        fam = [s for s in mono if s.color == fam_color and s.orientation == fam_or]
        if len(fam) > 1:
            raise UnsupportedSymbol(f"term {mono} is not linear in the {fam_or}[{fam_color}] family")
        if fam:
            term = image(fam[0].offset)
        else:
            # the offset-zero family bubble was folded into the coefficient
            term = image(0) * fam0
        for s in mono:
            if not (s.color == fam_color and s.orientation == fam_or):
                term = term * box(s)
        out = out + term * c
    return out


# --- the invariant battery ---------------------------------------------------------

@dataclass
class BubbleCheck:
    id: str
    n: int
    cases: int
    passed: bool
    witness: dict | None = None


def _check(id_, n, cases: Iterable, predicate, describe) -> BubbleCheck:
    count = 0
    for case in cases:
        count += 1
        ok, info = predicate(case)
        if not ok:
            return BubbleCheck(id_, n, count, False, {"case": describe(case), **info})
    return BubbleCheck(id_, n, count, True)


def bubble_checks(ns: Sequence[int] = (3, 4, 5), max_dots: int = 4, max_degree: int = 6,
                  max_slide: int = 5, conv: Convention = STANDARD) -> list[BubbleCheck]:
    """
    Run the bubble invariants under `conv`:
      recursive = closed z-form, Pascal consistency, y_{i-1} = z_{i+2},
      the Grassmannian identity, involutivity of grassmannian_convert,
      mutually inverse slides, and slide(z-form) = y-form.
    """
    results = []
    for n in ns:
        states = all_digon_states(n, max_dots)
        colors = range(1, n + 1)

        def rec_vs_z(d):
            a, b = digon_reduce_recursive(d, conv), digon_closed_form_z(d, conv)
            return a.equals(b, conv), {"recursive": str(a), "closed": str(b)}

        results.append(_check("digon:recursive=closed_z", n, states, rec_vs_z,
                               lambda d: {"i": d.i, "dots": list(d.dots)}))

        def pascal(case):
            i, m, t, s = case
            zero = [0] * n
            d = DigonState(i, n, tuple(zero)).with_dots({i: t, m: s})
            lhs = digon_closed_form_z(d, conv)
            rhs = (digon_closed_form_z(d.with_dots({i: 1, m: -1}), conv)
                   + z_poly(m, i, n) * digon_closed_form_z(d.with_dots({m: -1}), conv))
            return lhs.equals(rhs, conv), {"lhs": str(lhs), "rhs": str(rhs)}

        pascal_cases = [(i, m, t, s) for i in colors for m in colors if m != i
                        for t in range(3) for s in range(1, 6)]
        results.append(_check("digon:pascal", n, pascal_cases, pascal,
                               lambda c: {"i": c[0], "m": c[1], "t": c[2], "s": c[3]}))

        def y_eq_z(i):
            a, b = y_poly(i - 1, i, n), z_poly(i + 2, i, n)
            return a.equals(b, conv), {"y": str(a.canonical(conv)), "z": str(b.canonical(conv))}

        results.append(_check("boxes:y[i-1]=z[i+2]", n, colors, y_eq_z, lambda i: {"i": i}))

        def grassmann(case):
            c, b = case
            total = BubblePoly()
            for a in range(b + 1):
                total = total + bubble(c, CCW, b - a, conv) * bubble(c, CW, a, conv)
            total = total.canonical(conv)
            expected = BubblePoly.const(-1 if b == 0 else 0)
            return total == expected, {"sum": str(total)}

        results.append(_check("grassmannian:identity", n,
                               [(c, b) for c in colors for b in range(max_degree + 1)],
                               grassmann, lambda c: {"color": c[0], "b": c[1]}))

        def involution(c):
            ccw = [bubble(c, CCW, a, conv) for a in range(max_degree + 1)]
            cw = grassmannian_convert(ccw)
            back = grassmannian_convert(cw)
            agree = all(x == y for x, y in zip(back, ccw))
            matches = all(cw[a] == cw_in_ccw(c, a, conv) for a in range(1, max_degree + 1))
            return agree and matches, {"ccw->cw->ccw": [str(x) for x in back]}

        results.append(_check("grassmannian:involution", n, colors, involution,
                               lambda c: {"color": c}))

        def inverse(case):
            i, s = case
            i1 = residue(i + 1, n)
            for p in (bubble(i, CW, s, conv),):
                there = slide_convert(p, "->", i, n, conv)
                back = slide_convert(there, "<-", i, n, conv)
                if not back.equals(p, conv):
                    return False, {"input": str(p), "roundtrip": str(back)}
            q = bubble(i1, CCW, s, conv)
            back = slide_convert(slide_convert(q, "<-", i, n, conv), "->", i, n, conv)
            if not back.equals(q, conv):
                return False, {"input": str(q), "roundtrip": str(back)}
            return True, {}

        results.append(_check("slides:mutually_inverse", n,
                               [(i, s) for i in colors for s in range(max_slide + 1)],
                               inverse, lambda c: {"i": c[0], "offset": c[1]}))

        def z_vs_y(d):
            zf = digon_closed_form_z(d, conv)
            yf = digon_closed_form_y(d, conv)
            slid = slide_convert(zf, "->", d.i, n, conv)
            return slid.equals(yf, conv), {"slid_z": str(slid.canonical(conv)),
                                           "y": str(yf.canonical(conv))}

        results.append(_check("digon:z_form=y_form", n, states, z_vs_y,
                               lambda d: {"i": d.i, "dots": list(d.dots)}))
    return results
