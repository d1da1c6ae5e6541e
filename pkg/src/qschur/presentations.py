"""
Generators, words and elements of the affine q-Schur algebras, plus catalogs
of their defining relations.

A word is a plain tuple of generators read as an operator product: the
rightmost generator acts first.  An `Element` is a finite Q(q)-linear
combination of words.

Catalog entries are `RelationPair`s (lhs, rhs) that the tensor-space oracle in
`qschur.fockrep` can check.  Idempotents outside Lambda(n, r) are written as
the zero element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence, Union

from .qarith import (
    LaurentPoly,
    PolyParseError,
    RatFunc,
    as_ratfunc,
    quantum_factorial,
    quantum_int,
)
from .weightlat import (
    Weight,
    add,
    enumerate_compositions,
    format_weight,
    is_composition,
    ones,
    residue,
    root,
    rotate,
    scale,
    sub,
    unrotate,
)

__all__ = [
    "E",
    "DividedPower",
    "Idem",
    "RShift",
    "EDelta",
    "DividedWord",
    "EPlus",
    "EMinus",
    "divided_power",
    "Element",
    "RelationPair",
    "ParseError",
    "UnknownColor",
    "UnmappedGenerator",
    "lambda_shift",
    "word_shift",
    "word_span",
    "word_source",
    "word_vanishes",
    "render_word",
    "schur_relation_catalog",
    "delta_relation_catalog",
    "r_corollary_catalog",
    "r_expansion",
    "r_expansion_terms",
    "r_expansion_catalog",
    "R_ORDERS",
    "expand_divided_powers",
    "iota_image",
    "iota_element",
    "iota_relation",
    "parse_element",
]


# --- generators --------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class E:
    """Chevalley generator E_{+i} (sign=+1) or E_{-i} (sign=-1)."""

    sign: int
    color: int

    def __str__(self):
        return f"E{'-' if self.sign < 0 else ''}{self.color}"


@dataclass(frozen=True, slots=True)
class DividedPower:
    """E_{+-i}^{(a)} = E_{+-i}^a / [a]!, kept unexpanded; a >= 2."""

    sign: int
    color: int
    power: int

    def __str__(self):
        return f"E{'-' if self.sign < 0 else ''}{self.color}^({self.power})"


@dataclass(frozen=True, slots=True)
class Idem:
    weight: Weight

    def __str__(self):
        return "1_" + format_weight(self.weight)


@dataclass(frozen=True, slots=True)
class RShift:
    """R (sign=+1) or R^-1 (sign=-1)."""

    sign: int

    def __str__(self):
        return "R" if self.sign > 0 else "R^-1"


@dataclass(frozen=True, slots=True)
class EDelta:
    """E_{+delta} (sign=+1) or E_{-delta} (sign=-1)."""

    sign: int

    def __str__(self):
        return "Ed" if self.sign > 0 else "E-d"


@dataclass(frozen=True, slots=True)
class DividedWord:
    """(w)^a / [a]! for a word w of E-generators; images of divided powers under iota."""

    factors: tuple
    power: int

    def __str__(self):
        return "(" + " ".join(str(g) for g in self.factors) + f")^({self.power})"


Generator = Union[E, DividedPower, Idem, RShift, EDelta, DividedWord]
Word = tuple


def EPlus(i: int) -> E:
    return E(1, i)


def EMinus(i: int) -> E:
    return E(-1, i)


def divided_power(sign: int, color: int, a: int) -> Generator:
    if a < 1:
        raise ValueError(f"divided power exponent must be >= 1, got {a}")
    if a == 1:
        return E(sign, color)
    return DividedPower(sign, color, a)


def render_word(word: Sequence[Generator]) -> str:
    return " ".join(str(g) for g in word) if word else "1"


class ParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownColor(ParseError):
    pass


class UnmappedGenerator(ValueError):
    pass


# --- weight bookkeeping ------------------------------------------------------

def lambda_shift(seq: Iterable[int], n: int) -> Weight:
    """Sum of sign(k) * alpha_|k| over a signed sequence such as (+1, -2)."""
    total = (0,) * n
    for k in seq:
        if k == 0:
            raise ValueError("signed sequence entries must be nonzero")
        total = add(total, scale(1 if k > 0 else -1, root(abs(k), n)))
    return total


def _gen_shift(g: Generator, n: int) -> Weight | None:
    if isinstance(g, E):
        return scale(g.sign, root(g.color, n))
    if isinstance(g, DividedPower):
        return scale(g.sign * g.power, root(g.color, n))
    if isinstance(g, (Idem, EDelta)):
        return (0,) * n
    if isinstance(g, DividedWord):
        total = (0,) * n
        for f in g.factors:
            total = add(total, _gen_shift(f, n))
        return scale(g.power, total)
    return None


def word_shift(word: Sequence[Generator], n: int) -> Weight | None:
    """Total weight shift of a word, or None if it contains R^{+-1}."""
    total = (0,) * n
    for g in word:
        s = _gen_shift(g, n)
        if s is None:
            return None
        total = add(total, s)
    return total


def word_span(word: Sequence[Generator]) -> int:
    """How far (in t) a word can move a single tensor leg."""
    span = 0
    for g in word:
        if isinstance(g, (E, RShift, EDelta)):
            span += 1
        elif isinstance(g, DividedPower):
            span += g.power
        elif isinstance(g, DividedWord):
            span += g.power * word_span(g.factors)
    return span


def word_source(word: Sequence[Generator], n: int) -> Weight | None:
    """
    The weight a vector must have for the word not to vanish because of its
    rightmost idempotent; None if the word has no idempotent.
    """
    ops = []  # generators to the right of the current position, rightmost last
    for g in reversed(word):
        if isinstance(g, Idem):
            w = g.weight
            for op in reversed(ops):
                if isinstance(op, RShift):
                    w = unrotate(w) if op.sign > 0 else rotate(w)
                else:
                    w = sub(w, _gen_shift(op, n))
            return w
        ops.append(g)
    return None


def word_vanishes(word: Sequence[Generator], n: int) -> bool:
    """
    True if the word is zero for weight reasons alone: two idempotents that
    disagree, an intermediate weight with a negative entry, or E_{+-delta}
    applied away from (1, ..., 1).
    """
    cur = None
    for g in reversed(word):
        if isinstance(g, Idem):
            if cur is not None and cur != tuple(g.weight):
                return True
            cur = tuple(g.weight)
        elif cur is None:
            continue
        elif isinstance(g, RShift):
            cur = rotate(cur) if g.sign > 0 else unrotate(cur)
        elif isinstance(g, EDelta):
            if cur != ones(n):
                return True
        else:
            cur = add(cur, _gen_shift(g, n))
        if cur is not None and min(cur) < 0:
            return True
    return False


# --- elements ----------------------------------------------------------------

Scalar = Union[int, LaurentPoly, RatFunc]


class Element:
    """
    Finite linear combination of words with Q(q) coefficients.

    Multiplication of elements concatenates words; no rewriting is done.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, Scalar] | None = None):
        self.terms: dict[Word, RatFunc] = {}
        if terms:
            for w, c in terms.items():
                self._accumulate(tuple(w), as_ratfunc(c))

    def _accumulate(self, w: Word, c: RatFunc):
        if c.is_zero():
            return
        old = self.terms.get(w)
        if old is None:
            self.terms[w] = c
        else:
            s = old + c
            if s.is_zero():
                del self.terms[w]
            else:
                self.terms[w] = s

    @classmethod
    def of(cls, *gens: Generator, coeff: Scalar = 1) -> "Element":
        return cls({tuple(gens): coeff})

    @classmethod
    def zero(cls) -> "Element":
        return cls()

    @classmethod
    def one(cls) -> "Element":
        return cls({(): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def words(self) -> list[Word]:
        return list(self.terms)

    def items(self):
        return self.terms.items()

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        out = Element()
        out.terms = dict(self.terms)
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    def __neg__(self) -> "Element":
        out = Element()
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "Element":
        if isinstance(other, Element):
            out = Element()
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    out._accumulate(w1 + w2, c1 * c2)
            return out
        if isinstance(other, (int, LaurentPoly, RatFunc)):
            c = as_ratfunc(other)
            out = Element()
            for w, v in self.terms.items():
                out._accumulate(w, v * c)
            return out
        return NotImplemented

    def __rmul__(self, other) -> "Element":
        if isinstance(other, (int, LaurentPoly, RatFunc)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def max_span(self) -> int:
        return max((word_span(w) for w in self.terms), default=0)

    def prune(self, n: int) -> "Element":
        """Drop words that vanish for weight reasons (see `word_vanishes`)."""
        out = Element()
        out.terms = {w: c for w, c in self.terms.items() if not word_vanishes(w, n)}
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k, (w, c) in enumerate(self.terms.items()):
            body = render_word(w)
            if c == 1:
                sign, text = "+", body
            elif c == -1:
                sign, text = "-", body
            else:
                sign, text = "+", f"({c.num})" + (f"/({c.den})" if not c.is_laurent() else "") + f" {body}"
            if k == 0:
                out.append(text if sign == "+" else f"-{text}")
            else:
                out.append(f" {sign} {text}")
        return "".join(out)

    def __repr__(self):
        return f"Element({str(self)!r})"


def _el(*gens: Generator, coeff: Scalar = 1) -> Element:
    return Element.of(*gens, coeff=coeff)


# --- relation pairs ----------------------------------------------------------

@dataclass
class RelationPair:
    """
    A relation lhs = rhs in S(n, r).

    `sources` lists the weights whose basis vectors the oracle must test;
    None means every weight in Lambda(n, r).
    """

    id: str
    lhs: Element
    rhs: Element
    n: int
    r: int
    sources: tuple | None = field(default=None)

    def __post_init__(self):
        if self.sources is None:
            self.sources = _infer_sources(self.lhs, self.rhs, self.n)

    @property
    def ambient(self) -> tuple[int, int]:
        return (self.n, self.r)

    def difference(self) -> Element:
        return self.lhs - self.rhs

    def max_span(self) -> int:
        return max(self.lhs.max_span(), self.rhs.max_span())


def _infer_sources(lhs: Element, rhs: Element, n: int) -> tuple | None:
    found = set()
    for w in list(lhs.terms) + list(rhs.terms):
        s = word_source(w, n)
        if s is None:
            return None
        found.add(s)
    return tuple(sorted(found)) if found else None


def _idem_or_zero(lam: Weight, n: int, r: int) -> Idem | None:
    return Idem(tuple(lam)) if is_composition(lam, n, r) else None


def _adjacent(i: int, j: int, n: int) -> bool:
    return residue(i - j, n) in (1, n - 1)


def schur_relation_catalog(n: int, r: int) -> list[RelationPair]:
    """Every instance of the Doty-Green relations rel1-rel5 over Lambda(n, r)."""
    if n < 3:
        raise ValueError("rank n must be at least 3")
    if r > n:
        raise ValueError("only the regime r <= n is supported")
    lams = enumerate_compositions(n, r)
    qint2 = quantum_int(2)
    out: list[RelationPair] = []

    for lam in lams:
        for mu in lams:
            rhs = _el(Idem(lam)) if lam == mu else Element.zero()
            out.append(RelationPair(
                f"rel1[λ={format_weight(lam)},μ={format_weight(mu)}]",
                _el(Idem(lam), Idem(mu)), rhs, n, r))

    for s in (1, -1):
        sg = "+" if s > 0 else "-"
        for i in range(1, n + 1):
            for lam in lams:
                g = E(s, i)
                target = _idem_or_zero(add(lam, scale(s, root(i, n))), n, r)
                rhs = _el(target, g) if target else Element.zero()
                out.append(RelationPair(
                    f"rel2[{sg},i={i},λ={format_weight(lam)}]",
                    _el(g, Idem(lam)), rhs, n, r, sources=(lam,)))

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for lam in lams:
                one = Idem(lam)
                lhs = _el(E(1, i), E(-1, j), one) - _el(E(-1, j), E(1, i), one)
                if i == j:
                    c = quantum_int(lam[i - 1] - lam[residue(i + 1, n) - 1])
                    rhs = _el(one, coeff=c)
                else:
                    rhs = Element.zero()
                out.append(RelationPair(
                    f"rel3[i={i},j={j},λ={format_weight(lam)}]", lhs, rhs, n, r,
                    sources=(lam,)))

    for s in (1, -1):
        sg = "+" if s > 0 else "-"
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    continue
                a, b = E(s, i), E(s, j)
                for lam in lams:
                    one = Idem(lam)
                    if _adjacent(i, j, n):
                        lhs = (_el(a, a, b, one) - _el(a, b, a, one, coeff=qint2)
                               + _el(b, a, a, one))
                        tag = "rel4"
                    else:
                        lhs = _el(a, b, one) - _el(b, a, one)
                        tag = "rel5"
                    out.append(RelationPair(
                        f"{tag}[{sg},i={i},j={j},λ={format_weight(lam)}]",
                        lhs, Element.zero(), n, r, sources=(lam,)))
    return out


def _descending(i: int, n: int) -> list[int]:
    """Colors i-1, i-2, ..., 1, n, ..., i+1."""
    return [residue(i - k, n) for k in range(1, n)]


def _ascending(i: int, n: int) -> list[int]:
    """Colors i+1, ..., n, 1, ..., i-1."""
    return [residue(i + k, n) for k in range(1, n)]


def delta_relation_catalog(n: int) -> list[RelationPair]:
    """Relations (i)-(xi) for S(n, n) with the extra generators E_{+-delta}."""
    if n < 3:
        raise ValueError("rank n must be at least 3")
    r = n
    one_n = Idem(ones(n))
    Ed, Emd = EDelta(1), EDelta(-1)
    out: list[RelationPair] = []

    def rel(tag, lhs, rhs, sources=None):
        out.append(RelationPair(tag, lhs, rhs, n, r, sources=sources))

    for lam in enumerate_compositions(n, n):
        if lam == ones(n):
            continue
        for d, sg in ((Ed, "+"), (Emd, "-")):
            rel(f"i[{sg},right,λ={format_weight(lam)}]", _el(d, Idem(lam)), Element.zero(),
                sources=(lam,))
            rel(f"i[{sg},left,λ={format_weight(lam)}]", _el(Idem(lam), d), Element.zero(),
                sources=(lam,))
    for d, sg in ((Ed, "+"), (Emd, "-")):
        rel(f"ii[{sg}]", _el(d, one_n), _el(one_n, d), sources=(ones(n),))
    rel("iii[+-]", _el(Ed, Emd, one_n), _el(one_n))
    rel("iii[-+]", _el(Emd, Ed, one_n), _el(one_n))

    for i in range(1, n + 1):
        down = [E(1, c) for c in _descending(i, n)]
        up = [E(-1, c) for c in _ascending(i, n)]
        Ei, Emi = E(1, i), E(-1, i)
        Ei2, Emi2 = DividedPower(1, i, 2), DividedPower(-1, i, 2)
        rel(f"iv[i={i}]", _el(Ei, Ed, one_n), _el(Ei2, *down, one_n))
        rel(f"v[i={i}]", _el(one_n, Ed, Ei), _el(one_n, *down, Ei2))
        rel(f"vi[i={i}]", _el(Emi, Ed, one_n), _el(*down, one_n))
        rel(f"vii[i={i}]", _el(one_n, Ed, Emi), _el(one_n, *down))
        rel(f"viii[i={i}]", _el(Emi, Emd, one_n), _el(Emi2, *up, one_n))
        rel(f"ix[i={i}]", _el(one_n, Emd, Emi), _el(one_n, *up, Emi2))
        rel(f"x[i={i}]", _el(Ei, Emd, one_n), _el(*up, one_n))
        rel(f"xi[i={i}]", _el(one_n, Emd, Ei), _el(one_n, *up))
    return out


def r_corollary_catalog(n: int) -> list[RelationPair]:
    """R R^-1 = R^-1 R = 1, R E_{+-i} R^-1 = E_{+-(i+1)}, R 1_lam R^-1 = 1_{rot(lam)}."""
    r = n
    R, Rinv = RShift(1), RShift(-1)
    lams = enumerate_compositions(n, n)
    out = [
        RelationPair("R·R^-1", _el(R, Rinv), Element.one(), n, r),
        RelationPair("R^-1·R", _el(Rinv, R), Element.one(), n, r),
    ]
    for s in (1, -1):
        sg = "+" if s > 0 else "-"
        for i in range(1, n + 1):
            for lam in lams:
                out.append(RelationPair(
                    f"R·E{sg}{i}·R^-1[λ={format_weight(lam)}]",
                    _el(R, E(s, i), Rinv, Idem(lam)),
                    _el(E(s, residue(i + 1, n)), Idem(lam)), n, r, sources=(lam,)))
    for lam in lams:
        out.append(RelationPair(
            f"R·1·R^-1[λ={format_weight(lam)}]",
            _el(R, Idem(lam), Rinv), _el(Idem(rotate(lam))), n, r,
            sources=(rotate(lam),)))
    return out


# --- the R^{+-1} expansion ----------------------------------------------------

R_ORDERS = ("printed", "corrected")


def r_expansion_terms(n: int, sign: int, order: str = "printed") -> dict[Weight, Word]:
    """
    The monomial of R^{sign} supported on each idempotent of Lambda(n, n).

    For a composition a with a zero entry only one summand is kept, the one
    with i = min{j : a_j = 0}.  With `order="printed"` the factors appear as
    E^{(a_{i-1})}_{i-1} ... E^{(a_1)}_1 E^{(a_n)}_n ... E^{(a_{i+1})}_{i+1}
    (E_{-c} in place of E_c for R).

    `order="corrected"` reverses the factors of the R monomials, so that the
    raising operators act in decreasing color order and move each tensor leg
    exactly once.  The R^-1 monomials are the same in both orders.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order not in R_ORDERS:
        raise ValueError(f"unknown order {order!r}")
    out: dict[Weight, Word] = {}
    for lam in enumerate_compositions(n, n):
        if lam == ones(n):
            out[lam] = (EDelta(-sign), Idem(lam))
            continue
        # R^-1 has idempotent (a_n, a_1, ..., a_{n-1}); R has (a_1, ..., a_n)
        a = unrotate(lam) if sign < 0 else lam
        i = 1 + a.index(0)
        gen_sign = 1 if sign < 0 else -1
        factors = [divided_power(gen_sign, c, a[c - 1])
                   for c in _descending(i, n) if a[c - 1] > 0]
        if order == "corrected" and sign > 0:
            factors.reverse()
        out[lam] = tuple(factors) + (Idem(lam),)
    return out


def r_expansion(n: int, sign: int, order: str = "printed") -> Element:
    """R^{sign} as E_{-sign*delta} 1_n plus one divided-power monomial per idempotent."""
    total = Element.zero()
    for w in r_expansion_terms(n, sign, order).values():
        total = total + Element({w: 1})
    return total


def r_expansion_catalog(n: int, order: str = "printed") -> list[RelationPair]:
    """
    R^{+-1} 1_lam = (expansion monomial at lam) for every lam in Lambda(n, n),
    plus R^{-+1} (expansion of R^{+-1}) = 1.
    """
    out = []
    for sign in (-1, 1):
        tag = "R^-1" if sign < 0 else "R"
        for lam, word in r_expansion_terms(n, sign, order).items():
            out.append(RelationPair(
                f"{tag}·1[λ={format_weight(lam)}]",
                _el(RShift(sign), Idem(lam)), Element({word: 1}), n, n, sources=(lam,)))
    for sign in (-1, 1):
        tag = "R^-1" if sign < 0 else "R"
        inv = "R" if sign < 0 else "R^-1"
        out.append(RelationPair(
            f"{inv}·exp({tag})", Element.of(RShift(-sign)) * r_expansion(n, sign, order),
            Element.one(), n, n))
    return out


# --- divided powers -------------------------------------------------------------

def expand_divided_powers(word: Sequence[Generator]) -> Element:
    """Replace every E^{(a)} by E^a with coefficient 1/[a]!."""
    gens: list = []
    denom = LaurentPoly.constant(1)
    for g in word:
        if isinstance(g, DividedPower):
            gens.extend([E(g.sign, g.color)] * g.power)
            denom = denom * quantum_factorial(g.power)
        elif isinstance(g, DividedWord):
            gens.extend(list(g.factors) * g.power)
            denom = denom * quantum_factorial(g.power)
        else:
            gens.append(g)
    return Element({tuple(gens): RatFunc(1, denom)})


# --- the embedding iota_n : S(n, n) -> S(n+1, n) -------------------------------

def _iota_gen(g: Generator, n: int) -> tuple:
    if isinstance(g, Idem):
        return (Idem(tuple(g.weight) + (0,)),)
    if isinstance(g, E):
        if g.color < n:
            return (g,)
        return (E(1, n), E(1, n + 1)) if g.sign > 0 else (E(-1, n + 1), E(-1, n))
    if isinstance(g, DividedPower):
        if g.color < n:
            return (g,)
        inner = (E(1, n), E(1, n + 1)) if g.sign > 0 else (E(-1, n + 1), E(-1, n))
        return (DividedWord(inner, g.power),)
    if isinstance(g, EDelta):
        base = Idem(ones(n) + (0,))
        if g.sign > 0:
            return tuple(E(1, c) for c in range(n, 0, -1)) + (E(1, n + 1), base)
        return (E(-1, n + 1),) + tuple(E(-1, c) for c in range(1, n + 1)) + (base,)
    raise UnmappedGenerator(f"iota has no generator-wise image for {g}")


def iota_image(word: Sequence[Generator], n: int) -> Word:
    """Generator-wise image of a word under iota_n; R^{+-1} must be rewritten first."""
    out: list = []
    for g in word:
        out.extend(_iota_gen(g, n))
    return tuple(out)


def iota_element(elem: Element, n: int, rewrite_r: bool = True) -> Element:
    """
    Image of an element under iota_n.  Words containing R^{+-1} are first
    rewritten with `r_expansion` when `rewrite_r` is set.
    """
    total = Element.zero()
    rexp = {}
    for w, c in elem.items():
        if any(isinstance(g, RShift) for g in w):
            if not rewrite_r:
                raise UnmappedGenerator(f"word {render_word(w)} contains R; rewriting disabled")
            piece = Element.one()
            for g in w:
                if isinstance(g, RShift):
                    if g.sign not in rexp:
                        rexp[g.sign] = r_expansion(n, g.sign, order="corrected")
                    piece = piece * rexp[g.sign]
                else:
                    piece = piece * Element.of(g)
                piece = piece.prune(n)
            for w2, c2 in piece.items():
                total = total + Element({iota_image(w2, n): c * c2})
        else:
            total = total + Element({iota_image(w, n): c})
    return total


def iota_relation(p: RelationPair) -> RelationPair:
    """Map a relation of S(n, n) to S(n+1, n); test weights become (lam, 0)."""
    n = p.n
    if p.sources is None:
        sources = tuple(lam + (0,) for lam in enumerate_compositions(n, p.r))
    else:
        sources = tuple(tuple(lam) + (0,) for lam in p.sources)
    return RelationPair(f"ι({p.id})", iota_element(p.lhs, n), iota_element(p.rhs, n),
                        n + 1, p.r, sources=sources)


# --- parser ----------------------------------------------------------------------

_INT = re.compile(r"-?\d+")


class _ElementParser:
    def __init__(self, text: str, n: int, r: int | None):
        self.text = text
        self.n = n
        self.r = r
        self.pos = 0

    def error(self, msg, pos=None):
        return ParseError(msg, self.pos if pos is None else pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        return self.text.startswith(s, self.pos)

    def expect(self, s: str):
        if not self.peek(s):
            raise self.error(f"expected {s!r}")
        self.pos += len(s)

    def integer(self) -> int:
        m = _INT.match(self.text, self.pos)
        if not m:
            raise self.error("expected integer")
        self.pos = m.end()
        return int(m.group())

    def color(self) -> int:
        start = self.pos
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            raise self.error("expected color index")
        self.pos = m.end()
        c = int(m.group())
        if not 1 <= c <= self.n:
            raise UnknownColor(f"color {c} outside 1..{self.n}", start)
        return c

    def balanced(self) -> str:
        # contents of a parenthesized group starting at '('
        start = self.pos
        self.expect("(")
        depth = 1
        while self.pos < len(self.text) and depth:
            ch = self.text[self.pos]
            depth += (ch == "(") - (ch == ")")
            self.pos += 1
        if depth:
            raise self.error("unbalanced parenthesis", start)
        return self.text[start + 1:self.pos - 1]

    def poly(self) -> LaurentPoly:
        start = self.pos + 1
        body = self.balanced()
        try:
            return LaurentPoly.parse(body)
        except PolyParseError as exc:
            raise ParseError(f"bad coefficient: {exc}", start + exc.position) from None

    def gen(self):
        self.skip()
        start = self.pos
        if self.peek("1_("):
            self.pos += 2
            self.expect("(")
            entries = [self.integer()]
            self.skip()
            while self.peek(","):
                self.pos += 1
                self.skip()
                entries.append(self.integer())
                self.skip()
            self.expect(")")
            if len(entries) != self.n:
                raise self.error(f"idempotent needs {self.n} entries", start)
            if self.r is not None and not is_composition(entries, self.n, self.r):
                raise self.error(f"idempotent {format_weight(entries)} not in Λ({self.n},{self.r})", start)
            return Idem(tuple(entries))
        if self.peek("R^-1"):
            self.pos += 4
            return RShift(-1)
        if self.peek("R"):
            self.pos += 1
            return RShift(1)
        if self.peek("E-d"):
            self.pos += 3
            return EDelta(-1)
        if self.peek("Ed"):
            self.pos += 2
            return EDelta(1)
        if self.peek("E"):
            self.pos += 1
            sign = 1
            if self.peek("-"):
                sign = -1
                self.pos += 1
            c = self.color()
            if self.peek("^("):
                self.pos += 2
                a = self.integer()
                self.expect(")")
                if a < 1:
                    raise self.error("divided power exponent must be >= 1", start)
                return divided_power(sign, c, a)
            return E(sign, c)
        return None

    def term(self, sign: int) -> Element:
        self.skip()
        coeff: RatFunc = RatFunc(sign)
        if self.peek("("):
            num = self.poly()
            self.skip()
            if self.peek("/"):
                self.pos += 1
                self.skip()
                den = self.poly()
                coeff = coeff * RatFunc(num, den)
            else:
                coeff = coeff * RatFunc(num)
            self.skip()
        gens = []
        while True:
            g = self.gen()
            if g is None:
                break
            gens.append(g)
            self.skip()
        if not gens:
            if self.peek("1") and not self.peek("1_"):
                self.pos += 1
                self.skip()
                return Element({(): coeff})
            raise self.error("expected a generator")
        return Element({tuple(gens): coeff})

    def parse(self) -> Element:
        if self.text.strip() == "0":
            return Element.zero()
        self.skip()
        sign = 1
        if self.peek("-"):
            sign = -1
            self.pos += 1
        elif self.peek("+"):
            self.pos += 1
        total = self.term(sign)
        while True:
            self.skip()
            if self.pos >= len(self.text):
                break
            if self.peek("+"):
                sign = 1
            elif self.peek("-"):
                sign = -1
            else:
                raise self.error(f"unexpected {self.text[self.pos]!r}")
            self.pos += 1
            total = total + self.term(sign)
        return total


def parse_element(text: str, n: int, r: int | None = None) -> Element:
    """
    Parse an element such as ``"(q+q^-1) E1 E2^(2) 1_(1,1,1) - R E-3"``.

    Grammar::

        element := "0" | term { ("+"|"-") term }
        term    := [ "(" poly ")" [ "/(" poly ")" ] ] gen { gen }  |  "1"
        gen     := "E" ["-"] int [ "^(" int ")" ] | "1_(" int {"," int} ")"
                 | "R" | "R^-1" | "Ed" | "E-d"
    """
    return _ElementParser(text, n, r).parse()
