"""
Exact arithmetic over Z[q, q^-1] and its fraction field Q(q).

Everything in the package that looks like a scalar is one of the two types
defined here:

* `LaurentPoly` -- a finitely supported map exponent -> integer coefficient.
* `RatFunc` -- a normalized quotient of two Laurent polynomials.

Coefficients are Python ints, so there is no overflow and no floating point.
Values are immutable and hashable.

>>> str(quantum_int(3))
'q^2 + 1 + q^-2'
>>> str(quantum_factorial(3))
'q^3 + 2q + 2q^-1 + q^-3'
>>> str(exact_divide(LaurentPoly.parse("q^2 - q^-2"), LaurentPoly.parse("q - q^-1")))
'q + q^-1'
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "RatFunc",
    "NotDivisible",
    "PolyParseError",
    "q",
    "ZERO",
    "ONE",
    "quantum_int",
    "quantum_factorial",
    "quantum_binomial",
    "exact_divide",
]


class NotDivisible(ArithmeticError):
    """Raised when an exact division in Z[q, q^-1] has a nonzero remainder."""


class PolyParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LaurentPoly:
    """
    Laurent polynomial in q with integer coefficients.

    The internal dict never stores zero coefficients, so two equal polynomials
    always have equal dicts.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, v in coeffs.items():
                if v:
                    c[int(e)] = int(v)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict[int, int]) -> "LaurentPoly":
        # caller guarantees c has no zero values and is not shared
        p = object.__new__(cls)
        p._c = c
        p._hash = None
        return p

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly":
        return cls._raw({0: value} if value else {})

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> "LaurentPoly":
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return cls.constant(x)
        raise TypeError(f"cannot convert {type(x).__name__} to LaurentPoly")

    # --- inspection -------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def max_exp(self) -> int:
        return max(self._c)

    def min_exp(self) -> int:
        return min(self._c)

    def leading_coeff(self) -> int:
        return self._c[max(self._c)]

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def content(self) -> int:
        g = 0
        for v in self._c.values():
            g = gcd(g, v)
        return g

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, int):
                other = LaurentPoly.constant(other)
            else:
                return NotImplemented
        if not other._c:
            return self
        if not self._c:
            return other
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: v * other for e, v in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = self._c, other._c
        if not a or not b:
            return ZERO
        if len(b) == 1:
            ((eb, vb),) = b.items()
            return LaurentPoly._raw({e + eb: v * vb for e, v in a.items()})
        if len(a) == 1:
            ((ea, va),) = a.items()
            return LaurentPoly._raw({e + ea: v * va for e, v in b.items()})
        c: dict[int, int] = {}
        for ea, va in a.items():
            for eb, vb in b.items():
                e = ea + eb
                c[e] = c.get(e, 0) + va * vb
        return LaurentPoly._raw({e: v for e, v in c.items() if v})

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k: int):
        if k < 0:
            if len(self._c) != 1:
                raise ZeroDivisionError("only monomials are units in Z[q, q^-1]")
            ((e, v),) = self._c.items()
            if v not in (1, -1):
                raise ZeroDivisionError("only +-q^k are units in Z[q, q^-1]")
            return LaurentPoly._raw({e * k: v ** (-k)})
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: v for e, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The bar involution q -> q^-1."""
        return LaurentPoly._raw({-e: v for e, v in self._c.items()})

    def __truediv__(self, other):
        return RatFunc(self, other)

    # --- comparison -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if isinstance(other, RatFunc):
            return other == self
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # --- text -------------------------------------------------------------

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, v in self.items():
            sign = "-" if v < 0 else "+"
            a = abs(v)
            if e == 0:
                body = str(a)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if a == 1 else f"{a}{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        """
        Parse `poly := term (("+"|"-") term)*`, `term := int? ("q" ("^" int)?)?`.

        A leading sign is accepted, and an integer may be followed by an
        optional `*` before `q`.
        """
        return _PolyParser(text).parse()


_TERM_RE = re.compile(r"\s*(\d+)?\s*(\*?\s*q(?:\s*\^\s*(\(?\s*[+-]?\d+\s*\)?))?)?")


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _sign(self) -> int | None:
        self._skip()
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            s = -1 if self.text[self.pos] == "-" else 1
            self.pos += 1
            return s
        return None

    def _term(self) -> LaurentPoly:
        start = self.pos
        m = _TERM_RE.match(self.text, self.pos)
        num, qpart, exp = m.group(1), m.group(2), m.group(3)
        if num is None and qpart is None:
            raise PolyParseError("expected a term", start)
        if qpart is not None and qpart.lstrip().startswith("*") and num is None:
            raise PolyParseError("dangling '*'", start)
        self.pos = m.end()
        coeff = int(num) if num is not None else 1
        if qpart is None:
            return LaurentPoly.constant(coeff)
        e = int(exp.strip("() ").replace(" ", "")) if exp is not None else 1
        return LaurentPoly.monomial(e, coeff)

    def parse(self) -> LaurentPoly:
        total = ZERO
        s = self._sign() or 1
        self._skip()
        total = total + s * self._term()
        while True:
            s = self._sign()
            if s is None:
                break
            self._skip()
            total = total + s * self._term()
        self._skip()
        if self.pos != len(self.text):
            raise PolyParseError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return total


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
q = LaurentPoly.monomial(1)


# --- exact division --------------------------------------------------------

def _divmod_int(p: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Long division by d from the top exponent down, integer coefficients only.

    Returns (quotient, remainder); raises NotDivisible as soon as a leading
    coefficient fails to divide.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    dtop, dlead = d.max_exp(), d.leading_coeff()
    dspan = dtop - d.min_exp()
    rem = dict(p._c)
    quot: dict[int, int] = {}
    dc = d._c
    while rem:
        top = max(rem)
        # remainder narrower than d cannot be reduced further
        if top - min(rem) < dspan:
            break
        v = rem[top]
        if v % dlead:
            raise NotDivisible(f"{p} is not divisible by {d} in Z[q,q^-1]")
        c = v // dlead
        shift = top - dtop
        quot[shift] = c
        for e, w in dc.items():
            k = e + shift
            s = rem.get(k, 0) - c * w
            if s:
                rem[k] = s
            else:
                rem.pop(k, None)
    return LaurentPoly._raw(quot), LaurentPoly._raw(rem)


def exact_divide(p: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return p / d if d divides p in Z[q, q^-1], otherwise raise NotDivisible."""
    p = LaurentPoly.coerce(p)
    d = LaurentPoly.coerce(d)
    if p.is_zero():
        if d.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        return ZERO
    if d.is_monomial():
        ((e, v),) = d._c.items()
        if any(c % v for c in p._c.values()):
            raise NotDivisible(f"{p} is not divisible by {d} in Z[q,q^-1]")
        return LaurentPoly._raw({k - e: c // v for k, c in p._c.items()})
    quot, rem = _divmod_int(p, d)
    if not rem.is_zero():
        raise NotDivisible(f"{p} is not divisible by {d} in Z[q,q^-1]")
    return quot


# --- quantum combinatorics --------------------------------------------------

@lru_cache(maxsize=None)
def quantum_int(a: int) -> LaurentPoly:
    """[a] = q^(a-1) + q^(a-3) + ... + q^(1-a); [-a] = -[a]."""
    if a < 0:
        return -quantum_int(-a)
    return LaurentPoly._raw({a - 1 - 2 * k: 1 for k in range(a)})


@lru_cache(maxsize=None)
def quantum_factorial(a: int) -> LaurentPoly:
    if a < 0:
        raise ValueError(f"quantum factorial of negative number {a}")
    result = ONE
    for k in range(2, a + 1):
        result = result * quantum_int(k)
    return result


@lru_cache(maxsize=None)
def quantum_binomial(a: int, b: int) -> LaurentPoly:
    """
    Gaussian binomial [a choose b] = [a][a-1]...[a-b+1] / [b]!, valid for every
    integer a (for negative a the numerator simply has negative factors).
    """
    if b < 0:
        raise ValueError(f"lower index must be nonnegative, got {b}")
    num = ONE
    for k in range(b):
        num = num * quantum_int(a - k)
    return exact_divide(num, quantum_factorial(b))


# --- rational functions ------------------------------------------------------

def _to_fraction_poly(p: LaurentPoly, shift: int) -> list[Fraction]:
    # dense coefficient list (ascending) of q^shift * p
    lo = p.min_exp() + shift
    hi = p.max_exp() + shift
    assert lo >= 0
    out = [Fraction(0)] * (hi + 1)
    for e, v in p._c.items():
        out[e + shift] = Fraction(v)
    return out


def _strip(a: list[Fraction]) -> list[Fraction]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_rem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) >= len(b) and a:
        c = a[-1] / b[-1]
        off = len(a) - len(b)
        for k, bv in enumerate(b):
            a[off + k] -= c * bv
        _strip(a)
    return a


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a, b = _strip(list(a)), _strip(list(b))
    while b:
        a, b = b, _poly_rem(a, b)
    return a


def _primitive_from_fractions(coeffs: list[Fraction]) -> LaurentPoly:
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = gcd(g, v)
    g = g or 1
    return LaurentPoly({k: v // g for k, v in enumerate(ints) if v})


Scalar = Union[int, LaurentPoly, "RatFunc"]


class RatFunc:
    """
    Element of Q(q), stored as numerator / denominator with both in Z[q, q^-1].

    Normal form: no common polynomial factor, the denominator has lowest
    exponent 0 and positive leading coefficient, and the integer contents of
    numerator and denominator are coprime.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Scalar, den: Scalar = 1):
        if isinstance(num, RatFunc) or isinstance(den, RatFunc):
            num = RatFunc._lift(num)
            den = RatFunc._lift(den)
            n, d = num.num * den.den, num.den * den.num
        else:
            n, d = LaurentPoly.coerce(num), LaurentPoly.coerce(den)
        if d.is_zero():
            raise ZeroDivisionError("RatFunc with zero denominator")
        self.num, self.den = self._normalize(n, d)

    @staticmethod
    def _lift(x: Scalar) -> "RatFunc":
        return x if isinstance(x, RatFunc) else RatFunc(x)

    @staticmethod
    def _normalize(n: LaurentPoly, d: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
        if n.is_zero():
            return ZERO, ONE
        # units q^k are absorbed into the numerator
        k = d.min_exp()
        d = d.shift(-k)
        n = n.shift(-k)
        if d.max_exp() > 0:
            nshift = -n.min_exp()
            g = _poly_gcd(_to_fraction_poly(n, nshift), _to_fraction_poly(d, 0))
            if len(g) > 1:
                g_int = _primitive_from_fractions(g)
                n = exact_divide(n, g_int)
                d = exact_divide(d, g_int)
                k = d.min_exp()
                d, n = d.shift(-k), n.shift(-k)
        c = gcd(n.content(), d.content())
        if d.leading_coeff() < 0:
            c = -c
        if c != 1:
            n = LaurentPoly({e: v // c for e, v in n._c.items()})
            d = LaurentPoly({e: v // c for e, v in d._c.items()})
        return n, d

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return not self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def to_laurent(self) -> LaurentPoly:
        if self.den != ONE:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = object.__new__(RatFunc)
        r.num, r.den = -self.num, self.den
        return r

    def __sub__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * RatFunc._lift(other).inverse()

    def __rtruediv__(self, other):
        return RatFunc._lift(other) * self.inverse()

    def bar(self) -> "RatFunc":
        return RatFunc(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = RatFunc(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num._c) > 1:
            n = f"({n})"
        return f"{n}/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def as_ratfunc(x: Scalar) -> RatFunc:
    return x if isinstance(x, RatFunc) else RatFunc(x)


def poly_sum(items: Iterable[LaurentPoly]) -> LaurentPoly:
    total = ZERO
    for p in items:
        total = total + p
    return total
