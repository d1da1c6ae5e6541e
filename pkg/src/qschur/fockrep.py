"""
The tensor space V^{(x)r}, V = span{e_t : t in Z}, truncated to a window of
t-values.  This is the ground-truth oracle for every relation in the package.

Leg convention: E_{+i} acting on leg k carries K_i K_{i+1}^{-1} factors from
the legs to its right, E_{-i} carries K_i^{-1} K_{i+1} factors from the legs
to its left.  E_{+-delta} act as R^{-+1} restricted to weight (1, ..., 1).

States are plain dicts mapping r-tuples to nonzero amplitudes (LaurentPoly,
or RatFunc when an element has non-Laurent coefficients).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .qarith import LaurentPoly, RatFunc, exact_divide, quantum_factorial
from .presentations import (
    DividedPower,
    DividedWord,
    E,
    EDelta,
    Element,
    Idem,
    RelationPair,
    RShift,
    word_span,
)
from .weightlat import enumerate_compositions, format_weight, ones, residue, weight_of

__all__ = [
    "RepConfig",
    "WindowOverflow",
    "EmptySafeInterior",
    "VerifyReport",
    "basis",
    "apply_generator",
    "apply_word",
    "apply_element",
    "safe_basis",
    "verify_pair",
    "format_state",
]

TensorState = dict


class WindowOverflow(RuntimeError):
    pass


class EmptySafeInterior(ValueError):
    pass


@dataclass(frozen=True)
class RepConfig:
    """
    n: rank, r: tensor power, [lo, hi]: allowed t-values.

    `margin`, when set, is the distance kept from both window ends when
    choosing test vectors; otherwise each relation uses its own word span.
    """

    n: int
    r: int
    lo: int
    hi: int
    margin: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.r < 1:
            raise ValueError("n and r must be positive")
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    @classmethod
    def auto(cls, n: int, r: int, span: int) -> "RepConfig":
        """Window [-(L+3), r+L+3] with margin L, so test vectors use t in [-3, r+3]."""
        return cls(n, r, -(span + 3), r + span + 3, margin=span)

    def doubled(self) -> "RepConfig":
        """Same margin, window twice as wide around the same centre."""
        width = self.hi - self.lo
        half = (width + 1) // 2
        return RepConfig(self.n, self.r, self.lo - half, self.hi + half, self.margin)


def basis(ts) -> TensorState:
    return {tuple(ts): LaurentPoly.constant(1)}


# --- single-tuple actions (pure, memoized) -------------------------------------

def _e_plus(n: int, i: int, ts: tuple) -> tuple:
    out = []
    i1 = residue(i + 1, n)
    res = [residue(t, n) for t in ts]
    for k, t in enumerate(ts):
        if residue(t - 1, n) != i:
            continue
        e = 0
        for j in range(k + 1, len(ts)):
            if res[j] == i:
                e += 1
            elif res[j] == i1:
                e -= 1
        out.append((ts[:k] + (t - 1,) + ts[k + 1:], e))
    return tuple(out)


def _e_minus(n: int, i: int, ts: tuple) -> tuple:
    out = []
    i1 = residue(i + 1, n)
    res = [residue(t, n) for t in ts]
    for k, t in enumerate(ts):
        if res[k] != i:
            continue
        e = 0
        for j in range(k):
            if res[j] == i:
                e -= 1
            elif res[j] == i1:
                e += 1
        out.append((ts[:k] + (t + 1,) + ts[k + 1:], e))
    return tuple(out)


@lru_cache(maxsize=1 << 20)
def _on_tuple(n: int, g, ts: tuple) -> tuple:
    """Image of one basis tuple as ((tuple, LaurentPoly), ...), no window check."""
    if isinstance(g, E):
        f = _e_plus if g.sign > 0 else _e_minus
        return tuple((t2, LaurentPoly.monomial(e)) for t2, e in f(n, g.color, ts))
    if isinstance(g, Idem):
        return ((ts, LaurentPoly.constant(1)),) if weight_of(ts, n) == g.weight else ()
    if isinstance(g, RShift):
        return ((tuple(t + g.sign for t in ts), LaurentPoly.constant(1)),)
    if isinstance(g, EDelta):
        if weight_of(ts, n) != ones(n):
            return ()
        return ((tuple(t - g.sign for t in ts), LaurentPoly.constant(1)),)
    if isinstance(g, DividedPower):
        state = {ts: LaurentPoly.constant(1)}
        e = E(g.sign, g.color)
        for _ in range(g.power):
            state = _apply_unchecked(n, e, state)
        d = quantum_factorial(g.power)
        return tuple(sorted((t2, exact_divide(a, d)) for t2, a in state.items()))
    if isinstance(g, DividedWord):
        state = {ts: LaurentPoly.constant(1)}
        for _ in range(g.power):
            for f in reversed(g.factors):
                state = _apply_unchecked(n, f, state)
        d = quantum_factorial(g.power)
        return tuple(sorted((t2, exact_divide(a, d)) for t2, a in state.items()))
    raise TypeError(f"not a generator: {g!r}")


def _accumulate(out: dict, key: tuple, value):
    old = out.get(key)
    if old is None:
        out[key] = value
    else:
        s = old + value
        if s:
            out[key] = s
        else:
            del out[key]


def _apply_unchecked(n: int, g, state: Mapping) -> TensorState:
    out: dict = {}
    for ts, amp in state.items():
        for t2, c in _on_tuple(n, g, ts):
            _accumulate(out, t2, amp * c)
    return out


def apply_generator(g, s: Mapping, cfg: RepConfig) -> TensorState:
    """Exact action of one generator; raises WindowOverflow if a tuple leaves the window."""
    out = _apply_unchecked(cfg.n, g, s)
    lo, hi = cfg.lo, cfg.hi
    for ts in out:
        for t in ts:
            if t < lo or t > hi:
                raise WindowOverflow(f"{g} produced {ts} outside [{lo}, {hi}]")
    return out


def apply_word(word, s: Mapping, cfg: RepConfig) -> TensorState:
    state = dict(s)
    for g in reversed(word):
        if not state:
            break
        state = apply_generator(g, state, cfg)
    return state


def apply_element(e: Element, s: Mapping, cfg: RepConfig) -> TensorState:
    """Linear extension of apply_word; the rightmost generator of each word acts first."""
    out: dict = {}
    for w, c in e.items():
        part = apply_word(w, s, cfg)
        if c.is_laurent():
            c = c.num
        for ts, amp in part.items():
            _accumulate(out, ts, amp * c)
    return out


def format_state(s: Mapping) -> str:
    """Human-readable state, e.g. ``(q + 1)·e2⊗e3 - e1⊗e1``."""
    if not s:
        return "0"
    parts = []
    for ts, amp in sorted(s.items()):
        vec = "⊗".join(f"e{t}" for t in ts)
        a = str(amp)
        if a == "1":
            parts.append(("+", vec))
        elif a == "-1":
            parts.append(("-", vec))
        else:
            parts.append(("+", f"({a})·{vec}"))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# --- safe vectors ---------------------------------------------------------------

@lru_cache(maxsize=256)
def _tuples_by_weight(n: int, r: int, a: int, b: int) -> dict:
    groups: dict = {}
    for ts in itertools.product(range(a, b + 1), repeat=r):
        groups.setdefault(weight_of(ts, n), []).append(ts)
    return groups


def safe_basis(cfg: RepConfig, lam, margin: int) -> list[tuple]:
    """
    Every r-tuple with all entries in [lo + margin, hi - margin] and weight lam.
    Words moving a leg by at most `margin` cannot leave the window from these.
    """
    a, b = cfg.lo + margin, cfg.hi - margin
    if b - a + 1 < cfg.n:
        raise EmptySafeInterior(
            f"interior [{a}, {b}] of window [{cfg.lo}, {cfg.hi}] misses some residue mod {cfg.n}")
    return list(_tuples_by_weight(cfg.n, cfg.r, a, b).get(tuple(lam), ()))


# --- relation checking ------------------------------------------------------------

@dataclass
class VerifyReport:
    suite: str
    relation: str
    lambdas: tuple
    vectors: int
    status: str
    witness: dict | None = field(default=None)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "relation": self.relation,
            "lambda": ";".join(format_weight(l) for l in self.lambdas),
            "vectors": self.vectors,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _difference(p: RelationPair) -> Element:
    return p.lhs - p.rhs


def verify_pair(p: RelationPair, cfg: RepConfig, suite: str = "", stop_at_first: bool = True,
                collect: dict | None = None) -> VerifyReport:
    """
    Apply lhs - rhs to every safe basis vector of every source weight of p.

    Passes iff every residual is exactly zero.  If `collect` is given, the
    residual of each checked vector is stored in it (used for window
    comparisons).
    """
    if (cfg.n, cfg.r) != (p.n, p.r):
        raise ValueError(f"relation lives in S({p.n},{p.r}), oracle is ({cfg.n},{cfg.r})")
    margin = cfg.margin if cfg.margin is not None else p.max_span()
    margin = max(margin, p.max_span())
    lams = p.sources if p.sources is not None else tuple(enumerate_compositions(p.n, p.r))
    diff = _difference(p)
    vectors = 0
    witness = None
    for lam in lams:
        for ts in safe_basis(cfg, lam, margin):
            vectors += 1
            res = apply_element(diff, basis(ts), cfg)
            if collect is not None:
                collect[ts] = {k: str(v) for k, v in res.items()}
            if res and witness is None:
                out_t, amp = min(res.items())
                witness = {"tuple": list(ts), "output": list(out_t), "residual": str(amp)}
                if stop_at_first:
                    break
        if witness is not None and stop_at_first:
            break
    return VerifyReport(suite, p.id, tuple(lams), vectors,
                        "fail" if witness is not None else "pass", witness)
