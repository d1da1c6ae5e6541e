"""
The gl_n weight lattice Z^n, with colors (simple root indices) taken mod n.

Weights are plain integer tuples; `Color` is its own type so that index
arithmetic always wraps back into 1..n.

>>> residue(5, 3)
2
>>> root(3, 3)
(-1, 0, 1)
>>> rotate((3, 0, 0))
(0, 3, 0)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "Color",
    "STAR",
    "residue",
    "weight_of",
    "epsilon",
    "root",
    "inner",
    "add",
    "sub",
    "scale",
    "phi",
    "rotate",
    "unrotate",
    "enumerate_compositions",
    "is_composition",
    "ones",
    "format_weight",
]

Weight = tuple[int, ...]


@dataclass(frozen=True, order=True)
class Color:
    """A color i in 1..n; adding or subtracting integers wraps mod n."""

    index: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"rank must be positive, got {self.n}")
        if not 1 <= self.index <= self.n:
            object.__setattr__(self, "index", residue(self.index, self.n))

    def __add__(self, k: int) -> "Color":
        return Color(residue(self.index + k, self.n), self.n)

    def __sub__(self, k: int) -> "Color":
        return Color(residue(self.index - k, self.n), self.n)

    def __int__(self) -> int:
        return self.index

    def __index__(self) -> int:
        return self.index

    def __str__(self) -> str:
        return str(self.index)


class _Star:
    """The value of phi when the sl -> gl weight equations have no solution."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def __reduce__(self):
        return (_Star, ())


STAR = _Star()


def residue(t: int, n: int) -> int:
    """The unique i in 1..n with i = t mod n."""
    return (t - 1) % n + 1


def epsilon(i: int, n: int) -> Weight:
    i = residue(i, n)
    return tuple(1 if k == i else 0 for k in range(1, n + 1))


def root(i: int | Color, n: int) -> Weight:
    """alpha_i = eps_i - eps_{i+1}, indices mod n."""
    i = int(i)
    a = [0] * n
    a[residue(i, n) - 1] += 1
    a[residue(i + 1, n) - 1] -= 1
    return tuple(a)


def inner(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def add(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> Weight:
    return tuple(k * x for x in a)


def weight_of(ts: Iterable[int], n: int) -> Weight:
    """Weight of the basis vector e_{t_1} (x) ... (x) e_{t_r}."""
    w = [0] * n
    for t in ts:
        w[(t - 1) % n] += 1
    return tuple(w)


def phi(mu: Sequence[int], n: int, r: int):
    """
    Solve lambda_i - lambda_{i+1} = mu_i (i < n), sum(lambda) = r.

    Returns the unique integer solution, or STAR if there is none.
    Writing lambda_i = lambda_n + c_i with c_i = mu_i + ... + mu_{n-1}, the sum
    condition reads n * lambda_n + sum(c) = r.
    """
    if len(mu) != n - 1:
        raise ValueError(f"expected {n - 1} entries, got {len(mu)}")
    c = [0] * n
    for i in range(n - 2, -1, -1):
        c[i] = c[i + 1] + mu[i]
    rest = r - sum(c)
    if rest % n:
        return STAR
    last = rest // n
    return tuple(last + ci for ci in c)


def rotate(lam: Sequence[int]) -> Weight:
    """(l_1, ..., l_n) -> (l_n, l_1, ..., l_{n-1})."""
    lam = tuple(lam)
    return lam[-1:] + lam[:-1]


def unrotate(lam: Sequence[int]) -> Weight:
    lam = tuple(lam)
    return lam[1:] + lam[:1]


def ones(n: int) -> Weight:
    return (1,) * n


def is_composition(lam: Sequence[int], n: int, r: int) -> bool:
    return len(lam) == n and all(x >= 0 for x in lam) and sum(lam) == r


def enumerate_compositions(n: int, r: int) -> list[Weight]:
    """All of Lambda(n, r), lexicographically sorted (stars and bars)."""
    if r < 0:
        raise ValueError(f"r must be nonnegative, got {r}")
    out = []
    for bars in combinations(range(n + r - 1), n - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(n + r - 1 - prev - 1)
        out.append(tuple(parts))
    out.sort()
    assert len(out) == comb(n + r - 1, r)
    return out


def format_weight(lam: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in lam) + ")"
