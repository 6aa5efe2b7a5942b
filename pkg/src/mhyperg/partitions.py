"""Partitions, hook statistics, generalized Pochhammer symbols and complements.

The Jack parameter is carried as an exact ``Fraction`` or the sentinel
:data:`INF`; ``k = 1/alpha`` (and ``k = 0`` at ``alpha = INF``).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence, Union

INF = math.inf

Number = Union[int, Fraction, float]


class ParameterError(ValueError):
    """Raised when a parameter lies outside the supported domain."""


class ContainmentError(ValueError):
    """Raised when a partition does not fit where it is required to."""


def as_alpha(value) -> Union[Fraction, float]:
    """Normalize a Jack parameter to a positive ``Fraction`` or ``INF``."""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo"):
            return INF
        value = Fraction(text)
    elif isinstance(value, float):
        if math.isinf(value) and value > 0:
            return INF
        value = Fraction(str(value))
    else:
        value = Fraction(value)
    if value <= 0:
        raise ParameterError(f"Jack parameter must be positive, got {value}")
    return value


def is_inf(alpha) -> bool:
    return isinstance(alpha, float) and math.isinf(alpha)


def k_of(alpha) -> Fraction:
    """The dual parameter k = 1/alpha, with k = 0 at alpha = infinity."""
    alpha = as_alpha(alpha)
    if is_inf(alpha):
        return Fraction(0)
    return 1 / alpha


def as_rational(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


class Partition(tuple):
    """A weakly decreasing tuple of positive integers.

    Trailing zeros are stripped on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))``.
    """

    __slots__ = ()

    def __new__(cls, parts: Sequence[int] = ()):
        if isinstance(parts, Partition):
            return parts
        if isinstance(parts, int):
            parts = (parts,)
        vals = [int(p) for p in parts]
        while vals and vals[-1] == 0:
            vals.pop()
        for i, p in enumerate(vals):
            if p < 0:
                raise ValueError(f"negative part in {tuple(vals)}")
            if i and p > vals[i - 1]:
                raise ValueError(f"parts not weakly decreasing: {tuple(vals)}")
        return super().__new__(cls, vals)

    @classmethod
    def from_exponents(cls, exps: Sequence[int]) -> "Partition":
        return cls(sorted((e for e in exps if e), reverse=True))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("[]()")
        if not text:
            return cls(())
        return cls(int(t) for t in text.replace(" ", "").split(",") if t)

    def __repr__(self) -> str:
        return "(" + ",".join(str(p) for p in self) + ")"

    @property
    def size(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def part(self, i: int) -> int:
        """1-based part lookup, zero beyond the length."""
        return self[i - 1] if 1 <= i <= len(self) else 0

    def conjugate(self) -> "Partition":
        return conjugate(self)

    def boxes(self) -> Iterator[tuple[int, int]]:
        for i, row in enumerate(self, start=1):
            for j in range(1, row + 1):
                yield i, j

    def arm(self, i: int, j: int) -> int:
        return self[i - 1] - j

    def leg(self, i: int, j: int) -> int:
        return self.conjugate().part(j) - i

    def n_stat(self) -> int:
        """n(lambda) = sum (i-1) lambda_i."""
        return sum(i * p for i, p in enumerate(self))

    def multiplicities(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def z(self) -> int:
        """z_lambda = prod_r r^{m_r} m_r!."""
        out = 1
        for r, m in self.multiplicities().items():
            out *= r**m * math.factorial(m)
        return out

    def contains(self, mu: Sequence[int]) -> bool:
        mu = Partition(mu)
        if len(mu) > len(self):
            return False
        return all(m <= l for m, l in zip(mu, self))

    def dominates(self, mu: Sequence[int]) -> bool:
        mu = Partition(mu)
        if mu.size != self.size:
            return False
        a = b = 0
        for i in range(max(len(self), len(mu))):
            a += self.part(i + 1)
            b += mu.part(i + 1)
            if a < b:
                return False
        return True

    def removable(self) -> list["Partition"]:
        """Partitions obtained by deleting one corner box."""
        out = []
        for i in range(len(self)):
            if i == len(self) - 1 or self[i] > self[i + 1]:
                vals = list(self)
                vals[i] -= 1
                out.append(Partition(vals))
        return out

    def addable(self) -> list["Partition"]:
        """Partitions obtained by adding one box."""
        out = []
        vals = list(self) + [0]
        for i in range(len(vals)):
            if i == 0 or vals[i] < vals[i - 1]:
                new = vals.copy()
                new[i] += 1
                out.append(Partition(new))
        return out

    def factorial(self) -> int:
        """lambda! = prod lambda_i!."""
        out = 1
        for p in self:
            out *= math.factorial(p)
        return out

    def to_json(self) -> list[int]:
        return list(self)


EMPTY = Partition(())


@lru_cache(maxsize=None)
def conjugate(lam: Partition) -> Partition:
    lam = Partition(lam)
    if not lam:
        return lam
    return Partition(sum(1 for p in lam if p >= j) for j in range(1, lam[0] + 1))


def skew_box(lam: Partition, mu: Partition) -> tuple[int, int]:
    """The (row, column) of the single box of lam/mu."""
    lam, mu = Partition(lam), Partition(mu)
    if lam.size != mu.size + 1 or not lam.contains(mu):
        raise ContainmentError(f"{mu} is not {lam} minus one box")
    for i in range(1, len(lam) + 1):
        if lam.part(i) != mu.part(i):
            return i, lam.part(i)
    raise AssertionError("unreachable")


def hook_products(lam: Sequence[int], alpha) -> tuple[Fraction, Fraction]:
    """(h, h') with h = prod(alpha*a + l + 1) and h' = prod(alpha*a + l + alpha)."""
    alpha = as_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("hook products are unbounded at alpha = infinity")
    return _hooks(Partition(lam), alpha)


@lru_cache(maxsize=None)
def _hooks(lam: Partition, alpha: Fraction) -> tuple[Fraction, Fraction]:
    conj = conjugate(lam)
    h = Fraction(1)
    hp = Fraction(1)
    for i, j in lam.boxes():
        a = lam[i - 1] - j
        l = conj[j - 1] - i
        h *= alpha * a + l + 1
        hp *= alpha * a + l + alpha
    return h, hp


def rising(x, m: int):
    """Rising factorial (x)_m = x(x+1)...(x+m-1)."""
    out = 1 if not isinstance(x, float) else 1.0
    for t in range(m):
        out *= x + t
    return out


def gen_pochhammer(a, lam: Sequence[int], alpha):
    """(a)_lam = prod_i (a - k(i-1))_{lam_i}; float in, float out."""
    lam = Partition(lam)
    k = k_of(alpha)
    if isinstance(a, float):
        kf = float(k)
        out = 1.0
        for i, p in enumerate(lam):
            out *= rising(a - kf * i, p)
        return out
    a = as_rational(a)
    out = Fraction(1)
    for i, p in enumerate(lam):
        out *= rising(a - k * i, p)
    return out


def rho(lam: Sequence[int], alpha) -> Fraction:
    """rho(lam) = n(lam') - k n(lam)."""
    lam = Partition(lam)
    return conjugate(lam).n_stat() - k_of(alpha) * lam.n_stat()


def rho_skew(lam: Sequence[int], mu: Sequence[int], alpha) -> Fraction:
    return rho(lam, alpha) - rho(mu, alpha)


def complement(mu: Sequence[int], N: int, n: int) -> Partition:
    """The complement of mu in the N x n box: mu_hat_i = N - mu_{n+1-i}."""
    mu = Partition(mu)
    if len(mu) > n or (mu and mu[0] > N):
        raise ContainmentError(f"{mu} does not fit in the ({N}^{n}) box")
    return Partition(N - mu.part(n + 1 - i) for i in range(1, n + 1))


def rectangle(N: int, n: int) -> Partition:
    return Partition([N] * n)


def partitions_iter(m: int, max_len: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of m with at most max_len parts, in reverse lexicographic order."""
    if max_len is None:
        max_len = m
    if max_part is None:
        max_part = m

    def rec(rest: int, cap: int, slots: int, prefix: list[int]):
        if rest == 0:
            yield Partition(prefix)
            return
        if slots == 0:
            return
        for first in range(min(rest, cap), 0, -1):
            if first * slots < rest:
                break
            prefix.append(first)
            yield from rec(rest - first, first, slots - 1, prefix)
            prefix.pop()

    if m < 0 or max_len < 0:
        return
    yield from rec(m, max_part, max_len, [])


@lru_cache(maxsize=None)
def partitions_list(m: int, max_len: int | None = None) -> tuple[Partition, ...]:
    return tuple(partitions_iter(m, max_len))


def partitions_upto(D: int, max_len: int | None = None) -> Iterator[Partition]:
    """All partitions with |lam| <= D, degree-major, reverse lex within a degree."""
    for d in range(D + 1):
        yield from partitions_list(d, max_len)


def subpartitions(lam: Sequence[int]) -> Iterator[Partition]:
    """All mu contained in lam."""
    lam = Partition(lam)

    def rec(i: int, cap: int, prefix: list[int]):
        if i == len(lam):
            yield Partition(prefix)
            return
        for v in range(min(cap, lam[i]), -1, -1):
            prefix.append(v)
            yield from rec(i + 1, v, prefix)
            prefix.pop()

    yield from rec(0, lam[0] if lam else 0, [])


def horizontal_strip_children(lam: Partition, max_len: int) -> Iterator[Partition]:
    """mu with lam/mu a horizontal strip and l(mu) <= max_len."""
    lam = Partition(lam)
    if len(lam) > max_len + 1:
        return
    ranges = []
    for i in range(max_len):
        lo = lam.part(i + 2)
        hi = lam.part(i + 1)
        ranges.append(range(hi, lo - 1, -1))

    def rec(i: int, prefix: list[int]):
        if i == len(ranges):
            yield Partition(prefix)
            return
        for v in ranges[i]:
            prefix.append(v)
            yield from rec(i + 1, prefix)
            prefix.pop()

    yield from rec(0, [])
