"""Sparse exact polynomials in a fixed number of variables."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Callable, Iterable, Mapping, Sequence

from .partitions import Partition


class SymmetryError(ArithmeticError):
    """A pairwise numerator was not divisible by (x_i - x_j)."""


def _multiset_permutations(items: Sequence[int]) -> list[tuple[int, ...]]:
    return sorted(set(permutations(items)), reverse=True)


_PERM_CACHE: dict[tuple[Partition, int], list[tuple[int, ...]]] = {}


def monomial_exponents(lam: Sequence[int], n: int) -> list[tuple[int, ...]]:
    """Distinct exponent vectors of the monomial symmetric polynomial m_lam in n variables."""
    lam = Partition(lam)
    key = (lam, n)
    hit = _PERM_CACHE.get(key)
    if hit is None:
        if len(lam) > n:
            hit = []
        else:
            hit = _multiset_permutations(tuple(lam) + (0,) * (n - len(lam)))
        _PERM_CACHE[key] = hit
    return hit


class NVarPoly:
    """Polynomial in ``n`` variables stored as {exponent tuple: coefficient}."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.n = n
        self.terms: dict[tuple[int, ...], object] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    if len(e) != n:
                        raise ValueError(f"exponent {e} does not have {n} entries")
                    self.terms[tuple(e)] = c

    @classmethod
    def constant(cls, n: int, c) -> "NVarPoly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def variable(cls, n: int, i: int, c=1) -> "NVarPoly":
        e = [0] * n
        e[i] = 1
        return cls(n, {tuple(e): c})

    @classmethod
    def monomial_symmetric(cls, lam: Sequence[int], n: int, c=Fraction(1)) -> "NVarPoly":
        return cls(n, {e: c for e in monomial_exponents(lam, n)})

    @classmethod
    def power_sum(cls, r: int, n: int) -> "NVarPoly":
        if r == 0:
            return cls.constant(n, Fraction(n))
        out = {}
        for i in range(n):
            e = [0] * n
            e[i] = r
            out[tuple(e)] = Fraction(1)
        return cls(n, out)

    def copy(self) -> "NVarPoly":
        new = NVarPoly(self.n)
        new.terms = dict(self.terms)
        return new

    def __repr__(self) -> str:
        if not self.terms:
            return "NVarPoly(0)"
        items = sorted(self.terms.items(), reverse=True)
        shown = " + ".join(f"{c}*x^{e}" for e, c in items[:6])
        more = "" if len(items) <= 6 else f" + ... ({len(items)} terms)"
        return f"NVarPoly({shown}{more})"

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NVarPoly):
            return self.n == other.n and (self - other).is_zero()
        if other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None  # mutable container semantics

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def _check(self, other: "NVarPoly") -> None:
        if self.n != other.n:
            raise ValueError(f"variable counts differ: {self.n} vs {other.n}")

    def __add__(self, other):
        if not isinstance(other, NVarPoly):
            other = NVarPoly.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        new = NVarPoly(self.n)
        new.terms = out
        return new

    __radd__ = __add__

    def __neg__(self):
        new = NVarPoly(self.n)
        new.terms = {e: -c for e, c in self.terms.items()}
        return new

    def __sub__(self, other):
        if not isinstance(other, NVarPoly):
            other = NVarPoly.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "NVarPoly":
        new = NVarPoly(self.n)
        if c:
            new.terms = {e: v * c for e, v in self.terms.items() if v * c}
        return new

    def __mul__(self, other):
        if not isinstance(other, NVarPoly):
            return self.scale(other)
        self._check(other)
        out: dict[tuple[int, ...], object] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        new = NVarPoly(self.n)
        new.terms = {e: c for e, c in out.items() if c}
        return new

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, m: int) -> "NVarPoly":
        out = NVarPoly.constant(self.n, Fraction(1))
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def truncate(self, max_degree: int) -> "NVarPoly":
        new = NVarPoly(self.n)
        new.terms = {e: c for e, c in self.terms.items() if sum(e) <= max_degree}
        return new

    def homogeneous_part(self, d: int) -> "NVarPoly":
        new = NVarPoly(self.n)
        new.terms = {e: c for e, c in self.terms.items() if sum(e) == d}
        return new

    def diff(self, i: int, order: int = 1) -> "NVarPoly":
        """Partial derivative of the given order in variable i."""
        out = {}
        for e, c in self.terms.items():
            p = e[i]
            if p < order:
                continue
            f = 1
            for t in range(order):
                f *= p - t
            ne = list(e)
            ne[i] = p - order
            out[tuple(ne)] = c * f
        new = NVarPoly(self.n)
        new.terms = out
        return new

    def mul_var(self, i: int, power: int = 1) -> "NVarPoly":
        """Multiply by x_i**power."""
        out = {}
        for e, c in self.terms.items():
            ne = list(e)
            ne[i] += power
            out[tuple(ne)] = c
        new = NVarPoly(self.n)
        new.terms = out
        return new

    def div_difference(self, i: int, j: int) -> "NVarPoly":
        """Exact quotient by (x_i - x_j); raises SymmetryError if not divisible."""
        if i == j:
            raise ValueError("need distinct variables")
        # Group by the exponents of every variable except x_i, then synthetic
        # division in x_i: g = (x_i - x_j) q  <=>  q_{d-1} = g_d + x_j q_d.
        groups: dict[tuple[int, ...], dict[int, object]] = {}
        for e, c in self.terms.items():
            rest = e[:i] + (0,) + e[i + 1 :]
            groups.setdefault(rest, {})[e[i]] = c
        # Work along chains: the carry x_j q_d shifts the x_j exponent of rest.
        pending: dict[tuple[int, ...], dict[int, object]] = {r: dict(g) for r, g in groups.items()}
        top = max((sum(e) for e in self.terms), default=0)
        out: dict[tuple[int, ...], object] = {}
        # process from highest x_i degree downwards over all rests simultaneously
        for d in range(top, 0, -1):
            for rest in list(pending.keys()):
                g = pending[rest]
                c = g.pop(d, 0)
                if not c:
                    continue
                q = list(rest)
                q[i] = d - 1
                qe = tuple(q)
                out[qe] = out.get(qe, 0) + c
                nrest = list(rest)
                nrest[j] += 1
                nrest = tuple(nrest)
                tgt = pending.setdefault(nrest, {})
                v = tgt.get(d - 1, 0) + c
                if v:
                    tgt[d - 1] = v
                else:
                    tgt.pop(d - 1, None)
        for rest, g in pending.items():
            if any(g.values()):
                raise SymmetryError(f"numerator not divisible by x_{i} - x_{j}")
        new = NVarPoly(self.n)
        new.terms = {e: c for e, c in out.items() if c}
        return new

    def substitute_shift(self, shift) -> "NVarPoly":
        """f(x_1 + shift, ..., x_n + shift)."""
        from math import comb

        poly = self
        for i in range(self.n):
            out: dict[tuple[int, ...], object] = {}
            for e, c in poly.terms.items():
                p = e[i]
                for t in range(p + 1):
                    ne = list(e)
                    ne[i] = t
                    ne = tuple(ne)
                    out[ne] = out.get(ne, 0) + c * comb(p, t) * shift ** (p - t)
            poly = NVarPoly(self.n, out)
        return poly

    def negate_args(self) -> "NVarPoly":
        """f(-x)."""
        new = NVarPoly(self.n)
        new.terms = {e: (-c if sum(e) % 2 else c) for e, c in self.terms.items()}
        return new

    def scale_args(self, s) -> "NVarPoly":
        """f(s x)."""
        new = NVarPoly(self.n)
        new.terms = {e: c * s ** sum(e) for e, c in self.terms.items() if c * s ** sum(e)}
        return new

    def permute(self, perm: Sequence[int]) -> "NVarPoly":
        new = NVarPoly(self.n)
        new.terms = {tuple(e[p] for p in perm): c for e, c in self.terms.items()}
        return new

    def is_symmetric(self) -> bool:
        for e, c in self.terms.items():
            for f in set(permutations(e)):
                if self.terms.get(f, 0) != c:
                    return False
        return True

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            term = c
            for x, p in zip(point, e):
                if p:
                    term = term * x**p
            total = total + term
        return total

    def map_coeffs(self, fn: Callable) -> "NVarPoly":
        new = NVarPoly(self.n)
        new.terms = {e: fn(c) for e, c in self.terms.items() if fn(c)}
        return new

    def max_abs_coeff(self):
        return max((abs(c) for c in self.terms.values()), default=Fraction(0))

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), reverse=True)


def poly_sum(polys: Iterable[NVarPoly], n: int) -> NVarPoly:
    out: dict[tuple[int, ...], object] = {}
    for p in polys:
        for e, c in p.terms.items():
            out[e] = out.get(e, 0) + c
    return NVarPoly(n, {e: c for e, c in out.items() if c})
