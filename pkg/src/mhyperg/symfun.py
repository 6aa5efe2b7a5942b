"""Exact symmetric functions in the power-sum basis.

Elements live in the ring of symmetric functions (infinitely many variables)
up to a degree cap.  Projection onto ``n`` variables goes through the
monomial basis (:class:`MonomialExpansion`).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .partitions import EMPTY, Partition, as_alpha, is_inf, partitions_list, ParameterError
from .polynomial import NVarPoly, monomial_exponents

DEFAULT_DEGREE_CAP = 10


class TruncationError(ArithmeticError):
    """An exact operation received an element that was silently truncated."""


def _clean(coeffs: Mapping[Partition, object]) -> dict[Partition, object]:
    return {Partition(k): v for k, v in coeffs.items() if v}


class PowerSumElement:
    """Sparse map partition -> coefficient in the basis p_lambda.

    ``cap`` bounds the stored degree; a product that would exceed it is cut and
    ``truncated`` is set, after which exact pairings refuse the element.
    """

    __slots__ = ("coeffs", "cap", "truncated")

    def __init__(self, coeffs: Mapping | None = None, cap: int = DEFAULT_DEGREE_CAP, truncated: bool = False):
        self.coeffs: dict[Partition, object] = _clean(coeffs or {})
        self.cap = cap
        self.truncated = truncated
        over = [k for k in self.coeffs if k.size > cap]
        if over:
            for k in over:
                del self.coeffs[k]
            self.truncated = True

    # construction helpers
    @classmethod
    def one(cls, cap: int = DEFAULT_DEGREE_CAP) -> "PowerSumElement":
        return cls({EMPTY: Fraction(1)}, cap)

    @classmethod
    def p(cls, *parts: int, cap: int = DEFAULT_DEGREE_CAP, coeff=Fraction(1)) -> "PowerSumElement":
        return cls({Partition(sorted(parts, reverse=True)): coeff}, cap)

    def __repr__(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, kv[0]), reverse=False)
        body = " + ".join(f"{c}*p{k!r}" for k, c in items[:8])
        more = "" if len(items) <= 8 else f" + ... ({len(items)} terms)"
        flag = ", truncated" if self.truncated else ""
        return f"PowerSumElement({body or '0'}{more}{flag})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, PowerSumElement):
            return (self - other).is_zero()
        if other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def degree(self) -> int:
        return max((k.size for k in self.coeffs), default=-1)

    def layer(self, d: int) -> "PowerSumElement":
        return PowerSumElement({k: v for k, v in self.coeffs.items() if k.size == d}, self.cap, self.truncated)

    def with_cap(self, cap: int) -> "PowerSumElement":
        return PowerSumElement(self.coeffs, cap, self.truncated)

    def _combine(self, other: "PowerSumElement", sign: int) -> "PowerSumElement":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + sign * v
        return PowerSumElement(out, min(self.cap, other.cap), self.truncated or other.truncated)

    def __add__(self, other):
        if not isinstance(other, PowerSumElement):
            other = PowerSumElement({EMPTY: other}, self.cap)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, PowerSumElement):
            other = PowerSumElement({EMPTY: other}, self.cap)
        return self._combine(other, -1)

    def __neg__(self):
        return PowerSumElement({k: -v for k, v in self.coeffs.items()}, self.cap, self.truncated)

    def scale(self, c) -> "PowerSumElement":
        return PowerSumElement({k: v * c for k, v in self.coeffs.items()}, self.cap, self.truncated)

    def __mul__(self, other):
        if not isinstance(other, PowerSumElement):
            return self.scale(other)
        cap = min(self.cap, other.cap)
        out: dict[Partition, object] = {}
        truncated = self.truncated or other.truncated
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                if k1.size + k2.size > cap:
                    truncated = True
                    continue
                key = _merge(k1, k2)
                out[key] = out.get(key, 0) + v1 * v2
        return PowerSumElement(out, cap, truncated)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, m: int) -> "PowerSumElement":
        out = PowerSumElement.one(self.cap)
        for _ in range(m):
            out = out * self
        return out

    def substitute(self, images: Mapping[int, "PowerSumElement"]) -> "PowerSumElement":
        """Ring homomorphism sending p_r to images[r] (p_r kept if absent)."""
        out = PowerSumElement({}, self.cap)
        cache: dict[int, PowerSumElement] = {}
        for k, v in self.coeffs.items():
            term = PowerSumElement.one(self.cap)
            for r in k:
                img = images.get(r)
                if img is None:
                    img = cache.setdefault(r, PowerSumElement.p(r, cap=self.cap))
                term = term * img
            out = out + term.scale(v)
        out.truncated = out.truncated or self.truncated
        return out

    def d_dp1(self) -> "PowerSumElement":
        """Partial derivative with respect to p_1."""
        out: dict[Partition, object] = {}
        for k, v in self.coeffs.items():
            m1 = k.count(1)
            if m1:
                parts = list(k)
                parts.remove(1)
                key = Partition(parts)
                out[key] = out.get(key, 0) + v * m1
        return PowerSumElement(out, self.cap, self.truncated)

    def sum_of_partials(self, n) -> "PowerSumElement":
        """Image under sum_i d/dx_i: p_r -> r p_{r-1}, p_1 -> n."""
        out: dict[Partition, object] = {}
        for k, v in self.coeffs.items():
            parts = list(k)
            for idx, r in enumerate(parts):
                if idx and parts[idx - 1] == r:
                    continue
                mult = parts.count(r)
                rest = parts.copy()
                rest.remove(r)
                if r == 1:
                    key, c = Partition(rest), v * mult * n
                else:
                    key, c = Partition(sorted(rest + [r - 1], reverse=True)), v * mult * r
                out[key] = out.get(key, 0) + c
        return PowerSumElement(out, self.cap, self.truncated)

    def to_json(self) -> dict[str, str]:
        return {json_key(k): fraction_str(v) for k, v in sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, tuple(-x for x in kv[0])))}


def _merge(a: Partition, b: Partition) -> Partition:
    return Partition(sorted(a + b, reverse=True))


def fraction_str(v) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return f"{v}/1"
    return repr(v)


def json_key(lam: Sequence[int]) -> str:
    return "[" + ",".join(str(p) for p in lam) + "]"


def z_lambda(lam: Partition) -> int:
    return Partition(lam).z()


def inner_product(f: PowerSumElement, g: PowerSumElement, alpha) -> Fraction:
    """<p_lam, p_mu>_alpha = delta z_lam alpha^{l(lam)}, extended bilinearly."""
    if f.truncated or g.truncated:
        raise TruncationError("inner product of a truncated element is not exact")
    alpha = as_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("the inner product is undefined at alpha = infinity")
    if len(g.coeffs) < len(f.coeffs):
        f, g = g, f
    total = Fraction(0)
    for k, v in f.coeffs.items():
        w = g.coeffs.get(k)
        if w:
            total += v * w * k.z() * alpha ** len(k)
    return total


def omega_alpha(f: PowerSumElement, alpha) -> PowerSumElement:
    """The involution-type map p_r -> (-1)^{r-1} alpha p_r."""
    alpha = as_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("omega_alpha needs a finite alpha")
    out = {}
    for k, v in f.coeffs.items():
        sign = -1 if sum(1 for r in k if r % 2 == 0) % 2 else 1
        out[k] = v * sign * alpha ** len(k)
    return PowerSumElement(out, f.cap, f.truncated)


def specialize(f: PowerSumElement, kind: str, value=None):
    """Apply eps_X (p_r -> X), eps_delta (p_r -> delta_{r1}) or numeric evaluation."""
    if kind == "eps_X":
        X = value
        return sum((v * X ** len(k) for k, v in f.coeffs.items()), Fraction(0))
    if kind == "eps_delta":
        return sum((v for k, v in f.coeffs.items() if all(r == 1 for r in k)), Fraction(0))
    if kind == "numeric":
        xs = list(value)
        powers: dict[int, object] = {}
        total = 0
        for k, v in f.coeffs.items():
            term = v
            for r in k:
                if r not in powers:
                    powers[r] = sum(x**r for x in xs)
                term = term * powers[r]
            total = total + term
        return total
    raise ValueError(f"unknown specialization {kind!r}")


# ---------------------------------------------------------------------------
# Monomial basis and transition matrices


class MonomialExpansion:
    """Symmetric polynomial as a sparse map partition -> coefficient of m_lam.

    ``nvars`` is the number of variables; partitions longer than ``nvars``
    are never stored.  ``nvars=None`` means the infinite-variable ring.
    """

    __slots__ = ("coeffs", "nvars")

    def __init__(self, coeffs: Mapping | None = None, nvars: int | None = None):
        self.nvars = nvars
        self.coeffs: dict[Partition, object] = {}
        for k, v in (coeffs or {}).items():
            k = Partition(k)
            if v and (nvars is None or len(k) <= nvars):
                self.coeffs[k] = v

    def __repr__(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, kv[0]), reverse=True)
        body = " + ".join(f"{c}*m{k!r}" for k, c in items[:8])
        more = "" if len(items) <= 8 else f" + ... ({len(items)} terms)"
        return f"MonomialExpansion({body or '0'}{more}; n={self.nvars})"

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, MonomialExpansion):
            return (self - other).is_zero()
        if other == 0:
            return self.is_zero()
        return NotImplemented

    __hash__ = None

    def degree(self) -> int:
        return max((k.size for k in self.coeffs), default=-1)

    def is_homogeneous(self) -> bool:
        return len({k.size for k in self.coeffs}) <= 1

    def coeff(self, lam: Sequence[int]):
        return self.coeffs.get(Partition(lam), 0)

    def _nv(self, other: "MonomialExpansion"):
        if self.nvars is None:
            return other.nvars
        if other.nvars is None:
            return self.nvars
        return min(self.nvars, other.nvars)

    def __add__(self, other):
        if not isinstance(other, MonomialExpansion):
            other = MonomialExpansion({EMPTY: other}, self.nvars)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return MonomialExpansion(out, self._nv(other))

    __radd__ = __add__

    def __neg__(self):
        return MonomialExpansion({k: -v for k, v in self.coeffs.items()}, self.nvars)

    def __sub__(self, other):
        if not isinstance(other, MonomialExpansion):
            other = MonomialExpansion({EMPTY: other}, self.nvars)
        return self + (-other)

    def scale(self, c) -> "MonomialExpansion":
        return MonomialExpansion({k: v * c for k, v in self.coeffs.items()}, self.nvars)

    def __mul__(self, other):
        if isinstance(other, MonomialExpansion):
            n = self._nv(other)
            if n is None:
                return p_to_m(m_to_p(self) * m_to_p(other), None)
            return MonomialExpansion.from_poly(self.to_poly(n) * other.to_poly(n))
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def restrict(self, n: int) -> "MonomialExpansion":
        return MonomialExpansion(self.coeffs, n)

    def to_poly(self, n: int | None = None) -> NVarPoly:
        n = self.nvars if n is None else n
        if n is None:
            raise ValueError("need a variable count to build a polynomial")
        terms: dict[tuple[int, ...], object] = {}
        for k, v in self.coeffs.items():
            for e in monomial_exponents(k, n):
                terms[e] = v
        return NVarPoly(n, terms)

    @classmethod
    def from_poly(cls, poly: NVarPoly, check: bool = False) -> "MonomialExpansion":
        """Collect a symmetric polynomial into the monomial basis."""
        if check and not poly.is_symmetric():
            raise ValueError("polynomial is not symmetric")
        out = {}
        for e, c in poly.terms.items():
            if all(e[i] >= e[i + 1] for i in range(len(e) - 1)):
                out[Partition(e)] = c
        return cls(out, poly.n)

    def evaluate(self, point: Sequence):
        n = len(point)
        total = 0
        for k, v in self.coeffs.items():
            s = 0
            for e in monomial_exponents(k, n):
                t = 1
                for x, p in zip(point, e):
                    if p:
                        t = t * x**p
                s = s + t
            total = total + v * s
        return total

    def at_ones(self, n: int | None = None) -> Fraction:
        """Exact value at 1_n."""
        n = self.nvars if n is None else n
        return sum((v * m_at_ones(k, n) for k, v in self.coeffs.items()), Fraction(0))

    def to_json(self) -> dict[str, str]:
        return {json_key(k): fraction_str(v) for k, v in sorted(self.coeffs.items(), key=lambda kv: (kv[0].size, tuple(-x for x in kv[0])))}


def m_at_ones(lam: Sequence[int], n: int) -> int:
    """m_lam(1,...,1): number of distinct rearrangements of lam padded to n."""
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    out = math.factorial(n) // math.factorial(n - len(lam))
    for m in lam.multiplicities().values():
        out //= math.factorial(m)
    return out


def _p_times_m(r: int, lam: Partition) -> dict[Partition, int]:
    """p_r * m_lam in the monomial basis (infinitely many variables)."""
    out: dict[Partition, int] = {}
    values = sorted(set(lam), reverse=True) + [0]
    for u in values:
        parts = list(lam)
        if u == 0:
            parts.append(r)
        else:
            parts[parts.index(u)] = u + r
        kappa = Partition(sorted(parts, reverse=True))
        out[kappa] = out.get(kappa, 0) + kappa.count(u + r)
    return out


@lru_cache(maxsize=None)
def p_in_m(mu: Partition) -> dict[Partition, int]:
    """Expansion p_mu = sum_lam L[mu, lam] m_lam."""
    mu = Partition(mu)
    if not mu:
        return {EMPTY: 1}
    rest = p_in_m(Partition(mu[1:]))
    out: dict[Partition, int] = {}
    for lam, c in rest.items():
        for kappa, d in _p_times_m(mu[0], lam).items():
            out[kappa] = out.get(kappa, 0) + c * d
    return out


@lru_cache(maxsize=None)
def m_in_p(lam: Partition) -> dict[Partition, Fraction]:
    """Expansion m_lam = sum_mu M[lam, mu] p_mu (inverse of p_in_m)."""
    lam = Partition(lam)
    # p_lam = L[lam,lam] m_lam + sum over strictly coarser kappa of L[lam,kappa] m_kappa
    row = p_in_m(lam)
    out: dict[Partition, Fraction] = {lam: Fraction(1)}
    for kappa, c in row.items():
        if kappa == lam:
            continue
        for mu, v in m_in_p(kappa).items():
            out[mu] = out.get(mu, 0) - c * v
    diag = row[lam]
    return {mu: v / diag for mu, v in out.items() if v}


def m_to_p(f: MonomialExpansion, cap: int | None = None) -> PowerSumElement:
    """Monomial expansion to power sums; faithful when nvars >= degree or nvars is None."""
    out: dict[Partition, object] = {}
    for lam, v in f.coeffs.items():
        for mu, w in m_in_p(lam).items():
            out[mu] = out.get(mu, 0) + v * w
    deg = f.degree()
    return PowerSumElement(out, max(cap or DEFAULT_DEGREE_CAP, deg))


def p_to_m(f: PowerSumElement, n: int | None) -> MonomialExpansion:
    """Power sums to monomials, projecting onto n variables (None keeps all)."""
    if f.truncated:
        raise TruncationError("cannot project a truncated element exactly")
    out: dict[Partition, object] = {}
    for mu, v in f.coeffs.items():
        for lam, w in p_in_m(mu).items():
            if n is not None and len(lam) > n:
                continue
            out[lam] = out.get(lam, 0) + v * w
    return MonomialExpansion(out, n)


def p_to_poly(f: PowerSumElement, n: int) -> NVarPoly:
    return p_to_m(f, n).to_poly(n)


def exp_p1(D: int) -> list[PowerSumElement]:
    """Layers p_1^d / d! of e^{p_1}, d = 0..D."""
    return [PowerSumElement.p(*([1] * d), cap=max(D, DEFAULT_DEGREE_CAP), coeff=Fraction(1, math.factorial(d))) for d in range(D + 1)]


def all_partitions(d: int) -> tuple[Partition, ...]:
    return partitions_list(d, None)


def elements_by_degree(f: PowerSumElement) -> dict[int, PowerSumElement]:
    out: dict[int, dict] = {}
    for k, v in f.coeffs.items():
        out.setdefault(k.size, {})[k] = v
    return {d: PowerSumElement(c, f.cap, f.truncated) for d, c in out.items()}


def sum_elements(items: Iterable[PowerSumElement], cap: int = DEFAULT_DEGREE_CAP) -> PowerSumElement:
    out: dict[Partition, object] = {}
    trunc = False
    for e in items:
        trunc = trunc or e.truncated
        for k, v in e.coeffs.items():
            out[k] = out.get(k, 0) + v
    return PowerSumElement(out, cap, trunc)
