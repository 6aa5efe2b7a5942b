"""Differential operators acting exactly on polynomials in n (or 2n) variables.

An operator is a linear combination of compositions of a few primitives:

    U(r, s)  = (1/s!) sum_i x_i^r D_i^s
    V(r)     = sum_{i != j} x_i^r D_i / (x_i - x_j)
    W        = sum_{i != j} x_i D_i(x_i .) / (x_i - x_j)   (the singular part of E')
    P(r)     = multiplication by p_r
    1        = identity

The singular sums are evaluated pairwise, (x_i^r D_i f - x_j^r D_j f)/(x_i - x_j),
by exact division; a non-divisible numerator raises SymmetryError.
Two-argument operators use 2n variables split into an x block and a y block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .jack import binom, jack, jstar_at_ones
from .partitions import (
    Partition,
    as_alpha,
    as_rational,
    gen_pochhammer,
    is_inf,
    k_of,
    partitions_list,
    rho,
)
from .polynomial import NVarPoly, SymmetryError
from .symfun import MonomialExpansion, PowerSumElement, p_to_poly


@dataclass(frozen=True)
class Primitive:
    name: str  # "U", "V", "W", "P" or "I"
    r: int = 0
    s: int = 0
    block: int = 0

    def __str__(self) -> str:
        tag = "" if self.block == 0 else "_y"
        if self.name == "U":
            return f"U{self.r}{self.s}{tag}"
        if self.name in ("V", "P"):
            return f"{self.name}{self.r}{tag}"
        return self.name + tag


IDENTITY = Primitive("I")


class OperatorExpr:
    """Formal sum of coefficient * (composition of primitives), applied right to left."""

    def __init__(self, terms=None, n: int = 1, blocks: int = 1):
        self.n = n
        self.blocks = blocks
        self.terms: dict[tuple[Primitive, ...], object] = {}
        for word, c in (terms or {}).items():
            if c:
                self.terms[tuple(word)] = self.terms.get(tuple(word), 0) + c

    @classmethod
    def primitive(cls, prim: Primitive, n: int, blocks: int = 1, c=Fraction(1)) -> "OperatorExpr":
        return cls({(prim,): c}, n, blocks)

    @classmethod
    def scalar(cls, c, n: int, blocks: int = 1) -> "OperatorExpr":
        return cls({(IDENTITY,): c}, n, blocks)

    def _like(self, other: "OperatorExpr") -> None:
        if (self.n, self.blocks) != (other.n, other.blocks):
            raise ValueError("operators act on different variable sets")

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        self._like(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return OperatorExpr(out, self.n, self.blocks)

    def __neg__(self) -> "OperatorExpr":
        return self.scale(-1)

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def scale(self, c) -> "OperatorExpr":
        return OperatorExpr({w: v * c for w, v in self.terms.items()}, self.n, self.blocks)

    def __rmul__(self, c) -> "OperatorExpr":
        return self.scale(c)

    def __matmul__(self, other: "OperatorExpr") -> "OperatorExpr":
        """Composition: (self @ other) f = self(other(f))."""
        self._like(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = tuple(p for p in w1 + w2 if p != IDENTITY) or (IDENTITY,)
                out[w] = out.get(w, 0) + c1 * c2
        return OperatorExpr(out, self.n, self.blocks)

    def __repr__(self) -> str:
        parts = [f"{c}*{'.'.join(map(str, w))}" for w, c in self.terms.items()]
        return " + ".join(parts) or "0"

    def __call__(self, f: NVarPoly, check_symmetry: bool = False) -> NVarPoly:
        return apply(self, f, check_symmetry)


# ---------------------------------------------------------------------------
# Primitive application


def _block_vars(n: int, block: int) -> range:
    return range(block * n, (block + 1) * n)


def _apply_U(f: NVarPoly, r: int, s: int, idx: range) -> NVarPoly:
    out = NVarPoly(f.n)
    for i in idx:
        g = f.diff(i, s)
        if r:
            g = g.mul_var(i, r)
        out = out + g
    return out.scale(Fraction(1, math.factorial(s))) if s > 1 else out


def _pairwise(f: NVarPoly, idx: range, g: Callable[[int], NVarPoly]) -> NVarPoly:
    """sum_{i != j} g_i / (x_i - x_j) as sum_{i<j} (g_i - g_j)/(x_i - x_j)."""
    cache = {i: g(i) for i in idx}
    out = NVarPoly(f.n)
    idx = list(idx)
    for a, i in enumerate(idx):
        for j in idx[a + 1 :]:
            num = cache[i] - cache[j]
            if num.is_zero():
                continue
            out = out + num.div_difference(i, j)
    return out


def _apply_primitive(p: Primitive, f: NVarPoly, n: int) -> NVarPoly:
    idx = _block_vars(n, p.block)
    if p.name == "I":
        return f
    if p.name == "U":
        return _apply_U(f, p.r, p.s, idx)
    if p.name == "V":
        return _pairwise(f, idx, lambda i: f.diff(i).mul_var(i, p.r) if p.r else f.diff(i))
    if p.name == "W":
        return _pairwise(f, idx, lambda i: f.mul_var(i).diff(i).mul_var(i))
    if p.name == "P":
        ps = NVarPoly(f.n)
        for i in idx:
            e = [0] * f.n
            e[i] = p.r
            ps = ps + NVarPoly(f.n, {tuple(e): Fraction(1)})
        return ps * f
    raise ValueError(f"unknown primitive {p.name!r}")


def is_block_symmetric(f: NVarPoly, n: int, blocks: int) -> bool:
    """Invariance under adjacent transpositions inside each block of n variables."""
    for b in range(blocks):
        for i in range(b * n, (b + 1) * n - 1):
            perm = list(range(f.n))
            perm[i], perm[i + 1] = perm[i + 1], perm[i]
            if f.permute(perm) != f:
                return False
    return True


def apply(op: OperatorExpr, f: NVarPoly, check_symmetry: bool = False) -> NVarPoly:
    """Exact image of f; optionally assert the output is (block-)symmetric."""
    if f.n != op.n * op.blocks:
        raise ValueError(f"operator acts on {op.n * op.blocks} variables, polynomial has {f.n}")
    memo: dict[tuple[Primitive, ...], NVarPoly] = {(): f}

    def image(word: tuple[Primitive, ...]) -> NVarPoly:
        if word in memo:
            return memo[word]
        res = _apply_primitive(word[0], image(word[1:]), op.n)
        memo[word] = res
        return res

    out = NVarPoly(f.n)
    for w, c in op.terms.items():
        out = out + image(w).scale(c)
    if check_symmetry and not is_block_symmetric(out, op.n, op.blocks):
        raise SymmetryError("operator output is not symmetric")
    return out


# ---------------------------------------------------------------------------
# Named operators


def U(r: int, s: int, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    return OperatorExpr.primitive(Primitive("U", r, s, block), n, blocks)


def V(r: int, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    return OperatorExpr.primitive(Primitive("V", r, 0, block), n, blocks)


def mult_p(r: int, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    return OperatorExpr.primitive(Primitive("P", r, 0, block), n, blocks)


def const(c, n: int, blocks: int = 1) -> OperatorExpr:
    return OperatorExpr.scalar(c, n, blocks)


def delta(r: int, k, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    """delta_r = sum x_i^r D_i^2 + 2k sum_{i != j} x_i^r D_i / (x_i - x_j)."""
    k = as_rational(k)
    return U(r, 2, n, block, blocks).scale(2) + V(r, n, block, blocks).scale(2 * k)


def eps(r: int, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    """eps_r = sum x_i^{r-1} D_i."""
    if r < 1:
        raise ValueError("eps_r needs r >= 1")
    return U(r - 1, 1, n, block, blocks)


def box(r: int, k, n: int, block: int = 0, blocks: int = 1) -> OperatorExpr:
    """box_r = (1/r) delta_r - k(n-1) eps_r."""
    k = as_rational(k)
    return delta(r, k, n, block, blocks).scale(Fraction(1, r)) - eps(r, n, block, blocks).scale(k * (n - 1))


def _p(k, n: int) -> Fraction:
    return as_rational(k) * (n - 1) + 1


def E_jacobi(a, b, k, n: int) -> OperatorExpr:
    """E_{a,b} = 2 box_2 - box_1 + C U_11 - A U_01 with A = a+p, C = a+b+2p."""
    a, b, k = as_rational(a), as_rational(b), as_rational(k)
    p = _p(k, n)
    A, C = a + p, a + b + 2 * p
    return box(2, k, n).scale(2) - box(1, k, n) + U(1, 1, n).scale(C) - U(0, 1, n).scale(A)


def E_hermite(k, n: int) -> OperatorExpr:
    """-2 sum x_i D_i + sum D_i^2 + 2k sum_{i != j} D_i / (x_i - x_j)."""
    k = as_rational(k)
    return U(1, 1, n).scale(-2) + U(0, 2, n).scale(2) + V(0, n).scale(2 * k)


def E_laguerre(a, k, n: int) -> OperatorExpr:
    """U_11 - (a+p) U_01 - box_1; eigenvalue |lam| on L^{(a)}_lam."""
    a, k = as_rational(a), as_rational(k)
    return U(1, 1, n) - U(0, 1, n).scale(a + _p(k, n)) - box(1, k, n)


def E_laplace(k, n: int) -> OperatorExpr:
    """sum (x_i^2 D_i^2 + x_i D_i) + 2k sum_{i != j} x_i^2 D_i / (x_i - x_j)."""
    k = as_rational(k)
    return U(2, 2, n).scale(2) + U(1, 1, n) + V(2, n).scale(2 * k)


def E_laplace_prime(k, n: int) -> OperatorExpr:
    """f -> sum_i [D_i(x_i D_i(x_i f)) + 2k sum_{j != i} x_i D_i(x_i f) / (x_i - x_j)]."""
    k = as_rational(k)
    # D_i x_i D_i x_i = x_i^2 D_i^2 + 3 x_i D_i + 1
    base = U(2, 2, n).scale(2) + U(1, 1, n).scale(3) + const(n, n)
    return base + OperatorExpr.primitive(Primitive("W"), n).scale(2 * k)


def laplace_eigenvalue(lam: Sequence[int], k, n: int) -> Fraction:
    """<lam, lam + 2k delta> with delta = (n-1, ..., 0)."""
    k = as_rational(k)
    lam = Partition(lam)
    return sum((Fraction(l) * (l + 2 * k * (n - i)) for i, l in enumerate(lam, start=1)), Fraction(0))


def Phi(p: int, q: int, params: Sequence, k, n: int) -> OperatorExpr:
    """Operator annihilating pFq(params) for (p, q) in {(2,1), (1,1), (0,1)}."""
    k = as_rational(k)
    params = [as_rational(v) for v in params]
    s = k * (n - 1)
    if (p, q) == (2, 1):
        a, b, c = params
        return (delta(2, k, n) - delta(1, k, n) + eps(2, n).scale(a + b + 1 - s)
                - eps(1, n).scale(c - s) + const(a * b * n, n))
    if (p, q) == (1, 1):
        a, c = params
        return delta(1, k, n) + eps(1, n).scale(c - s) - eps(2, n) - const(n * a, n)
    if (p, q) == (0, 1):
        (c,) = params
        return delta(1, k, n) + eps(1, n).scale(c - s) - const(n, n)
    raise ValueError(f"no operator for {p}F{q}")


def kernel_operator_rows(k, n: int, a=None, b=None, c=None) -> dict[str, OperatorExpr]:
    """Two-argument operators proposed for pFq(x, y); x is block 0, y is block 1.

    Only the 0F0 row is treated as established; the rest are experimental.
    delta_{3,y} is read with a second derivative, like every other delta_r.
    """
    k = as_rational(k)
    s = k * (n - 1)
    d1x = delta(1, k, n, 0, 2)
    e1x = eps(1, n, 0, 2)
    e3y = eps(3, n, 1, 2)
    d3y = delta(3, k, n, 1, 2)
    p1y = mult_p(1, n, 1, 2)
    rows = {"0F0": d1x - e3y - p1y.scale(s)}
    if a is not None:
        a = as_rational(a)
        rows["1F0"] = d1x - d3y - e3y.scale(a + 1 - s) - p1y.scale(a * s)
    if c is not None:
        c = as_rational(c)
        rows["0F1"] = d1x + e1x.scale(c - s) - p1y
        if a is not None:
            rows["1F1"] = d1x + e1x.scale(c - s) - e3y - p1y.scale(a)
            if b is not None:
                b = as_rational(b)
                rows["2F1"] = d1x + e1x.scale(c - s) - e3y.scale(a + b) - d3y - p1y.scale(a * b)
    return rows


# ---------------------------------------------------------------------------
# Checks


def eigencheck(op: OperatorExpr, f: NVarPoly, eigenvalue) -> NVarPoly:
    """apply(op, f) - eigenvalue * f; zero means f is an eigenfunction."""
    return apply(op, f) - f.scale(eigenvalue)


def series_polynomial(layers: Sequence[MonomialExpansion], n: int) -> NVarPoly:
    out = NVarPoly(n)
    for layer in layers:
        out = out + layer.to_poly(n)
    return out


def annihilation_check(op: OperatorExpr, layers: Sequence[MonomialExpansion], n: int) -> dict[int, Fraction]:
    """Largest residual coefficient in each degree d <= D-1 of op applied to sum of layers.

    Every primitive used by the hypergeometric operators changes degree by 0 or -1,
    so degree d of the image only sees layers d and d+1.
    """
    D = len(layers) - 1
    image = apply(op, series_polynomial(layers, n))
    out = {}
    for d in range(D):
        out[d] = image.homogeneous_part(d).max_abs_coeff()
    return out


def tensor_to_poly(tensor, n: int) -> NVarPoly:
    """A p(x) (x) p(y) tensor as a polynomial in 2n variables."""
    out = NVarPoly(2 * n)
    cache: dict = {}

    def block_poly(lam: Partition, block: int) -> NVarPoly:
        key = (lam, block)
        if key not in cache:
            small = p_to_poly(PowerSumElement({lam: Fraction(1)}, max(lam.size, 1)), n)
            terms = {}
            for e, c in small.terms.items():
                full = (e + (0,) * n) if block == 0 else ((0,) * n + e)
                terms[full] = c
            cache[key] = NVarPoly(2 * n, terms)
        return cache[key]

    for (ax, by), v in tensor.coeffs.items():
        out = out + (block_poly(ax, 0) * block_poly(by, 1)).scale(v)
    return out


def kernel_row_check(row: OperatorExpr, layers, n: int) -> dict[int, Fraction]:
    """Residual of a two-argument operator on truncated kernel layers, by total degree.

    The rows shift total degree by -1 or +1, so total degrees up to 2D-1 are complete.
    """
    D = len(layers) - 1
    total = NVarPoly(2 * n)
    for layer in layers:
        total = total + tensor_to_poly(layer, n)
    image = apply(row, total)
    return {d: image.homogeneous_part(d).max_abs_coeff() for d in range(2 * D)}


def exp_p1_poly(D: int, n: int) -> NVarPoly:
    """Truncation of e^{p_1} through degree D."""
    p1 = NVarPoly.power_sum(1, n)
    out = NVarPoly.constant(n, Fraction(1))
    term = NVarPoly.constant(n, Fraction(1))
    for d in range(1, D + 1):
        term = (term * p1).scale(Fraction(1, d))
        out = out + term
    return out


def truncated_residual(lhs: NVarPoly, rhs: NVarPoly, max_degree: int) -> Fraction:
    diff = lhs - rhs
    return max((diff.homogeneous_part(d).max_abs_coeff() for d in range(max_degree + 1)), default=Fraction(0))


def exponential_lemmas(k, n: int, D: int = 6) -> dict[str, Fraction]:
    """eps_1 e = n e, eps_2 e = p_1 e, box_1 e = p_1 e, box_2 e = p_2 e / 2,
    [box_1, box_2] e = (p_1 (k(n-1)+1) + p_2) e, for e = e^{p_1}, through degree D-1."""
    k = as_rational(k)
    e = exp_p1_poly(D, n)
    p1, p2 = NVarPoly.power_sum(1, n), NVarPoly.power_sum(2, n)
    b1, b2 = box(1, k, n), box(2, k, n)
    comm = b1 @ b2 - b2 @ b1
    top = D - 1
    return {
        "eps1": truncated_residual(apply(eps(1, n), e), e.scale(n), top),
        "eps2": truncated_residual(apply(eps(2, n), e), p1 * e, top),
        "box1": truncated_residual(apply(b1, e), p1 * e, top),
        "box2": truncated_residual(apply(b2, e), (p2 * e).scale(Fraction(1, 2)), top),
        "commutator": truncated_residual(apply(comm, e), (p1.scale(k * (n - 1) + 1) + p2) * e, top),
    }


def lemma_sums(mu: Sequence[int], alpha, n: int) -> dict[str, Fraction]:
    """Residuals of the three one-box sums over lam = mu + box:
    sum binom J*_lam(1) = nk J*_mu(1);
    sum binom rho(lam/mu) J*_lam(1) = |mu| k J*_mu(1);
    sum binom rho(lam/mu)^2 J*_lam(1) = ((1 + (n-1)k)|mu| + 2 rho(mu)) k J*_mu(1).
    """
    mu = Partition(mu)
    alpha = as_alpha(alpha)
    k = k_of(alpha)
    base = jstar_at_ones(mu, alpha, n)
    s0 = s1 = s2 = Fraction(0)
    for lam in mu.addable():
        if len(lam) > n:
            continue
        w = binom(lam, mu, alpha) * jstar_at_ones(lam, alpha, n)
        r = rho(lam, alpha) - rho(mu, alpha)
        s0 += w
        s1 += w * r
        s2 += w * r * r
    return {
        "i": s0 - n * k * base,
        "ii": s1 - mu.size * k * base,
        "iii": s2 - ((1 + (n - 1) * k) * mu.size + 2 * rho(mu, alpha)) * k * base,
    }


def omega_poly(lam: Sequence[int], alpha, n: int) -> NVarPoly:
    return jack(lam, alpha, n, "Omega").to_poly(n)


def omega_combination(coeffs: dict, alpha, n: int) -> NVarPoly:
    out = NVarPoly(n)
    for mu, c in coeffs.items():
        if len(Partition(mu)) <= n:
            out = out + omega_poly(mu, alpha, n).scale(c)
    return out


def one_box_action(lam: Sequence[int], alpha, n: int, power: int) -> NVarPoly:
    """sum_{mu = lam - box} rho(lam/mu)^power binom(lam, mu) Omega_mu."""
    lam = Partition(lam)
    coeffs = {}
    for mu in lam.removable():
        coeffs[mu] = (rho(lam, alpha) - rho(mu, alpha)) ** power * binom(lam, mu, alpha)
    return omega_combination(coeffs, alpha, n)


def symmetric_basis(max_degree: int, n: int) -> list[NVarPoly]:
    """Monomial symmetric polynomials m_lam in n variables with |lam| <= max_degree."""
    out = []
    for d in range(max_degree + 1):
        for lam in partitions_list(d, n):
            out.append(NVarPoly.monomial_symmetric(lam, n))
    return out
