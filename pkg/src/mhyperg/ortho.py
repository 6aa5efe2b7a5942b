"""Bessel functions and the Laguerre, Jacobi and Hermite families.

Family members are finite expansions in the basis {Omega_mu} (or {J*_mu});
Omega_mu = J_mu / J_mu(1_n), so the two bases differ by the scalar J*_mu(1_n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .hyper import HyperParams, Truncation, gamma_n, gamma_n_lam, pfq, pfq_two
from .jack import binom, jack, jack_power, jstar_at_ones
from .numeric import hooks_float, jack_values, principal_spec_float
from .partitions import (
    ContainmentError,
    ParameterError,
    Partition,
    as_alpha,
    as_rational,
    conjugate,
    gen_pochhammer,
    is_inf,
    k_of,
    rho,
    subpartitions,
)
from .polynomial import NVarPoly
from .symfun import DEFAULT_DEGREE_CAP, MonomialExpansion, PowerSumElement, sum_elements


class SingularParameterError(ZeroDivisionError):
    """A recursion denominator vanished at the requested parameters."""


@dataclass
class OmegaExpansion:
    """sum_mu coeffs[mu] * B_mu with B = Omega (basis="Omega") or J* (basis="Jstar")."""

    coeffs: dict
    alpha: object
    n: int
    basis: str = "Omega"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {Partition(k): v for k, v in self.coeffs.items() if v}
        self.alpha = as_alpha(self.alpha)
        if self.basis not in ("Omega", "Jstar"):
            raise ValueError(f"unknown basis {self.basis!r}")

    def _scalar(self, mu: Partition):
        return jstar_at_ones(mu, self.alpha, self.n)

    def to_basis(self, basis: str) -> "OmegaExpansion":
        if basis == self.basis:
            return self
        out = {}
        for mu, c in self.coeffs.items():
            s = self._scalar(mu)
            # Omega_mu = J*_mu / J*_mu(1_n)
            out[mu] = c / s if basis == "Jstar" else c * s
        return OmegaExpansion(out, self.alpha, self.n, basis, dict(self.params))

    def scale(self, c) -> "OmegaExpansion":
        return OmegaExpansion({k: v * c for k, v in self.coeffs.items()}, self.alpha, self.n, self.basis, dict(self.params))

    def __eq__(self, other) -> bool:
        if not isinstance(other, OmegaExpansion):
            return NotImplemented
        o = other.to_basis(self.basis)
        keys = set(self.coeffs) | set(o.coeffs)
        return all(self.coeffs.get(k, 0) == o.coeffs.get(k, 0) for k in keys)

    __hash__ = None

    def support(self) -> set:
        return set(self.coeffs)

    def to_monomial(self) -> MonomialExpansion:
        out = MonomialExpansion({}, self.n)
        for mu, c in self.coeffs.items():
            form = "Omega" if self.basis == "Omega" else "Jstar"
            out = out + jack(mu, self.alpha, self.n, form).scale(c)
        return out

    def to_poly(self) -> NVarPoly:
        return self.to_monomial().to_poly(self.n)

    def to_power(self, cap: int | None = None) -> PowerSumElement:
        deg = max((mu.size for mu in self.coeffs), default=0)
        cap = max(cap or DEFAULT_DEGREE_CAP, deg)
        terms = [jack_power(mu, self.alpha, self.basis, cap, self.n).scale(c) for mu, c in self.coeffs.items()]
        return sum_elements(terms, cap)

    def evaluate(self, x):
        """Exact (rational input) or float value at one point."""
        if all(isinstance(v, (int, Fraction)) for v in x):
            return self.to_monomial().evaluate([Fraction(v) for v in x])
        return float(self.evaluate_batch(np.asarray([x], dtype=float))[0])

    def evaluate_batch(self, X: np.ndarray) -> np.ndarray:
        """Float values at each row of X (shape (N, n))."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        D = max((mu.size for mu in self.coeffs), default=0)
        vals = jack_values(self.alpha, X, D)
        out = np.zeros(X.shape[0])
        for mu, c in self.coeffs.items():
            h, hp = hooks_float(mu, self.alpha)
            if self.basis == "Omega":
                scale = 1.0 / principal_spec_float(mu, self.alpha, self.n)
            else:
                scale = 1.0 / (h * hp)
            out += float(c) * scale * vals[mu]
        return out

    def to_json(self) -> dict:
        from .symfun import fraction_str, json_key

        return {json_key(k): fraction_str(v) for k, v in sorted(self.coeffs.items(), key=lambda kv: (-kv[0].size, tuple(-x for x in kv[0])))}


def _p_param(alpha, n: int) -> Fraction:
    return k_of(alpha) * (n - 1) + 1


def _finite(alpha):
    alpha = as_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("this family needs a finite alpha")
    return alpha


def _check_length(lam: Partition, n: int) -> None:
    if len(lam) > n:
        raise ContainmentError(f"{lam} has more than {n} parts")


# ---------------------------------------------------------------------------
# Laguerre


def laguerre(lam: Sequence[int], a, alpha, n: int) -> OmegaExpansion:
    """L^{(a)}_lam = sum_mu (-1)^{|mu|} a_{lam/mu} (a+p)_lam/(a+p)_mu J*_mu,
    with a_{lam/mu} = binom(lam, mu) J*_lam(1_n) / J*_mu(1_n)."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    _check_length(lam, n)
    a = as_rational(a)
    A = a + _p_param(alpha, n)
    top = gen_pochhammer(A, lam, alpha)
    jl = jstar_at_ones(lam, alpha, n)
    out = {}
    for mu in subpartitions(lam):
        den = gen_pochhammer(A, mu, alpha)
        if den == 0:
            raise ParameterError(f"(a+p)_{mu} vanishes for a={a}")
        coef = binom(lam, mu, alpha) * jl / jstar_at_ones(mu, alpha, n)
        out[mu] = (-1) ** mu.size * coef * top / den
    return OmegaExpansion(out, alpha, n, "Jstar", {"family": "laguerre", "lambda": lam, "a": a})


def laguerre_omega_form(lam: Sequence[int], a, alpha, n: int) -> OmegaExpansion:
    """sum_mu (-1)^{|mu|} binom(lam, mu) (a+p)_lam/(a+p)_mu Omega_mu (differs by J*_lam(1_n))."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    _check_length(lam, n)
    a = as_rational(a)
    A = a + _p_param(alpha, n)
    top = gen_pochhammer(A, lam, alpha)
    out = {}
    for mu in subpartitions(lam):
        den = gen_pochhammer(A, mu, alpha)
        if den == 0:
            raise ParameterError(f"(a+p)_{mu} vanishes for a={a}")
        out[mu] = (-1) ** mu.size * binom(lam, mu, alpha) * top / den
    return OmegaExpansion(out, alpha, n, "Omega", {"family": "laguerre-omega", "lambda": lam, "a": a})


def laguerre_norm(lam: Sequence[int], a, alpha, n: int) -> float:
    """|f_lam|_a^2 = 2^{-n(a+p)} alpha^{-|lam|} Gamma_n(a+p; lam) J*_lam(1_n)."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    p = float(_p_param(alpha, n))
    A = float(a) + p
    return 2.0 ** (-n * A) * float(alpha) ** (-lam.size) * gamma_n_lam(A, lam, alpha, n) * float(jstar_at_ones(lam, alpha, n))


def laguerre_norm_ratio(lam: Sequence[int], a, alpha, n: int) -> Fraction:
    """norm(lam)/norm(()) = alpha^{-|lam|} (a+p)_lam J*_lam(1_n), exact."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    A = as_rational(a) + _p_param(alpha, n)
    return alpha ** (-lam.size) * gen_pochhammer(A, lam, alpha) * jstar_at_ones(lam, alpha, n)


# ---------------------------------------------------------------------------
# Jacobi


def _coerce(value, like):
    """Bring a Fraction into the arithmetic of ``like`` (e.g. a sympy expression)."""
    if isinstance(like, (Fraction, int, float)):
        return value
    try:
        import sympy

        if isinstance(like, sympy.Basic) and isinstance(value, Fraction):
            return sympy.Rational(value.numerator, value.denominator)
    except ImportError:  # pragma: no cover
        pass
    return value


def _is_zero(x) -> bool:
    try:
        import sympy

        if isinstance(x, sympy.Basic):
            return sympy.simplify(x) == 0
    except ImportError:  # pragma: no cover
        pass
    return x == 0


def jacobi_c(lam: Sequence[int], mu: Sequence[int], C, alpha):
    """c_{lam/mu}(C) from the downward recursion with c_{lam/lam} = 1."""
    lam, mu = Partition(lam), Partition(mu)
    alpha = _finite(alpha)
    if not lam.contains(mu):
        return _coerce(Fraction(0), C)
    if not isinstance(C, (Fraction, int, float)):
        return _jacobi_c_generic(lam, mu, C, alpha)
    return _jacobi_c_cached(lam, mu, as_rational(C), alpha)


@lru_cache(maxsize=None)
def _jacobi_c_cached(lam: Partition, mu: Partition, C: Fraction, alpha: Fraction) -> Fraction:
    if lam == mu:
        return Fraction(1)
    total = Fraction(0)
    for nu in mu.addable():
        if lam.contains(nu):
            total += binom(nu, mu, alpha) * _jacobi_c_cached(lam, nu, C, alpha)
    den = C * (lam.size - mu.size) + 2 * (rho(lam, alpha) - rho(mu, alpha))
    if den == 0:
        raise SingularParameterError(f"vanishing recursion denominator at ({lam}, {mu}) for C={C}")
    return total / den


def _jacobi_c_generic(lam: Partition, mu: Partition, C, alpha):
    memo = {}

    def rec(m: Partition):
        if m in memo:
            return memo[m]
        if m == lam:
            memo[m] = _coerce(Fraction(1), C)
            return memo[m]
        total = _coerce(Fraction(0), C)
        for nu in m.addable():
            if lam.contains(nu):
                total = total + _coerce(binom(nu, m, alpha), C) * rec(nu)
        den = C * (lam.size - m.size) + _coerce(2 * (rho(lam, alpha) - rho(m, alpha)), C)
        if _is_zero(den):
            raise SingularParameterError(f"vanishing recursion denominator at ({lam}, {m})")
        memo[m] = total / den
        return memo[m]

    return rec(mu)


def jacobi_c_tableau(lam: Sequence[int], mu: Sequence[int], C, alpha):
    """sum over chains lam = l0 > l1 > ... > lr = mu of prod_i binom(l_{i-1}, l_i) / (iC + 2 rho(lam/l_i))."""
    lam, mu = Partition(lam), Partition(mu)
    alpha = _finite(alpha)
    if not lam.contains(mu):
        return _coerce(Fraction(0), C)
    rl = rho(lam, alpha)

    memo = {}

    def rec(nu: Partition):
        if nu == mu:
            return _coerce(Fraction(1), C)
        if nu in memo:
            return memo[nu]
        i = lam.size - nu.size + 1
        total = _coerce(Fraction(0), C)
        for kappa in nu.removable():
            if kappa.contains(mu):
                den = i * C + _coerce(2 * (rl - rho(kappa, alpha)), C)
                if _is_zero(den):
                    raise SingularParameterError(f"vanishing tableau denominator at ({lam}, {kappa})")
                total = total + _coerce(binom(nu, kappa, alpha), C) / den * rec(kappa)
        memo[nu] = total
        return total

    return rec(lam)


def jacobi(lam: Sequence[int], a, b, alpha, n: int) -> OmegaExpansion:
    """G^{(a,b)}_lam = sum_mu (-1)^{|mu|} (A)_lam/(A)_mu c_{lam/mu}(C) Omega_mu, A = a+p, C = a+b+2p."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    _check_length(lam, n)
    a, b = as_rational(a), as_rational(b)
    p = _p_param(alpha, n)
    A, C = a + p, a + b + 2 * p
    top = gen_pochhammer(A, lam, alpha)
    out = {}
    for mu in subpartitions(lam):
        den = gen_pochhammer(A, mu, alpha)
        if den == 0:
            raise ParameterError(f"(a+p)_{mu} vanishes for a={a}")
        out[mu] = (-1) ** mu.size * top / den * jacobi_c(lam, mu, C, alpha)
    return OmegaExpansion(out, alpha, n, "Omega", {"family": "jacobi", "lambda": lam, "a": a, "b": b})


def jacobi_duality_probe(lam: Sequence[int], a, b, alpha, n: int) -> dict:
    """Compare the expansions of omega_alpha G_lam(x; alpha) and G_{lam'}(-x; 1/alpha)
    at the dual parameters A' = -alpha A, C' = -alpha C, n' = -n/alpha, in the basis
    J_nu(x; 1/alpha).  Only coefficient formulas are used, so n' may be non-integral."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    beta = 1 / alpha
    a, b = as_rational(a), as_rational(b)
    p = _p_param(alpha, n)
    A, C = a + p, a + b + 2 * p
    Ad, Cd = -alpha * A, -alpha * C
    worst = Fraction(0)
    rows = {}
    for mu in subpartitions(lam):
        if len(mu) > n:
            continue
        nu = conjugate(mu)
        lhs = (-1) ** mu.size * gen_pochhammer(A, lam, alpha) / gen_pochhammer(A, mu, alpha) \
            * jacobi_c(lam, mu, C, alpha) / gen_pochhammer(n * k_of(alpha), mu, alpha)
        # J_nu(1_{n'}; beta) = beta^{|nu|} (n'/beta; beta)_nu with n'/beta = -n
        at1 = beta ** nu.size * gen_pochhammer(Fraction(-n), nu, beta)
        rhs = gen_pochhammer(Ad, conjugate(lam), beta) / gen_pochhammer(Ad, nu, beta) \
            * jacobi_c(conjugate(lam), nu, Cd, beta) / at1
        rows[tuple(mu)] = (lhs, rhs)
        worst = max(worst, abs(lhs - rhs))
    return {"max_residual": worst, "rows": rows}


# ---------------------------------------------------------------------------
# Hermite


@lru_cache(maxsize=None)
def _hermite_coeffs(lam: Partition, alpha: Fraction) -> dict:
    """a_{lam pi} with a_{lam lam} = 1 from the two-box recurrence."""
    subs = sorted(subpartitions(lam), key=lambda m: -m.size)
    coeffs = {lam: Fraction(1)}
    for pi in subs:
        if pi == lam:
            continue
        gap = lam.size - pi.size
        if gap % 2:
            continue
        total = Fraction(0)
        # pairs mu > nu > pi with one box each, mu inside lam
        for nu in pi.addable():
            if not lam.contains(nu):
                continue
            r2 = rho(nu, alpha) - rho(pi, alpha)
            b2 = binom(nu, pi, alpha)
            for mu in nu.addable():
                c = coeffs.get(mu)
                if not c or not lam.contains(mu):
                    continue
                total += c * binom(mu, nu, alpha) * b2 * ((rho(mu, alpha) - rho(nu, alpha)) - r2)
        val = total / (-2 * gap)
        if val:
            coeffs[pi] = val
    return coeffs


def hermite(lam: Sequence[int], alpha, n: int) -> OmegaExpansion:
    """H_lam = 2^{|lam|} sum_pi a_{lam pi} Omega_pi."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    _check_length(lam, n)
    scale = Fraction(2) ** lam.size
    coeffs = {pi: scale * c for pi, c in _hermite_coeffs(lam, alpha).items() if len(pi) <= n}
    return OmegaExpansion(coeffs, alpha, n, "Omega", {"family": "hermite", "lambda": lam})


def hermite_c(alpha, n: int) -> float:
    """c_n = pi^{n/2} / 2^{k n (n-1)/2}."""
    k = float(k_of(alpha))
    return math.pi ** (n / 2) / 2 ** (k * n * (n - 1) / 2)


def hermite_norm(lam: Sequence[int], alpha, n: int) -> float:
    """c_n 2^{|lam|} / (alpha^{|lam|} J*_lam(1_n))."""
    lam = Partition(lam)
    return hermite_c(alpha, n) * float(hermite_norm_ratio(lam, alpha, n))


def hermite_norm_ratio(lam: Sequence[int], alpha, n: int) -> Fraction:
    lam = Partition(lam)
    alpha = _finite(alpha)
    return Fraction(2) ** lam.size / (alpha ** lam.size * jstar_at_ones(lam, alpha, n))


def p2_power_coefficient(lam: Sequence[int], alpha) -> Fraction:
    """Coefficient of p_2^m in J_lam (|lam| = 2m), zero for odd |lam|."""
    lam = Partition(lam)
    if lam.size % 2:
        return Fraction(0)
    J = jack_power(lam, alpha, "J", max(DEFAULT_DEGREE_CAP, lam.size))
    return J.coeffs.get(Partition([2] * (lam.size // 2)), Fraction(0))


def hermite_at_zero(lam: Sequence[int], alpha) -> Fraction:
    """(-2/alpha)^m times the p_2^m coefficient of J_lam; zero for odd |lam|."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    if lam.size % 2:
        return Fraction(0)
    m = lam.size // 2
    return (Fraction(-2) / alpha) ** m * p2_power_coefficient(lam, alpha)


def gaussian_moment(lam: Sequence[int], alpha) -> Fraction:
    """(1/c_n) int e^{-p_2} Omega_lam dmu = (2 alpha)^{-m} [p_2^m] J_lam."""
    lam = Partition(lam)
    alpha = _finite(alpha)
    if lam.size % 2:
        return Fraction(0)
    m = lam.size // 2
    return (2 * alpha) ** (-m) * p2_power_coefficient(lam, alpha)


# ---------------------------------------------------------------------------
# Bessel


def bessel(a, x, alpha, tr: Truncation | int = 30):
    """A_a(x) = Gamma_n(a+p)^{-1} 0F1(a+p; -x)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    A = float(a) + float(_p_param(alpha, n))
    res = pfq(HyperParams((), (A,), alpha), -x, tr)
    g = gamma_n(A, alpha, n)
    res.value = res.value / g
    res.tail = res.tail / g
    return res


def bessel_two(a, x, y, alpha, tr: Truncation | int = 30):
    """A_a(x, y) = Gamma_n(a+p)^{-1} 0F1(a+p; -x, y)."""
    x = np.asarray(x, dtype=float)
    n = x.shape[-1]
    A = float(a) + float(_p_param(alpha, n))
    res = pfq_two(HyperParams((), (A,), alpha), -x, y, tr)
    g = gamma_n(A, alpha, n)
    res.value = res.value / g
    res.tail = res.tail / g
    return res
