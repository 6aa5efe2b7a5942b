"""Hypergeometric series of matrix argument (eigenvalue form) and their identities.

Numeric series are summed degree by degree over partitions with at most n
parts; within a degree the terms are added with compensated summation, and the
magnitude of the last computed degree is reported as a heuristic tail.
Exact ("formal") layers are available both in the power-sum basis (independent
of n) and projected onto n variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

import numpy as np

from .partitions import (
    EMPTY,
    ParameterError,
    Partition,
    as_alpha,
    as_rational,
    gen_pochhammer,
    hook_products,
    is_inf,
    k_of,
    partitions_list,
    rectangle,
)
from .numeric import hooks_float, jack_values, neumaier_sum, principal_spec_float
from .symfun import (
    DEFAULT_DEGREE_CAP,
    MonomialExpansion,
    PowerSumElement,
    omega_alpha,
    p_to_m,
    sum_elements,
)


class DomainError(ValueError):
    """A gamma factor or Pochhammer denominator hits a pole."""


class PoleError(DomainError):
    pass


class OverflowErrorSeries(ArithmeticError):
    """A non-finite intermediate appeared while summing a series."""


class PreconditionError(ValueError):
    """An identity was asked about parameters outside its hypotheses."""


# ---------------------------------------------------------------------------
# Generalized gamma and beta functions


def _gamma(x: float, label: str) -> float:
    if x <= 0 and float(x).is_integer():
        raise DomainError(f"gamma pole at {label} = {x}")
    return math.gamma(x)


def gamma_n(a, alpha, n: int) -> float:
    """Gamma_n(a; alpha) = prod_{i=1}^n Gamma(a - k(i-1))."""
    k = float(k_of(alpha))
    out = 1.0
    for i in range(n):
        out *= _gamma(float(a) - k * i, f"a - k*{i}")
    return out


def gamma_n_lam(a, lam: Sequence[int], alpha, n: int) -> float:
    """Gamma_n(a; lam; alpha) = prod_i Gamma(a + lam_i - k(i-1))."""
    lam = Partition(lam)
    k = float(k_of(alpha))
    out = 1.0
    for i in range(n):
        out *= _gamma(float(a) + lam.part(i + 1) - k * i, f"a + lam_{i + 1} - k*{i}")
    return out


def log_gamma_n(a, alpha, n: int) -> float:
    k = float(k_of(alpha))
    total = 0.0
    for i in range(n):
        x = float(a) - k * i
        if x <= 0 and x.is_integer():
            raise DomainError(f"gamma pole at a - k*{i} = {x}")
        total += math.lgamma(x)
    return total


def beta_n(a, b, alpha, n: int) -> float:
    """B_n(a, b) = Gamma_n(a) Gamma_n(b) / Gamma_n(a + b)."""
    return math.exp(log_gamma_n(a, alpha, n) + log_gamma_n(b, alpha, n) - log_gamma_n(float(a) + float(b), alpha, n))


def c_n_prime(alpha, n: int) -> float:
    """c'_n(alpha) = prod_{i=1}^n Gamma(ik + 1) / Gamma(k + 1)."""
    k = float(k_of(alpha))
    out = 1.0
    for i in range(1, n + 1):
        out *= math.gamma(i * k + 1) / math.gamma(k + 1)
    return out


# ---------------------------------------------------------------------------
# Parameters


@dataclass(frozen=True)
class HyperParams:
    upper: tuple = ()
    lower: tuple = ()
    alpha: object = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(_param(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(_param(b) for b in self.lower))
        object.__setattr__(self, "alpha", as_alpha(self.alpha))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def coefficient(self, lam: Partition, exact: bool = True):
        """(a)_lam / (b)_lam, raising PoleError on a vanishing denominator."""
        if exact:
            num = Fraction(1)
            for a in self.upper:
                num *= gen_pochhammer(as_rational(a), lam, self.alpha)
            den = Fraction(1)
            for b in self.lower:
                den *= gen_pochhammer(as_rational(b), lam, self.alpha)
        else:
            num = 1.0
            for a in self.upper:
                num *= gen_pochhammer(float(a), lam, self.alpha)
            den = 1.0
            for b in self.lower:
                den *= gen_pochhammer(float(b), lam, self.alpha)
        if den == 0:
            raise PoleError(f"lower parameter Pochhammer vanishes at {lam}")
        return num / den

    def check_poles(self, D: int, n: int | None) -> None:
        k = k_of(self.alpha)
        for b in self.lower:
            b = as_rational(b) if not isinstance(b, float) else b
            rows = n if n is not None else D
            for i in range(min(rows, D)):
                start = b - k * i
                if isinstance(start, float):
                    bad = start <= 0 and float(start).is_integer() and -start < D
                else:
                    bad = start <= 0 and start.denominator == 1 and -start < D
                if bad:
                    raise PoleError(f"lower parameter {b} gives a zero Pochhammer factor in row {i + 1}")


def _param(a):
    if isinstance(a, (Fraction, int)):
        return Fraction(a)
    if isinstance(a, float):
        return a
    return as_rational(a)


@dataclass(frozen=True)
class Truncation:
    max_degree: int = 30
    n: int | None = None


@dataclass
class SeriesResult:
    value: float
    tail: float
    degrees_used: int
    layers: list = field(default_factory=list)

    def __iter__(self):
        yield self.value
        yield self.tail


# ---------------------------------------------------------------------------
# Numeric series


def _series_weights(params: HyperParams, D: int, n: int):
    """Per-partition scalar (a)/(b) alpha^{|lam|}/(h h') or (a)/(b)/lam! at alpha = inf."""
    alpha = params.alpha
    out = []
    for d in range(D + 1):
        layer = []
        for lam in partitions_list(d, n):
            c = float(params.coefficient(lam, exact=False))
            if is_inf(alpha):
                w = c / lam.factorial()
            else:
                h, hp = hooks_float(lam, alpha)
                w = c * float(alpha) ** d / (h * hp)
            layer.append((lam, w))
        out.append(layer)
    return out


def _finish(layer_sums: list[np.ndarray], scalar: bool) -> SeriesResult:
    total = neumaier_sum(layer_sums) if layer_sums else np.zeros(1)
    if not np.all(np.isfinite(total)):
        raise OverflowErrorSeries("non-finite partial sum")
    tail = np.abs(layer_sums[-1]) if layer_sums else np.zeros_like(total)
    if scalar:
        return SeriesResult(float(total[0]), float(tail[0]), len(layer_sums) - 1, [float(s[0]) for s in layer_sums])
    return SeriesResult(total, tail, len(layer_sums) - 1, layer_sums)


def pfq(params: HyperParams, x, tr: Truncation | int = 30) -> SeriesResult:
    """One-argument series sum_lam (a)_lam/(b)_lam alpha^{|lam|} J*_lam(x).

    ``x`` is a vector of n eigenvalues or an (N, n) batch.
    """
    D = tr.max_degree if isinstance(tr, Truncation) else int(tr)
    X = np.asarray(x, dtype=float)
    scalar = X.ndim == 1
    X = np.atleast_2d(X)
    n = X.shape[1]
    params.check_poles(D, n)
    vals = jack_values(params.alpha, X, D)
    layers = []
    for layer in _series_weights(params, D, n):
        layers.append(neumaier_sum([w * vals[lam] for lam, w in layer]))
    return _finish(layers, scalar)


def pfq_two(params: HyperParams, x, y, tr: Truncation | int = 30) -> SeriesResult:
    """Two-argument series with J*_lam(x) J*_lam(y) / J*_lam(1_n)."""
    D = tr.max_degree if isinstance(tr, Truncation) else int(tr)
    X = np.asarray(x, dtype=float)
    scalar = X.ndim == 1
    X = np.atleast_2d(X)
    n = X.shape[1]
    Y = np.atleast_2d(np.asarray(y, dtype=float))
    if Y.shape[1] != n:
        raise ValueError("x and y need the same number of eigenvalues")
    params.check_poles(D, n)
    vx = jack_values(params.alpha, X, D)
    vy = jack_values(params.alpha, Y, D)
    layers = []
    for layer in _series_weights(params, D, n):
        terms = []
        for lam, w in layer:
            if is_inf(params.alpha):
                at1 = _m_at_ones_float(lam, n)
            else:
                at1 = principal_spec_float(lam, params.alpha, n)
            terms.append(w * vx[lam] * vy[lam] / at1)
        layers.append(neumaier_sum(terms))
    return _finish(layers, scalar)


def _m_at_ones_float(lam: Partition, n: int) -> float:
    from .symfun import m_at_ones

    return float(m_at_ones(lam, n))


def exp_kernel(x, y, alpha, tr: Truncation | int = 30) -> SeriesResult:
    """e(x, y) = 0F0(x, y; alpha)."""
    return pfq_two(HyperParams((), (), alpha), x, y, tr)


def exp_kernel_inf(x, y) -> float:
    """e(x, y; infinity) = (1/n!) sum over permutations w of exp(<x, w y>)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    perms = list(permutations(range(len(y))))
    return float(sum(math.exp(float(np.dot(x, y[list(w)]))) for w in perms) / len(perms))


def exp_kernel_det(x, y) -> float:
    """e(x, y; 1) by the determinantal formula prod_{j<n} j! det[e^{x_i y_j}] / (V(x) V(y))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    M = np.exp(np.outer(x, y))
    vx = np.prod([x[i] - x[j] for i in range(n) for j in range(i + 1, n)]) if n > 1 else 1.0
    vy = np.prod([y[i] - y[j] for i in range(n) for j in range(i + 1, n)]) if n > 1 else 1.0
    const = math.prod(math.factorial(j) for j in range(n))
    return float(const * np.linalg.det(M) / (vx * vy))


# ---------------------------------------------------------------------------
# Exact layers


def pfq_layers_power(params: HyperParams, D: int, n: int | None = None, scale=1) -> list[PowerSumElement]:
    """Degree layers sum_{|lam|=d} (a)/(b) alpha^d J*_lam(x) * scale^d in the power-sum basis.

    With ``n`` given only partitions of length <= n are summed (the others
    vanish after projection anyway).
    """
    from .jack import jack_power

    alpha = params.alpha
    cap = max(D, DEFAULT_DEGREE_CAP)
    out = []
    for d in range(D + 1):
        terms = []
        for lam in partitions_list(d, n):
            c = params.coefficient(lam)
            if not c:
                continue
            if is_inf(alpha):
                el = jack_power(lam, alpha, "P", cap).scale(c / lam.factorial())
            else:
                el = jack_power(lam, alpha, "Jstar", cap).scale(c * alpha**d)
            terms.append(el)
        out.append(sum_elements(terms, cap).scale(Fraction(scale) ** d if not isinstance(scale, float) else scale**d))
    return out


def pfq_formal(params: HyperParams, D: int, n: int) -> list[MonomialExpansion]:
    """Exact degree layers of the series as n-variable monomial expansions."""
    params.check_poles(D, n)
    return [p_to_m(layer, n) for layer in pfq_layers_power(params, D, n)]


def multiply_layers(f: list[PowerSumElement], g: list[PowerSumElement], D: int) -> list[PowerSumElement]:
    cap = max(D, DEFAULT_DEGREE_CAP)
    out = []
    for d in range(D + 1):
        terms = [f[i].with_cap(cap) * g[d - i].with_cap(cap) for i in range(d + 1) if i < len(f) and d - i < len(g)]
        out.append(sum_elements(terms, cap))
    return out


def _max_residual_n(diff: list[PowerSumElement], n: int) -> Fraction:
    worst = Fraction(0)
    for layer in diff:
        m = p_to_m(layer, n)
        for v in m.coeffs.values():
            worst = max(worst, abs(v))
    return worst


def _max_residual_lambda(diff: list[PowerSumElement]) -> Fraction:
    return max((abs(v) for layer in diff for v in layer.coeffs.values()), default=Fraction(0))


# ---------------------------------------------------------------------------
# Two-argument exact series as tensors in p(x) (x) p(y)


class PowerSumTensor:
    """Sparse map (rho, sigma) -> coefficient of p_rho(x) p_sigma(y)."""

    def __init__(self, coeffs=None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def outer(cls, f: PowerSumElement, g: PowerSumElement, c=1) -> "PowerSumTensor":
        return cls({(a, b): c * u * v for a, u in f.coeffs.items() for b, v in g.coeffs.items()})

    def __add__(self, other: "PowerSumTensor") -> "PowerSumTensor":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return PowerSumTensor(out)

    def __sub__(self, other: "PowerSumTensor") -> "PowerSumTensor":
        return self + other.scale(-1)

    def scale(self, c) -> "PowerSumTensor":
        return PowerSumTensor({k: v * c for k, v in self.coeffs.items()})

    def __mul__(self, other: "PowerSumTensor") -> "PowerSumTensor":
        out: dict = {}
        for (a1, b1), u in self.coeffs.items():
            for (a2, b2), v in other.coeffs.items():
                key = (Partition(sorted(a1 + a2, reverse=True)), Partition(sorted(b1 + b2, reverse=True)))
                out[key] = out.get(key, 0) + u * v
        return PowerSumTensor(out)

    def map_x(self, fn) -> "PowerSumTensor":
        """Apply a linear map on the x factor given as fn(PowerSumElement) -> PowerSumElement."""
        out = PowerSumTensor()
        groups: dict[Partition, dict] = {}
        for (a, b), v in self.coeffs.items():
            groups.setdefault(b, {})[a] = v
        for b, fx in groups.items():
            img = fn(PowerSumElement(fx, cap=10**6))
            out = out + PowerSumTensor({(a, b): v for a, v in img.coeffs.items()})
        return out

    def project(self, n: int) -> dict:
        """Coefficients of m_kappa(x) m_tau(y) in n variables each."""
        from .symfun import p_in_m

        out: dict = {}
        for (a, b), v in self.coeffs.items():
            ma = p_in_m(a)
            mb = p_in_m(b)
            for ka, ca in ma.items():
                if len(ka) > n:
                    continue
                for kb, cb in mb.items():
                    if len(kb) > n:
                        continue
                    key = (ka, kb)
                    out[key] = out.get(key, 0) + v * ca * cb
        return {k: v for k, v in out.items() if v}


def _max_abs(d: dict) -> Fraction:
    return max((abs(v) for v in d.values()), default=Fraction(0))


def pfq_two_layers(params: HyperParams, D: int, n: int, x_scale=1, y_scale=1) -> list[PowerSumTensor]:
    """Layers of the two-argument series sum (a)/(b) alpha^d J*(x) J*(y) / J*(1_n)."""
    from .jack import jack_power, jstar_at_ones

    alpha = params.alpha
    out = []
    for d in range(D + 1):
        t = PowerSumTensor()
        for lam in partitions_list(d, n):
            c = params.coefficient(lam)
            if not c:
                continue
            js = jack_power(lam, alpha, "Jstar", max(D, DEFAULT_DEGREE_CAP))
            w = c * alpha**d / jstar_at_ones(lam, alpha, n) * Fraction(x_scale) ** d * Fraction(y_scale) ** d
            t = t + PowerSumTensor.outer(js, js, w)
        out.append(t)
    return out


# ---------------------------------------------------------------------------
# Identity checks


@dataclass
class IdentityReport:
    name: str
    params: dict
    max_residual: object
    status: str
    detail: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.status == "pass"


def _status(res, tol=0) -> str:
    return "pass" if abs(res) <= tol else "fail"


def _rat(v) -> Fraction:
    return as_rational(v)


def check_euler(a, b, c, alpha, D: int, n: int) -> IdentityReport:
    """2F1(a,b;c;y) = |1-y|^{c-a-b} 2F1(c-a,c-b;c;y), compared layer by layer."""
    a, b, c = _rat(a), _rat(b), _rat(c)
    alpha = as_alpha(alpha)
    lhs = pfq_layers_power(HyperParams((a, b), (c,), alpha), D)
    pre = pfq_layers_power(HyperParams((a + b - c,), (), alpha), D)
    post = pfq_layers_power(HyperParams((c - a, c - b), (c,), alpha), D)
    rhs = multiply_layers(pre, post, D)
    diff = [l - r for l, r in zip(lhs, rhs)]
    res = _max_residual_n(diff, n)
    return IdentityReport("euler", {"a": a, "b": b, "c": c, "alpha": alpha, "D": D, "n": n}, res, _status(res),
                          {"residual_symmetric_functions": _max_residual_lambda(diff)})


def check_kummer(a, b, alpha, D: int, n: int) -> IdentityReport:
    """1F1(a;b;y) = e^{tr y} 1F1(b-a;b;-y), compared layer by layer."""
    a, b = _rat(a), _rat(b)
    alpha = as_alpha(alpha)
    lhs = pfq_layers_power(HyperParams((a,), (b,), alpha), D)
    ex = pfq_layers_power(HyperParams((), (), alpha), D)
    neg = pfq_layers_power(HyperParams((b - a,), (b,), alpha), D, scale=-1)
    rhs = multiply_layers(ex, neg, D)
    diff = [l - r for l, r in zip(lhs, rhs)]
    res = _max_residual_n(diff, n)
    return IdentityReport("kummer", {"a": a, "b": b, "alpha": alpha, "D": D, "n": n}, res, _status(res),
                          {"residual_symmetric_functions": _max_residual_lambda(diff)})


def check_duality(upper, lower, alpha, D: int, n: int) -> IdentityReport:
    """omega_alpha pFq(a;b;x;alpha) = pFq(-alpha a; -alpha b; (-1)^{p-q} alpha^{q-p+1} x; 1/alpha)."""
    upper = tuple(_rat(a) for a in upper)
    lower = tuple(_rat(b) for b in lower)
    alpha = as_alpha(alpha)
    p, q = len(upper), len(lower)
    lhs = [omega_alpha(layer, alpha) for layer in pfq_layers_power(HyperParams(upper, lower, alpha), D)]
    s = Fraction(-1) ** (p - q) * alpha ** (q - p + 1)
    dual = HyperParams(tuple(-alpha * a for a in upper), tuple(-alpha * b for b in lower), 1 / alpha)
    rhs = pfq_layers_power(dual, D, scale=s)
    diff = [l - r for l, r in zip(lhs, rhs)]
    res = _max_residual_n(diff, n)
    return IdentityReport("duality", {"upper": upper, "lower": lower, "alpha": alpha, "D": D, "n": n}, res, _status(res),
                          {"residual_symmetric_functions": _max_residual_lambda(diff)})


def check_kernel_derivative(alpha, D: int, n: int) -> IdentityReport:
    """sum_i d/dx_i of the degree-d layer of e(x,y) equals p_1(y) times the degree-(d-1) layer."""
    alpha = as_alpha(alpha)
    layers = pfq_two_layers(HyperParams((), (), alpha), D, n)
    p1y = PowerSumTensor({(EMPTY, Partition((1,))): Fraction(1)})
    worst = Fraction(0)
    per_degree = {}
    for d in range(1, D + 1):
        lhs = layers[d].map_x(lambda f: f.sum_of_partials(n))
        rhs = layers[d - 1] * p1y
        r = _max_abs((lhs - rhs).project(n))
        per_degree[d] = r
        worst = max(worst, r)
    return IdentityReport("kernel_deriv", {"alpha": alpha, "D": D, "n": n}, worst, _status(worst), {"per_degree": per_degree})


def saalschutz_sum(a, b, N: int, c, alpha, n: int) -> Fraction:
    """Terminating 3F2(a, b, -N; c, d; 1_n) with d = a + b - c - N + p."""
    from .jack import jstar_at_ones

    a, b, c = _rat(a), _rat(b), _rat(c)
    alpha = as_alpha(alpha)
    k = k_of(alpha)
    p = k * (n - 1) + 1
    d = a + b - c - N + p
    params = HyperParams((a, b, Fraction(-N)), (c, d), alpha)
    total = Fraction(0)
    for deg in range(N * n + 1):
        for mu in partitions_list(deg, n):
            if mu and mu[0] > N:
                continue
            total += params.coefficient(mu) * alpha**deg * jstar_at_ones(mu, alpha, n)
    return total


def saalschutz_product(a, b, N: int, c, alpha, n: int) -> Fraction:
    a, b, c = _rat(a), _rat(b), _rat(c)
    box = rectangle(N, n)
    num = gen_pochhammer(c - a, box, alpha) * gen_pochhammer(c - b, box, alpha)
    den = gen_pochhammer(c, box, alpha) * gen_pochhammer(c - a - b, box, alpha)
    if den == 0:
        raise PreconditionError("the closed form has a vanishing denominator for these parameters")
    return num / den


def check_saalschutz(a, b, N: int, c, alpha, n: int) -> IdentityReport:
    lhs = saalschutz_sum(a, b, N, c, alpha, n)
    rhs = saalschutz_product(a, b, N, c, alpha, n)
    res = lhs - rhs
    return IdentityReport("saalschutz", {"a": _rat(a), "b": _rat(b), "N": N, "c": _rat(c), "alpha": as_alpha(alpha), "n": n},
                          abs(res), _status(res), {"series": lhs, "closed_form": rhs})


def gauss_partial_sums(a, b, c, alpha, n: int, D: int) -> list[float]:
    """Partial sums of 2F1(a, b; c; 1_n) through each degree 0..D."""
    from .numeric import hooks_float

    alpha = as_alpha(alpha)
    params = HyperParams((float(a), float(b)), (float(c),), alpha)
    sums = []
    running = 0.0
    comp = 0.0
    for d in range(D + 1):
        layer = []
        for lam in partitions_list(d, n):
            h, hp = hooks_float(lam, alpha)
            val = principal_spec_float(lam, alpha, n)
            layer.append(params.coefficient(lam, exact=False) * float(alpha) ** d * val / (h * hp))
        s = math.fsum(layer)
        y = s - comp
        t = running + y
        comp = (t - running) - y
        running = t
        sums.append(running)
    return sums


def gauss_closed_form(a, b, c, alpha, n: int) -> float:
    a, b, c = float(a), float(b), float(c)
    return math.exp(log_gamma_n(c, alpha, n) + log_gamma_n(c - a - b, alpha, n)
                    - log_gamma_n(c - a, alpha, n) - log_gamma_n(c - b, alpha, n))


def check_gauss(a, b, c, alpha, n: int, D: int = 40, rel_tol: float = 1e-3, window: int = 10) -> IdentityReport:
    alpha = as_alpha(alpha)
    p = float(k_of(alpha)) * (n - 1) + 1
    if float(c) - float(a) - float(b) <= p - 1:
        raise PreconditionError("Gauss summation needs c - a - b > p - 1 for convergence")
    sums = gauss_partial_sums(a, b, c, alpha, n, D)
    target = gauss_closed_form(a, b, c, alpha, n)
    resid = [abs(s - target) for s in sums]
    rel = resid[-1] / abs(target)
    tail = resid[-window - 1 :]
    monotone = all(tail[i + 1] < tail[i] for i in range(len(tail) - 1))
    status = "pass" if rel <= rel_tol and monotone else "fail"
    return IdentityReport("gauss", {"a": a, "b": b, "c": c, "alpha": alpha, "n": n, "D": D}, rel, status,
                          {"target": target, "partial_sum": sums[-1], "monotone_last": monotone, "residuals_tail": tail})


def check_shifted_1f0(a, x, y, alpha, D: int = 40, tol: float = 1e-6) -> IdentityReport:
    """1F0(a; 1+x, y) against |1-y|^{-a} 1F0(a; x, y/(1-y))."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    params = HyperParams((float(a),), (), alpha)
    lhs = pfq_two(params, 1 + x, y, D)
    rhs = pfq_two(params, x, y / (1 - y), D)
    rhs_val = float(np.prod((1 - y) ** (-float(a)))) * rhs.value
    res = abs(lhs.value - rhs_val)
    return IdentityReport("shifted_1F0", {"a": a, "x": list(map(float, x)), "y": list(map(float, y)), "alpha": as_alpha(alpha), "D": D},
                          res, "pass" if res <= tol else "fail", {"lhs": lhs.value, "rhs": rhs_val, "tails": (lhs.tail, rhs.tail)})


def check_laguerre_generating(a, alpha, D: int, n: int) -> IdentityReport:
    """Both Laguerre generating identities, compared layer by layer in exact arithmetic.

    First: e^{tr y} 0F1(a+p; -x, y) = sum alpha^{|lam|} L_lam(x) Omega_lam(y) / (a+p)_lam,
    graded by the degree in y.  Second: sum alpha^{|lam|} Omega_lam(x) L_lam(y) =
    |1-x|^{-a-p} e(-x/(1-x), y), graded by the degree in x.
    """
    from .jack import jack_power
    from .ortho import laguerre

    a = _rat(a)
    alpha = as_alpha(alpha)
    k = k_of(alpha)
    p = k * (n - 1) + 1
    A = a + p
    cap = max(D, DEFAULT_DEGREE_CAP)

    def omega_p(lam):
        return jack_power(lam, alpha, "Omega", cap, n)

    def lag_p(lam):
        return laguerre(lam, a, alpha, n).to_power(cap)

    # first identity, graded by y-degree
    bessel = pfq_two_layers(HyperParams((), (A,), alpha), D, n, x_scale=-1)
    expy = [PowerSumTensor({(EMPTY, Partition([1] * d)): Fraction(1, math.factorial(d))}) for d in range(D + 1)]
    worst1 = Fraction(0)
    per1 = {}
    for d in range(D + 1):
        lhs = PowerSumTensor()
        for j in range(d + 1):
            lhs = lhs + expy[d - j] * bessel[j]
        rhs = PowerSumTensor()
        for lam in partitions_list(d, n):
            rhs = rhs + PowerSumTensor.outer(lag_p(lam), omega_p(lam), alpha**d / gen_pochhammer(A, lam, alpha))
        r = _max_abs((lhs - rhs).project(n))
        per1[d] = r
        worst1 = max(worst1, r)

    # second identity, graded by x-degree; x/(1-x) acts on power sums by
    # p_r -> sum_{m>=r} C(m-1, r-1) p_m, and |1-x|^{-A} = exp(A sum p_r / r)
    lhs2 = [PowerSumTensor() for _ in range(D + 1)]
    for d in range(D + 1):
        for lam in partitions_list(d, n):
            lhs2[d] = lhs2[d] + PowerSumTensor.outer(omega_p(lam), lag_p(lam), alpha**d)
    images = {r: PowerSumElement({Partition((m,)): Fraction(math.comb(m - 1, r - 1)) for m in range(r, D + 1)}, cap) for r in range(1, D + 1)}
    kern = pfq_two_layers(HyperParams((), (), alpha), D, n, x_scale=-1)
    kern_sub = PowerSumTensor()
    for layer in kern:
        for (ax, by), v in layer.coeffs.items():
            img = PowerSumElement({ax: v}, cap).substitute(images)
            for ax2, w in img.coeffs.items():
                if ax2.size <= D:
                    kern_sub = kern_sub + PowerSumTensor({(ax2, by): w})
    pref = pfq_layers_power(HyperParams((A,), (), alpha), D, None)
    pref_t = PowerSumTensor()
    for layer in pref:
        pref_t = pref_t + PowerSumTensor({(ax, EMPTY): v for ax, v in layer.coeffs.items()})
    prod = pref_t * kern_sub
    worst2 = Fraction(0)
    per2 = {}
    for d in range(D + 1):
        rhs = PowerSumTensor({key: v for key, v in prod.coeffs.items() if key[0].size == d})
        r = _max_abs((lhs2[d] - rhs).project(n))
        per2[d] = r
        worst2 = max(worst2, r)
    worst = max(worst1, worst2)
    return IdentityReport("laguerre_gen", {"a": a, "alpha": alpha, "D": D, "n": n}, worst, _status(worst),
                          {"generating_in_y": per1, "generating_in_x": per2})


def identity_check(name: str, params: dict, D: int, n: int) -> IdentityReport:
    """Dispatch an identity by name with a parameter dict."""
    alpha = params.get("alpha", Fraction(2))
    if name == "euler":
        return check_euler(params["a"], params["b"], params["c"], alpha, D, n)
    if name == "kummer":
        return check_kummer(params["a"], params["b"], alpha, D, n)
    if name == "duality":
        return check_duality(params.get("upper", ()), params.get("lower", ()), alpha, D, n)
    if name == "kernel_deriv":
        return check_kernel_derivative(alpha, D, n)
    if name == "saalschutz":
        return check_saalschutz(params["a"], params["b"], params["N"], params["c"], alpha, n)
    if name == "gauss":
        return check_gauss(params["a"], params["b"], params["c"], alpha, n, D)
    if name == "shifted_1F0":
        return check_shifted_1f0(params["a"], params["x"], params["y"], alpha, D)
    if name == "laguerre_gen":
        return check_laguerre_generating(params["a"], alpha, D, n)
    raise ValueError(f"unknown identity {name!r}")
