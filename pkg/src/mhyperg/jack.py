"""Jack polynomials in the P, Q, J, J*, C and Omega normalizations.

The primary construction is Gram-Schmidt of the monomial basis under
``<p_lam, p_mu>_alpha = delta z_lam alpha^{l(lam)}``, processing partitions in
increasing lexicographic order (a linear extension of dominance).  A second,
independent route uses the horizontal-strip branching rule for J and is
cross-checked against the first in the test-suite.
"""

from __future__ import annotations

import math
import os
import pickle
import tempfile
import threading
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from typing import Sequence

from .partitions import (
    EMPTY,
    INF,
    ContainmentError,
    ParameterError,
    Partition,
    as_alpha,
    conjugate,
    gen_pochhammer,
    hook_products,
    horizontal_strip_children,
    is_inf,
    k_of,
    partitions_list,
    rising,
    skew_box,
    subpartitions,
)
from .symfun import (
    DEFAULT_DEGREE_CAP,
    MonomialExpansion,
    PowerSumElement,
    inner_product,
    m_at_ones,
    m_in_p,
    specialize,
)

TAGS = ("P", "Q", "J", "Jstar", "C", "Omega")

_LOCK = threading.Lock()
_GS_CACHE: dict[tuple[int, Fraction], dict[Partition, tuple[dict, dict, Fraction]]] = {}

CACHE_ENV = "MHYPERG_CACHE_DIR"


def _disk_path(d: int, alpha: Fraction) -> str | None:
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    return os.path.join(root, f"jackP_d{d}_a{alpha.numerator}_{alpha.denominator}.pickle")


def _disk_load(d: int, alpha: Fraction):
    path = _disk_path(d, alpha)
    if path is None or not os.path.exists(path):
        return None
    try:
        with open(path, "rb") as fh:
            return pickle.load(fh)
    except (OSError, pickle.UnpicklingError, EOFError):
        return None


def _disk_store(d: int, alpha: Fraction, table) -> None:
    path = _disk_path(d, alpha)
    if path is None:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path))
    with os.fdopen(fd, "wb") as fh:
        pickle.dump(table, fh)
    os.replace(tmp, path)


def _weight(mu: Partition, alpha: Fraction) -> Fraction:
    return mu.z() * alpha ** len(mu)


def _gram_schmidt(d: int, alpha: Fraction) -> dict[Partition, tuple[dict, dict, Fraction]]:
    """P_lam for all lam of size d: (p-coefficients, m-coefficients, <P,P>)."""
    key = (d, alpha)
    hit = _GS_CACHE.get(key)
    if hit is not None:
        return hit
    hit = _disk_load(d, alpha)
    if hit is not None:
        with _LOCK:
            _GS_CACHE.setdefault(key, hit)
        return _GS_CACHE[key]
    parts = list(reversed(partitions_list(d, None)))  # (1^d) first
    weights = {mu: _weight(mu, alpha) for mu in parts}
    done: dict[Partition, tuple[dict, dict, Fraction]] = {}
    order: list[Partition] = []
    for lam in parts:
        pvec = dict(m_in_p(lam))
        mvec: dict[Partition, Fraction] = {lam: Fraction(1)}
        base = dict(pvec)
        for mu in order:
            pmu, mmu, norm = done[mu]
            ip = sum((v * pmu.get(r, 0) * weights[r] for r, v in base.items()), Fraction(0))
            if not ip:
                continue
            c = ip / norm
            for r, v in pmu.items():
                nv = pvec.get(r, 0) - c * v
                if nv:
                    pvec[r] = nv
                else:
                    pvec.pop(r, None)
            for r, v in mmu.items():
                nv = mvec.get(r, 0) - c * v
                if nv:
                    mvec[r] = nv
                else:
                    mvec.pop(r, None)
        norm = sum((v * v * weights[r] for r, v in pvec.items()), Fraction(0))
        if not norm:
            raise ArithmeticError(f"singular Gram system at {lam}, alpha={alpha}")
        done[lam] = (pvec, mvec, norm)
        order.append(lam)
    with _LOCK:
        _GS_CACHE.setdefault(key, done)
    _disk_store(d, alpha, done)
    return _GS_CACHE[key]


def _check_alpha(alpha):
    alpha = as_alpha(alpha)
    return alpha


def jack_P_power(lam: Sequence[int], alpha, cap: int | None = None) -> PowerSumElement:
    """P_lam(alpha) as an exact element of the power-sum basis."""
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    cap = max(cap or DEFAULT_DEGREE_CAP, lam.size)
    if is_inf(alpha):
        return PowerSumElement(m_in_p(lam), cap)
    return PowerSumElement(_gram_schmidt(lam.size, alpha)[lam][0], cap)


def jack_P(lam: Sequence[int], alpha, n: int | None) -> MonomialExpansion:
    """Monic P_lam in n variables (zero when l(lam) > n; n=None keeps all)."""
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    if n is not None and len(lam) > n:
        return MonomialExpansion({}, n)
    if is_inf(alpha):
        return MonomialExpansion({lam: Fraction(1)}, n)
    return MonomialExpansion(_gram_schmidt(lam.size, alpha)[lam][1], n)


def norm_P(lam: Sequence[int], alpha) -> Fraction:
    """<P_lam, P_lam>_alpha from the Gram-Schmidt run."""
    lam = Partition(lam)
    return _gram_schmidt(lam.size, _check_alpha(alpha))[lam][2]


def scale_factor(lam: Sequence[int], tag: str, alpha, n: int | None = None):
    """The scalar c with (tag form of lam) = c * P_lam."""
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    if tag not in TAGS:
        raise ValueError(f"unknown normalization tag {tag!r}")
    if tag == "P":
        return Fraction(1)
    if is_inf(alpha):
        if tag == "Omega":
            if n is None:
                raise ValueError("Omega needs a variable count")
            v = m_at_ones(lam, n)
            if v == 0:
                raise ZeroDivisionError(f"m_{lam}(1_{n}) vanishes")
            return Fraction(1, v)
        raise ParameterError(f"the {tag} normalization is unbounded at alpha = infinity")
    h, hp = hook_products(lam, alpha)
    if tag == "Q":
        return h / hp
    if tag == "J":
        return h
    if tag == "Jstar":
        return 1 / hp
    if tag == "C":
        return alpha ** lam.size * math.factorial(lam.size) / hp
    if n is None:
        raise ValueError("Omega needs a variable count")
    val = principal_spec(lam, alpha, n)
    if val == 0:
        raise ZeroDivisionError(f"J_{lam}(1_{n}) vanishes")
    return h / val


def convert(f: MonomialExpansion, lam: Sequence[int], src: str, dst: str, alpha, n: int | None = None) -> MonomialExpansion:
    """Rescale the ``src`` normalization of lam to the ``dst`` normalization."""
    if src not in TAGS or dst not in TAGS:
        raise ValueError(f"unknown normalization tag {src!r} or {dst!r}")
    n = f.nvars if n is None else n
    return f.scale(scale_factor(lam, dst, alpha, n) / scale_factor(lam, src, alpha, n))


def jack(lam: Sequence[int], alpha, n: int | None, form: str = "P") -> MonomialExpansion:
    lam = Partition(lam)
    P = jack_P(lam, alpha, n)
    if P.is_zero() or form == "P":
        return P
    return P.scale(scale_factor(lam, form, alpha, n))


def jack_power(lam: Sequence[int], alpha, form: str = "P", cap: int | None = None, n=None) -> PowerSumElement:
    """Any normalization of lam in the power-sum basis (Omega needs n)."""
    lam = Partition(lam)
    P = jack_P_power(lam, alpha, cap)
    if form == "P":
        return P
    return P.scale(scale_factor(lam, form, alpha, n))


def omega(lam: Sequence[int], alpha, n: int) -> MonomialExpansion:
    return jack(lam, alpha, n, "Omega")


def principal_spec(lam: Sequence[int], alpha, X) -> Fraction:
    """eps_X(J_lam) = prod over boxes (X + alpha a'(s) - l'(s))."""
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("principal specialization of J needs a finite alpha")
    out = Fraction(1) if not isinstance(X, float) else 1.0
    for i, j in lam.boxes():
        out *= X + alpha * (j - 1) - (i - 1) if not isinstance(X, float) else X + float(alpha) * (j - 1) - (i - 1)
    return out


def jstar_at_ones(lam: Sequence[int], alpha, n: int) -> Fraction:
    """J*_lam(1_n) = J_lam(1_n) / (h h')."""
    lam = Partition(lam)
    h, hp = hook_products(lam, alpha)
    return principal_spec(lam, alpha, n) / (h * hp)


# ---------------------------------------------------------------------------
# Branching rule: J_lam(x_1..x_m) = sum_mu beta_{lam mu} J_mu(x_1..x_{m-1}) x_m^{|lam/mu|}


def _beta_factor(nu: Partition, nu_conj: Partition, i: int, j: int, same_column: bool, alpha):
    if same_column:
        return nu_conj.part(j) - i + alpha * (nu.part(i) - j + 1)
    return nu_conj.part(j) - i + 1 + alpha * (nu.part(i) - j)


@lru_cache(maxsize=None)
def branching_coefficient(lam: Partition, mu: Partition, alpha) -> Fraction:
    """beta_{lam mu} for a horizontal strip lam/mu (exact)."""
    lc, mc = conjugate(lam), conjugate(mu)
    num = Fraction(1)
    for i, j in lam.boxes():
        num *= _beta_factor(lam, lc, i, j, lc.part(j) == mc.part(j), alpha)
    den = Fraction(1)
    for i, j in mu.boxes():
        den *= _beta_factor(mu, mc, i, j, lc.part(j) == mc.part(j), alpha)
    return num / den


@lru_cache(maxsize=None)
def _branch_coeff(lam: Partition, kappa: tuple[int, ...], alpha: Fraction) -> Fraction:
    """Coefficient of x^kappa in J_lam(x_1..x_m), m = len(kappa)."""
    m = len(kappa)
    if len(lam) > m:
        return Fraction(0)
    if m == 0:
        return Fraction(1) if not lam else Fraction(0)
    last = kappa[-1]
    target = lam.size - last
    total = Fraction(0)
    for mu in horizontal_strip_children(lam, m - 1):
        if mu.size != target:
            continue
        c = _branch_coeff(mu, kappa[:-1], alpha)
        if c:
            total += branching_coefficient(lam, mu, alpha) * c
    return total


def jack_J_branching(lam: Sequence[int], alpha, n: int | None = None) -> MonomialExpansion:
    """J_lam in the monomial basis computed by the branching rule."""
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("J is unbounded at alpha = infinity")
    out = {}
    for kappa in partitions_list(lam.size, n):
        if len(kappa) < len(lam):
            continue
        c = _branch_coeff(lam, tuple(kappa), alpha)
        if c:
            out[kappa] = c
    return MonomialExpansion(out, n)


# ---------------------------------------------------------------------------
# Skew elements and generalized binomial coefficients


def skew_jack(lam: Sequence[int], mu: Sequence[int], alpha, cap: int | None = None) -> PowerSumElement:
    """J_{lam/mu}: the element with <J_{lam/mu}, J*_nu> = <J_lam, J*_mu J*_nu>."""
    lam, mu = Partition(lam), Partition(mu)
    alpha = _check_alpha(alpha)
    cap = max(cap or DEFAULT_DEGREE_CAP, lam.size)
    if not lam.contains(mu):
        return PowerSumElement({}, cap)
    r = lam.size - mu.size
    Jl = jack_power(lam, alpha, "J", cap)
    Jsm = jack_power(mu, alpha, "Jstar", cap)
    out = PowerSumElement({}, cap)
    for nu in partitions_list(r, None):
        c = inner_product(Jl, Jsm * jack_power(nu, alpha, "Jstar", cap), alpha)
        if c:
            # {J_nu} and {J*_nu} are dual bases, so c is the J_nu coordinate
            out = out + jack_power(nu, alpha, "J", cap).scale(c)
    return out


@lru_cache(maxsize=None)
def _binom(lam: Partition, mu: Partition, alpha: Fraction) -> Fraction:
    if not lam.contains(mu):
        return Fraction(0)
    if lam == mu:
        return Fraction(1)
    r = lam.size - mu.size
    cap = max(DEFAULT_DEGREE_CAP, lam.size)
    Jl = jack_power(lam, alpha, "J", cap)
    Jsm = jack_power(mu, alpha, "Jstar", cap)
    total = Fraction(0)
    # eps_delta(J_nu) = 1, so eps_delta(J_{lam/mu}) is the sum of the J_nu coordinates
    for nu in partitions_list(r, None):
        total += inner_product(Jl, Jsm * jack_power(nu, alpha, "Jstar", cap), alpha)
    return total


def binom(lam: Sequence[int], mu: Sequence[int], alpha) -> Fraction:
    """Generalized binomial coefficient: coefficient of p_1^{|lam-mu|} in J_{lam/mu}."""
    alpha = _check_alpha(alpha)
    if is_inf(alpha):
        raise ParameterError("binomial coefficients need a finite alpha")
    return _binom(Partition(lam), Partition(mu), alpha)


def binom_chain(lam: Sequence[int], mu: Sequence[int], alpha) -> Fraction:
    """(1/r!) * sum over saturated chains lam > ... > mu of products of one-box binomials."""
    lam, mu = Partition(lam), Partition(mu)
    alpha = _check_alpha(alpha)
    if not lam.contains(mu):
        return Fraction(0)
    r = lam.size - mu.size

    @lru_cache(maxsize=None)
    def chains(nu: Partition) -> Fraction:
        if nu == mu:
            return Fraction(1)
        total = Fraction(0)
        for kappa in nu.removable():
            if kappa.contains(mu):
                total += binom(nu, kappa, alpha) * chains(kappa)
        return total

    return chains(lam) / math.factorial(r)


# ---------------------------------------------------------------------------
# Shift expansion and formal degree


def shift_by_one(f: MonomialExpansion) -> MonomialExpansion:
    """f(x_1 + 1, ..., x_n + 1) recollected in the monomial basis."""
    if f.nvars is None:
        raise ValueError("shift needs a finite variable count")
    return MonomialExpansion.from_poly(f.to_poly().substitute_shift(1))


def expand_in_omega(f: MonomialExpansion, alpha, max_degree: int | None = None) -> dict[Partition, Fraction]:
    """Coordinates of a symmetric polynomial in the basis {Omega_mu} (n = f.nvars)."""
    n = f.nvars
    rest = MonomialExpansion(dict(f.coeffs), n)
    out: dict[Partition, Fraction] = {}
    # peel off leading monomials: Omega_mu has leading term m_mu in dominance
    while not rest.is_zero():
        lead = max(rest.coeffs, key=lambda k: (k.size, tuple(k)))
        om = omega(lead, alpha, n)
        c = rest.coeffs[lead] / om.coeffs[lead]
        out[lead] = c
        rest = rest - om.scale(c)
    return out


def _poch_int(x: Fraction, k: int) -> Fraction:
    return rising(x, k)


def formal_degree(lam: Sequence[int], alpha, n: int) -> dict:
    """Both expressions for the formal degree d_lam(alpha).

    ``product`` is prod_{i != j} (xi_i - xi_j)_k / (k delta_i - k delta_j)_k with
    xi = lam + k delta (only when k is a positive integer); ``eps`` is
    eps_n(P_lam) * eps_{n-1+alpha}(Q_lam).
    """
    lam = Partition(lam)
    alpha = _check_alpha(alpha)
    if len(lam) > n:
        raise ContainmentError(f"{lam} has more than {n} parts")
    k = k_of(alpha)
    h, hp = hook_products(lam, alpha)
    eps = principal_spec(lam, alpha, n) / h * principal_spec(lam, alpha, n - 1 + alpha) / hp
    result = {"eps": eps, "product": None}
    if k.denominator == 1 and k > 0:
        kk = int(k)
        delta = [n - 1 - i for i in range(n)]
        xi = [lam.part(i + 1) + k * delta[i] for i in range(n)]
        num = Fraction(1)
        den = Fraction(1)
        for i in range(n):
            for j in range(n):
                if i != j:
                    num *= _poch_int(xi[i] - xi[j], kk)
                    den *= _poch_int(k * delta[i] - k * delta[j], kk)
        result["product"] = num / den
    return result

