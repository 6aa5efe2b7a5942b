"""Monte Carlo checks of beta-ensemble integrals, plus their exact moment functionals.

Every target is a ratio int f w / int w, so the constants c'_n and Gamma_n
cancel.  Samples come from a product proposal (Beta, Gamma or Normal per
coordinate) and carry the importance weight |Delta(x)|^{2k}; the estimator is
the self-normalized ratio with a delta-method standard error.

Randomness: one numpy SeedSequence per run, spawned into a fixed substream per
chunk of CHUNK samples (Philox), so results do not depend on how chunks are
scheduled.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Callable, Sequence

import numpy as np

from .hyper import HyperParams, pfq, pfq_two
from .jack import expand_in_omega, jack, jstar_at_ones
from .numeric import DenseSymPoly, hooks_float, jack_monomial_coeffs_float, jack_values, principal_spec_float
from .ortho import (
    OmegaExpansion,
    gaussian_moment,
    hermite,
    hermite_norm_ratio,
    jacobi,
    laguerre,
    laguerre_norm_ratio,
)
from .partitions import (
    INF,
    ParameterError,
    Partition,
    as_alpha,
    as_rational,
    gen_pochhammer,
    is_inf,
    k_of,
    partitions_list,
)
from .polynomial import NVarPoly
from .symfun import MonomialExpansion, m_at_ones

CHUNK = 100_000


class DegenerateWeightError(ArithmeticError):
    """All importance weights vanished."""


class AccuracyError(ArithmeticError):
    """A truncated series is not accurate enough at the sampled points."""


# ---------------------------------------------------------------------------
# Weights and the ratio estimator


@dataclass(frozen=True)
class WeightFamily:
    """jacobi: prod x^{a-p} (1-x)^{b-p}; laguerre: e^{-sum x} prod x^{a-p}; hermite: e^{-p_2}.
    Each times |Delta|^{2k}, with p = k(n-1) + 1."""

    kind: str
    n: int
    alpha: object = Fraction(2)
    a: float | None = None
    b: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        if self.kind not in ("jacobi", "laguerre", "hermite"):
            raise ParameterError(f"unknown weight family {self.kind!r}")
        if self.n < 1:
            raise ParameterError("n must be positive")
        if self.kind in ("jacobi", "laguerre") and self.a is None:
            raise ParameterError(f"{self.kind} weight needs a")
        if self.kind == "jacobi" and self.b is None:
            raise ParameterError("jacobi weight needs b")
        if self.kind != "hermite" and self.a - self.p + 1 <= 0:
            raise ParameterError(f"a - p + 1 = {self.a - self.p + 1} must be positive for integrability")
        if self.kind == "jacobi" and self.b - self.p + 1 <= 0:
            raise ParameterError(f"b - p + 1 = {self.b - self.p + 1} must be positive for integrability")

    @property
    def k(self) -> float:
        return float(k_of(self.alpha))

    @property
    def p(self) -> float:
        return self.k * (self.n - 1) + 1

    def sample(self, rng: np.random.Generator, size: int) -> np.ndarray:
        shape = (size, self.n)
        if self.kind == "jacobi":
            return rng.beta(self.a - self.p + 1, self.b - self.p + 1, size=shape)
        if self.kind == "laguerre":
            return rng.gamma(self.a - self.p + 1, 1.0, size=shape)
        return rng.normal(0.0, 1 / math.sqrt(2), size=shape)

    def importance(self, X: np.ndarray) -> np.ndarray:
        """|Delta(x)|^{2k}."""
        k = self.k
        w = np.ones(X.shape[0])
        if k == 0:
            return w
        for i in range(self.n):
            for j in range(i + 1, self.n):
                w *= np.abs(X[:, i] - X[:, j]) ** (2 * k)
        return w


@dataclass
class McEstimate:
    value: object
    stderr: object
    n_samples: int
    seed: int


def mc_ratio(w: WeightFamily, numerator: Callable[[np.ndarray], np.ndarray], samples: int, seed: int,
             chunk: int = CHUNK) -> McEstimate:
    """Estimate int f w / int w.  ``numerator`` maps (N, n) points to (N,) or (N, m) values."""
    if samples < 1:
        raise ParameterError("need at least one sample")
    n_chunks = -(-samples // chunk)
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    S_w = S_w2 = 0.0
    S_wf = S_w2f = S_w2f2 = None
    for idx, ss in enumerate(streams):
        size = min(chunk, samples - idx * chunk)
        rng = np.random.Generator(np.random.Philox(ss))
        X = w.sample(rng, size)
        wt = w.importance(X)
        f = np.asarray(numerator(X), dtype=float)
        if f.ndim == 1:
            f = f[:, None]
        S_w += float(np.sum(wt))
        S_w2 += float(np.sum(wt * wt))
        wf = wt[:, None] * f
        w2f = (wt * wt)[:, None] * f
        part = (np.sum(wf, axis=0), np.sum(w2f, axis=0), np.sum(w2f * f, axis=0))
        if S_wf is None:
            S_wf, S_w2f, S_w2f2 = part
        else:
            S_wf, S_w2f, S_w2f2 = S_wf + part[0], S_w2f + part[1], S_w2f2 + part[2]
    if not S_w > 0 or not math.isfinite(S_w):
        raise DegenerateWeightError("importance weights sum to zero")
    R = S_wf / S_w
    var = np.maximum(S_w2f2 - 2 * R * S_w2f + R * R * S_w2, 0.0) / (S_w * S_w)
    se = np.sqrt(var)
    if R.shape == (1,):
        return McEstimate(float(R[0]), float(se[0]), samples, seed)
    return McEstimate(R, se, samples, seed)


@dataclass
class McReport:
    check: str
    params: dict
    estimate: float
    stderr: float
    target: float
    sigmas: float
    verdict: str
    tail_allowance: float = 0.0
    status: str = "asserted"
    detail: dict = field(default_factory=dict)

    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_json(self) -> dict:
        out = asdict(self)
        out["params"] = {k: _jsonable(v) for k, v in self.params.items()}
        out["detail"] = {k: _jsonable(v) for k, v in self.detail.items()}
        return out


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, np.ndarray):
        return [_jsonable(float(x)) for x in v]
    if isinstance(v, np.generic):
        return v.item()
    return v


def _report(check: str, params: dict, est: McEstimate, target: float, tail: float = 0.0,
            status: str = "asserted", detail: dict | None = None) -> McReport:
    gap = abs(est.value - target)
    sig = gap / est.stderr if est.stderr > 0 else (0.0 if gap == 0 else math.inf)
    ok = gap <= 3 * est.stderr + tail
    if tail > 3 * est.stderr:
        # truncation error dominates sampling error: the comparison says nothing
        verdict = "inconclusive"
    else:
        verdict = "pass" if ok else "fail"
    return McReport(check, params, est.value, est.stderr, float(target), sig, verdict, tail, status, detail or {})


def _float_alpha(alpha) -> float:
    return math.inf if is_inf(alpha) else float(alpha)


# ---------------------------------------------------------------------------
# Numeric building blocks


def omega_values(lam: Sequence[int], alpha, X: np.ndarray) -> np.ndarray:
    """Omega_lam at each row of X (m_lam / m_lam(1_n) at alpha = infinity)."""
    lam = Partition(lam)
    X = np.atleast_2d(X)
    n = X.shape[1]
    vals = jack_values(alpha, X, lam.size)[lam]
    if is_inf(alpha):
        return vals / m_at_ones(lam, n)
    return vals / principal_spec_float(lam, alpha, n)


def series_in_x(params: HyperParams, y: Sequence[float], n: int, D: int, x_sign: float = 1.0) -> DenseSymPoly:
    """x -> sum_{|lam| <= D} (a)/(b) alpha^{|lam|} J*_lam(x_sign x) Omega_lam(y) as a dense polynomial."""
    alpha = params.alpha
    if is_inf(alpha):
        raise ParameterError("use the closed form kernel at alpha = infinity")
    y = np.asarray(y, dtype=float)[None, :]
    vy = jack_values(alpha, y, D)
    poly = DenseSymPoly(n, D)
    af = float(alpha)
    for d in range(D + 1):
        for lam in partitions_list(d, n):
            h, hp = hooks_float(lam, alpha)
            om = float(vy[lam][0]) / principal_spec_float(lam, alpha, n)
            c = float(params.coefficient(lam, exact=False)) * af**d * om / (h * hp) * x_sign**d
            if c == 0:
                continue
            for kappa, v in jack_monomial_coeffs_float(lam, alpha, n).items():
                poly.add_monomial_symmetric(kappa, c * v)
    return poly


def series_tail_bound(params: HyperParams, t: np.ndarray, n: int, D: int, extra: int = 60) -> np.ndarray:
    """Bound on the omitted degrees D+1.. of a two-argument series.

    Layer d is at most max_{|lam|=d} |(a)/(b)| * t^d / d! with t = p_1(|x|) max|y|,
    because J* has nonnegative monomial coefficients and |Omega_lam(y)| <= max|y|^{|lam|}.
    """
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    with np.errstate(over="ignore", invalid="ignore"):
        logt = np.log(np.maximum(t, 1e-300))
        for d in range(D + 1, D + 1 + extra):
            cmax = max(abs(float(params.coefficient(lam, exact=False))) for lam in partitions_list(d, n))
            out += np.exp(d * logt - math.lgamma(d + 1) + math.log(cmax))
    return np.where(np.isfinite(out), out, np.inf)


def kernel_inf_batch(X: np.ndarray, y: Sequence[float]) -> np.ndarray:
    """e(x, y; infinity) = average over permutations w of exp(<x, w y>)."""
    y = np.asarray(y, dtype=float)
    perms = list(permutations(range(len(y))))
    return sum(np.exp(X @ y[list(w)]) for w in perms) / len(perms)


def _tail_allowance(wf: WeightFamily, bound_fn: Callable[[np.ndarray], np.ndarray], samples: int, seed: int) -> float:
    """Weighted mean of a pointwise error bound, on a smaller independent sample."""
    est = mc_ratio(wf, bound_fn, min(samples, 200_000), seed + 7919)
    return float(est.value + 3 * est.stderr)


# ---------------------------------------------------------------------------
# Exact moment functionals (the same ratios computed symbolically)


def _omega_moments(f: MonomialExpansion, alpha, moment: Callable[[Partition], Fraction]) -> Fraction:
    coeffs = expand_in_omega(f, alpha)
    return sum((c * moment(mu) for mu, c in coeffs.items()), Fraction(0))


def jacobi_functional(f: MonomialExpansion, a, b, alpha) -> Fraction:
    """int f w / int w for w = prod x^{a-p}(1-x)^{b-p} |Delta|^{2k}: Omega_nu -> (a)_nu/(a+b)_nu."""
    a, b = as_rational(a), as_rational(b)
    return _omega_moments(f, alpha, lambda mu: gen_pochhammer(a, mu, alpha) / gen_pochhammer(a + b, mu, alpha))


def laguerre_functional(f: MonomialExpansion, a, alpha) -> Fraction:
    """int f w / int w for w = e^{-sum x} prod x^{a-p} |Delta|^{2k}: Omega_nu -> (a)_nu."""
    a = as_rational(a)
    return _omega_moments(f, alpha, lambda mu: gen_pochhammer(a, mu, alpha))


def gaussian_functional(f: MonomialExpansion, alpha) -> Fraction:
    """int f w / int w for w = e^{-p_2} |Delta|^{2k}."""
    return _omega_moments(f, alpha, lambda mu: gaussian_moment(mu, alpha))


# ---------------------------------------------------------------------------
# Checks


def selberg_kadell_check(lam, a, b, n: int, alpha, samples: int = 1_000_000, seed: int = 42) -> McReport:
    """E[Omega_lam] under the Jacobi weight against (a)_lam / (a+b)_lam."""
    lam = Partition(lam)
    wf = WeightFamily("jacobi", n, alpha, float(a), float(b))
    est = mc_ratio(wf, lambda X: omega_values(lam, alpha, X), samples, seed)
    target = gen_pochhammer(float(a), lam, alpha) / gen_pochhammer(float(a) + float(b), lam, alpha)
    return _report("selberg", {"lambda": list(lam), "a": a, "b": b, "n": n, "alpha": alpha, "samples": samples, "seed": seed},
                   est, target)


def laguerre_moment_check(lam, a, n: int, alpha, samples: int = 1_000_000, seed: int = 42) -> McReport:
    """E[Omega_lam] under the Laguerre weight against (a)_lam."""
    lam = Partition(lam)
    wf = WeightFamily("laguerre", n, alpha, float(a))
    est = mc_ratio(wf, lambda X: omega_values(lam, alpha, X), samples, seed)
    target = gen_pochhammer(float(a), lam, alpha)
    return _report("laguerre_moment", {"lambda": list(lam), "a": a, "n": n, "alpha": alpha, "samples": samples, "seed": seed},
                   est, target)


def hyper_integral_check(which: str, upper: Sequence, lower: Sequence, a, y, n: int, alpha, b=None,
                         samples: int = 1_000_000, seed: int = 42, D: int = 40) -> McReport:
    """Integrate a two-argument pFq(x, y) against a Laguerre ("laplace") or Jacobi ("euler")
    weight in x and compare with the one-argument series carrying the extra parameters."""
    y = np.asarray(y, dtype=float)
    params = HyperParams(tuple(float(u) for u in upper), tuple(float(l) for l in lower), alpha)
    poly = series_in_x(params, y, n, D)
    if which == "laplace":
        wf = WeightFamily("laguerre", n, alpha, float(a))
        target_params = HyperParams(params.upper + (float(a),), params.lower, alpha)
    elif which == "euler":
        if b is None:
            raise ParameterError("the Jacobi form needs b")
        wf = WeightFamily("jacobi", n, alpha, float(a), float(b) - float(a))
        target_params = HyperParams(params.upper + (float(a),), params.lower + (float(b),), alpha)
    else:
        raise ParameterError(f"unknown integral {which!r}")
    est = mc_ratio(wf, poly, samples, seed)
    tgt = pfq(target_params, y, 60)
    ymax = float(np.max(np.abs(y)))
    tail = _tail_allowance(wf, lambda X: series_tail_bound(params, np.abs(X).sum(axis=1) * ymax, n, D), samples, seed)
    return _report(f"hyper_integral_{which}", {"upper": list(upper), "lower": list(lower), "a": a, "b": b, "y": list(map(float, y)),
                                               "n": n, "alpha": alpha, "D": D, "samples": samples, "seed": seed},
                   est, tgt.value, tail + tgt.tail, detail={"target_tail": tgt.tail})


def orthogonality_check(family: str, lam, mu, alpha, n: int, a=None, b=None,
                        samples: int = 1_000_000, seed: int = 42) -> McReport:
    """<f_lam, f_mu> / <1, 1> for Laguerre (weight e^{-tr x}|x|^a), Jacobi (|x|^a|1-x|^b)
    or Hermite (e^{-p_2}); target is the norm ratio on the diagonal, 0 off it."""
    lam, mu = Partition(lam), Partition(mu)
    k = float(k_of(alpha))
    p = k * (n - 1) + 1
    if family == "laguerre":
        f, g = laguerre(lam, a, alpha, n), laguerre(mu, a, alpha, n)
        wf = WeightFamily("laguerre", n, alpha, float(a) + p)
        diag = float(laguerre_norm_ratio(lam, a, alpha, n))
    elif family == "hermite":
        f, g = hermite(lam, alpha, n), hermite(mu, alpha, n)
        wf = WeightFamily("hermite", n, alpha)
        diag = float(hermite_norm_ratio(lam, alpha, n))
    elif family == "jacobi":
        f, g = jacobi(lam, a, b, alpha, n), jacobi(mu, a, b, alpha, n)
        wf = WeightFamily("jacobi", n, alpha, float(a) + p, float(b) + p)
        diag = None
    else:
        raise ParameterError(f"unknown family {family!r}")
    est = mc_ratio(wf, lambda X: f.evaluate_batch(X) * g.evaluate_batch(X), samples, seed)
    params = {"family": family, "lambda": list(lam), "mu": list(mu), "alpha": alpha, "n": n, "a": a, "b": b,
              "samples": samples, "seed": seed}
    if lam != mu:
        return _report("orthogonality", params, est, 0.0)
    if diag is None:
        rep = _report("orthogonality", params, est, est.value)
        rep.status = "reported"
        return rep
    return _report("orthogonality", params, est, diag)


def laplace_omega_target(lam, a, alpha, y) -> float:
    """(a)_lam |y|^{-a} Omega_lam(y^{-1})."""
    lam = Partition(lam)
    y = np.asarray(y, dtype=float)
    om = omega_values(lam, alpha, (1 / y)[None, :])[0]
    return gen_pochhammer(float(a), lam, alpha) * float(np.prod(y)) ** (-float(a)) * float(om)


LAPLACE_OMEGA_PROVEN = {1.0, 2.0, 0.5, math.inf}


def laplace_omega_check(lam, a, alpha, y, n: int, samples: int = 1_000_000, seed: int = 42, D: int = 50) -> McReport:
    """int e(-x, y) |x|^{a-p} Omega_lam dmu / int e^{-tr x} |x|^{a-p} dmu against
    (a)_lam |y|^{-a} Omega_lam(y^{-1}).  The Gamma proposal absorbs e^{-tr x} through
    e(-x, y) = e^{-tr x} e(-x, y - 1)."""
    lam = Partition(lam)
    alpha = as_alpha(alpha)
    y = np.asarray(y, dtype=float)
    if np.any(y <= 0):
        raise ParameterError("y must be positive")
    wf = WeightFamily("laguerre", n, alpha, float(a))
    z = y - 1
    tail = 0.0
    if is_inf(alpha):
        def numer(X):
            return kernel_inf_batch(-X, z) * omega_values(lam, alpha, X)
    else:
        params = HyperParams((), (), alpha)
        kern = series_in_x(params, z, n, D, x_sign=-1.0)

        def numer(X):
            return kern(X) * omega_values(lam, alpha, X)

        zmax = float(np.max(np.abs(z)))
        tail = _tail_allowance(
            wf, lambda X: series_tail_bound(params, X.sum(axis=1) * zmax, n, D) * np.abs(omega_values(lam, alpha, X)),
            samples, seed)
    est = mc_ratio(wf, numer, samples, seed)
    status = "asserted" if _float_alpha(alpha) in LAPLACE_OMEGA_PROVEN else "evidence"
    return _report("laplace_omega", {"lambda": list(lam), "a": a, "alpha": alpha, "y": list(map(float, y)), "n": n, "D": D,
                                    "samples": samples, "seed": seed},
                   est, laplace_omega_target(lam, a, alpha, y), tail, status)


def hankel_check(kind: str, alpha, n: int, a, y, z=None, lam=(), samples: int = 1_000_000, seed: int = 42,
                 D: int = 50) -> McReport:
    """kind "kernel": int e(-x,y) A_a(x,z) |x|^a dmu against |y|^{-a-p} e(-y^{-1}, z) (after
    dividing by Gamma_n(a+p) = int e^{-tr x}|x|^a dmu).
    kind "laguerre": the Hankel transform of e^{-tr x} L_lam(2x) against (-1)^{|lam|} e^{-tr y} L_lam(2y)."""
    alpha = as_alpha(alpha)
    k = float(k_of(alpha))
    p = k * (n - 1) + 1
    A = float(a) + p
    y = np.asarray(y, dtype=float)
    wf = WeightFamily("laguerre", n, alpha, A)
    bessel_params = HyperParams((), (A,), alpha)
    kern_params = HyperParams((), (), alpha)
    if kind == "kernel":
        z = np.asarray(z, dtype=float)
        bes = series_in_x(bessel_params, z, n, D, x_sign=-1.0)
        kern = series_in_x(kern_params, y - 1, n, D, x_sign=-1.0)
        est = mc_ratio(wf, lambda X: bes(X) * kern(X), samples, seed)
        tgt = pfq_two(kern_params, -1 / y, z, 60)
        target = float(np.prod(y)) ** (-A) * tgt.value
        zmax, wmax = float(np.max(np.abs(z))), float(np.max(np.abs(y - 1)))

        def bound(X):
            s = X.sum(axis=1)
            b1 = series_tail_bound(bessel_params, s * zmax, n, D)
            b2 = series_tail_bound(kern_params, s * wmax, n, D)
            # |truncated series| <= e^{t} for either factor
            return b1 * np.exp(s * wmax) + b2 * np.exp(s * zmax) + b1 * b2

        tail = _tail_allowance(wf, bound, samples, seed) + abs(tgt.tail)
        params = {"kind": kind, "alpha": alpha, "n": n, "a": a, "y": list(map(float, y)), "z": list(map(float, z)), "D": D,
                  "samples": samples, "seed": seed}
    elif kind == "laguerre":
        lam = Partition(lam)
        L = laguerre(lam, a, alpha, n)
        bes = series_in_x(bessel_params, y, n, D, x_sign=-1.0)
        est = mc_ratio(wf, lambda X: bes(X) * L.evaluate_batch(2 * X), samples, seed)
        target = (-1) ** lam.size * math.exp(-float(np.sum(y))) * float(L.evaluate_batch(2 * y[None, :])[0])
        ymax = float(np.max(np.abs(y)))
        tail = _tail_allowance(
            wf, lambda X: series_tail_bound(bessel_params, X.sum(axis=1) * ymax, n, D) * np.abs(L.evaluate_batch(2 * X)),
            samples, seed)
        params = {"kind": kind, "alpha": alpha, "n": n, "a": a, "y": list(map(float, y)), "lambda": list(lam), "D": D,
                  "samples": samples, "seed": seed}
    else:
        raise ParameterError(f"unknown Hankel identity {kind!r}")
    status = "asserted" if _float_alpha(alpha) in (1.0, 2.0) else "evidence"
    return _report(f"hankel_{kind}", params, est, target, tail, status)


def hermite_even_moment(lam, alpha, n: int, samples: int = 1_000_000, seed: int = 42) -> McReport:
    """E[Omega_lam] under e^{-p_2} |Delta|^{2k} against (2 alpha)^{-m} [p_2^m] J_lam (0 for odd |lam|)."""
    lam = Partition(lam)
    wf = WeightFamily("hermite", n, alpha)
    est = mc_ratio(wf, lambda X: omega_values(lam, alpha, X), samples, seed)
    return _report("hermite_moment", {"lambda": list(lam), "alpha": alpha, "n": n, "samples": samples, "seed": seed},
                   est, float(gaussian_moment(lam, alpha)))


def poly_values(f: NVarPoly, X: np.ndarray) -> np.ndarray:
    X = np.atleast_2d(X)
    out = np.zeros(X.shape[0])
    for e, c in f.terms.items():
        term = np.full(X.shape[0], float(c))
        for i, p in enumerate(e):
            if p:
                term *= X[:, i] ** p
        out += term
    return out


def self_adjoint_check(f: NVarPoly, g: NVarPoly, a, b, alpha, samples: int = 1_000_000, seed: int = 42) -> McReport:
    """<E f, g> - <f, E g> for E = E_{a,b} under |x|^a |1-x|^b |Delta|^{2k}; target 0."""
    from .operators import E_jacobi, apply

    n = f.n
    k = k_of(alpha)
    p = float(k) * (n - 1) + 1
    E = E_jacobi(a, b, k, n)
    Ef, Eg = apply(E, f), apply(E, g)
    wf = WeightFamily("jacobi", n, alpha, float(a) + p, float(b) + p)
    est = mc_ratio(wf, lambda X: poly_values(Ef, X) * poly_values(g, X) - poly_values(f, X) * poly_values(Eg, X), samples, seed)
    return _report("self_adjoint", {"a": a, "b": b, "alpha": alpha, "n": n, "samples": samples, "seed": seed}, est, 0.0)
