"""Named verification suites producing ordered, reproducible result rows.

Row status is one of "pass", "fail" (asserted checks), "inconclusive" (a Monte
Carlo check whose truncation allowance swamps the sampling error; counted as a
failure), "evidence" (conjecture probes, never counted as failures) or
"reported" (values without a target).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

import numpy as np

from . import hyper, integrals, operators, ortho
from .jack import expand_in_omega, formal_degree, jack, jack_J_branching, jstar_at_ones, principal_spec, shift_by_one
from .partitions import Partition, as_alpha, conjugate, is_inf, k_of, partitions_list, partitions_upto, rho, subpartitions
from .polynomial import NVarPoly
from .symfun import MonomialExpansion, fraction_str

SUITES = ("exact-identities", "ortho", "operators", "mc-integrals", "conjectures")


class UsageError(ValueError):
    pass


@dataclass
class SuiteConfig:
    suite: str
    alphas: list = field(default_factory=lambda: [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3)])
    ns: list = field(default_factory=lambda: [1, 2, 3])
    max_degree: int = 6
    samples: int = 1_000_000
    seed: int = 42

    def validate(self) -> None:
        if self.suite not in SUITES:
            raise UsageError(f"unknown suite {self.suite!r}; choose from {', '.join(SUITES)}")
        if not self.alphas or not self.ns:
            raise UsageError("empty parameter grid")
        if any(n < 1 for n in self.ns):
            raise UsageError("n must be positive")
        if self.max_degree < 0 or self.samples < 1:
            raise UsageError("max degree must be >= 0 and samples >= 1")

    def to_json(self) -> dict:
        return {"suite": self.suite, "alphas": [serialize(a) for a in self.alphas], "ns": list(self.ns),
                "max_degree": self.max_degree, "samples": self.samples, "seed": self.seed}


def serialize(v):
    if isinstance(v, Fraction):
        return fraction_str(v)
    if isinstance(v, float):
        if math.isinf(v):
            return "inf"
        return v
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    if isinstance(v, Partition):
        return list(v)
    if isinstance(v, dict):
        return {str(k): serialize(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [serialize(x) for x in v]
    return v


def row(suite: str, check: str, params: dict, residual, status: str, **detail) -> dict:
    return {"suite": suite, "check": check, "params": serialize(params), "residual": serialize(residual),
            "status": status, "detail": serialize(detail)}


def _ok(res) -> str:
    return "pass" if res == 0 else "fail"


def _rand_rational(rng: random.Random, lo: int = 1, hi: int = 9) -> Fraction:
    return Fraction(rng.randint(lo, hi * 4), rng.randint(2, 7))


# ---------------------------------------------------------------------------
# Exact identities


def normalization_residual(m: int, alpha, n: int) -> Fraction:
    """max coefficient of sum_{lam |- m} C_lam - p_1^m as a polynomial in n variables."""
    total = MonomialExpansion({}, n)
    for lam in partitions_list(m, n):
        total = total + jack(lam, alpha, n, "C")
    p1m = NVarPoly.power_sum(1, n) ** m
    return (total.to_poly(n) - p1m).max_abs_coeff()


def principal_residual(lam, alpha, n: int) -> Fraction:
    """eps_n(J_lam) from the box product against J_lam evaluated at 1_n."""
    return principal_spec(lam, alpha, n) - jack(lam, alpha, n, "J").at_ones(n)


GAUSS_SETS = [
    (0.5, 0.7, 5.0, Fraction(2), 2), (0.3, 0.4, 4.5, Fraction(2), 2), (1.0, 0.5, 6.0, Fraction(2), 2),
    (0.5, 0.5, 5.5, Fraction(1), 2), (0.25, 0.75, 6.0, Fraction(1), 2), (0.5, 0.5, 6.5, Fraction(2), 3),
    (0.2, 0.3, 7.0, Fraction(1), 3), (0.4, 0.6, 6.0, Fraction(1, 2), 2), (0.5, 1.0, 7.0, Fraction(3), 2),
    (0.5, 0.5, 4.0, Fraction(2), 1),
]


def exact_identities(cfg: SuiteConfig) -> list[dict]:
    S = "exact-identities"
    rng = random.Random(cfg.seed)
    rows = []
    D = cfg.max_degree
    for alpha in cfg.alphas:
        for n in cfg.ns:
            for m in range(D + 1):
                r = normalization_residual(m, alpha, n)
                rows.append(row(S, "normalization", {"alpha": alpha, "n": n, "m": m}, r, _ok(r)))
            for lam in partitions_upto(D, n):
                r = principal_residual(lam, alpha, n)
                rows.append(row(S, "principal_specialization", {"alpha": alpha, "n": n, "lambda": lam}, r, _ok(r)))
            a, b, c = _rand_rational(rng), _rand_rational(rng), _rand_rational(rng) + 5
            for rep in (hyper.check_euler(a, b, c, alpha, D, n), hyper.check_kummer(a, c, alpha, D, n),
                        hyper.check_duality((a, b), (c,), alpha, D, n), hyper.check_kernel_derivative(alpha, D, n),
                        hyper.check_laguerre_generating(a, alpha, D, n)):
                rows.append(row(S, rep.name, rep.params, rep.max_residual, rep.status))
            for N in range(1, 4):
                a, b, c = _rand_rational(rng), _rand_rational(rng), _rand_rational(rng)
                try:
                    rep = hyper.check_saalschutz(a, b, N, c, alpha, n)
                except (hyper.PreconditionError, hyper.PoleError, ZeroDivisionError):
                    continue
                rows.append(row(S, "saalschutz", rep.params, rep.max_residual, rep.status))
    for a, b, c, alpha, n in GAUSS_SETS:
        rep = hyper.check_gauss(a, b, c, alpha, n)
        rows.append(row(S, "gauss", rep.params, rep.max_residual, rep.status, monotone=rep.detail["monotone_last"]))
    return rows


# ---------------------------------------------------------------------------
# Orthogonal families


def laguerre_generating_numeric(a, alpha, x, y, D: int = 8) -> float:
    """|sum alpha^{|lam|} Omega_lam(x) L_lam(y) - |1-x|^{-a-p} e(-x/(1-x), y)| for small x."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    n = len(x)
    alpha = as_alpha(alpha)
    p = float(k_of(alpha)) * (n - 1) + 1
    lhs = 0.0
    for lam in partitions_upto(D, n):
        om = float(integrals.omega_values(lam, alpha, x[None, :])[0])
        lhs += float(alpha) ** lam.size * om * float(ortho.laguerre(lam, a, alpha, n).evaluate_batch(y[None, :])[0])
    kern = hyper.exp_kernel(-x / (1 - x), y, alpha, 40).value
    rhs = float(np.prod(1 - x)) ** (-(float(a) + p)) * kern
    return abs(lhs - rhs)


def _regular_c(rng: random.Random, alpha, max_size: int = 4) -> Fraction:
    """Random C avoiding the recursion poles of both c(C; alpha) and its conjugate c(-alpha C; 1/alpha)."""
    while True:
        C = _rand_rational(rng) + 3
        try:
            for lam in partitions_upto(max_size, None):
                for mu in subpartitions(lam):
                    ortho.jacobi_c(lam, mu, C, alpha)
                    ortho.jacobi_c(conjugate(lam), conjugate(mu), -alpha * C, 1 / alpha)
        except ortho.SingularParameterError:
            continue
        return C


def ortho_suite(cfg: SuiteConfig) -> list[dict]:
    S = "ortho"
    rng = random.Random(cfg.seed)
    rows = []
    alphas = [a for a in cfg.alphas if not is_inf(a)]
    for alpha in alphas:
        for n in cfg.ns:
            a, b = _rand_rational(rng), _rand_rational(rng)
            C = _regular_c(rng, alpha)
            for lam in partitions_upto(4, n):
                A = ortho.laguerre(lam, a, alpha, n)
                B = ortho.laguerre_omega_form(lam, a, alpha, n).to_basis("Jstar")
                s = jstar_at_ones(lam, alpha, n)
                diff = max((abs(A.coeffs.get(m, 0) - s * B.coeffs.get(m, 0)) for m in set(A.coeffs) | set(B.coeffs)), default=Fraction(0))
                rows.append(row(S, "laguerre_dual_forms", {"alpha": alpha, "n": n, "lambda": lam, "a": a}, diff, _ok(diff)))
                G = ortho.jacobi(lam, a, b, alpha, n).to_poly()
                Gs = ortho.jacobi(lam, b, a, alpha, n).to_poly()
                r = (G.negate_args().substitute_shift(-1) - Gs.scale((-1) ** lam.size)).max_abs_coeff()
                rows.append(row(S, "jacobi_symmetry", {"alpha": alpha, "n": n, "lambda": lam, "a": a, "b": b}, r, _ok(r)))
                H = ortho.hermite(lam, alpha, n)
                odd = [m for m in H.coeffs if (lam.size - m.size) % 2]
                Hp = H.to_poly()
                par = (Hp.negate_args() - Hp.scale((-1) ** lam.size)).max_abs_coeff()
                rows.append(row(S, "hermite_parity", {"alpha": alpha, "n": n, "lambda": lam}, par + len(odd), _ok(par + len(odd))))
            for lam in partitions_upto(4, None):
                for mu in subpartitions(lam):
                    r1 = ortho.jacobi_c(lam, mu, C, alpha) - ortho.jacobi_c_tableau(lam, mu, C, alpha)
                    dual = (-alpha) ** (lam.size - mu.size) * ortho.jacobi_c(conjugate(lam), conjugate(mu), -alpha * C, 1 / alpha)
                    r2 = ortho.jacobi_c(lam, mu, C, alpha) - dual
                    rows.append(row(S, "jacobi_c_tableau", {"alpha": alpha, "lambda": lam, "mu": mu, "C": C}, r1, _ok(r1)))
                    rows.append(row(S, "jacobi_c_duality", {"alpha": alpha, "lambda": lam, "mu": mu, "C": C}, r2, _ok(r2)))
    res = laguerre_generating_numeric(Fraction(1, 2), 2, [0.03, 0.05], [0.4, 0.7])
    rows.append(row(S, "laguerre_generating_numeric", {"alpha": 2, "n": 2, "a": "1/2", "x": [0.03, 0.05], "y": [0.4, 0.7]},
                    res, "pass" if res <= 1e-6 else "fail"))
    return rows


# ---------------------------------------------------------------------------
# Operators


def operators_suite(cfg: SuiteConfig) -> list[dict]:
    S = "operators"
    rng = random.Random(cfg.seed)
    rows = []
    alphas = [a for a in cfg.alphas if not is_inf(a)]
    for alpha in alphas:
        k = k_of(alpha)
        for n in cfg.ns:
            p = k * (n - 1) + 1
            a, b = _rand_rational(rng), _rand_rational(rng)
            for lam in partitions_upto(4, n):
                if not lam:
                    continue
                G = ortho.jacobi(lam, a, b, alpha, n).to_poly()
                ev = (a + b + 2 * p) * lam.size + 2 * rho(lam, alpha)
                r = operators.eigencheck(operators.E_jacobi(a, b, k, n), G, ev).max_abs_coeff()
                rows.append(row(S, "E_jacobi_eigen", {"alpha": alpha, "n": n, "lambda": lam, "a": a, "b": b}, r, _ok(r)))
                H = ortho.hermite(lam, alpha, n).to_poly()
                r = operators.eigencheck(operators.E_hermite(k, n), H, -2 * lam.size).max_abs_coeff()
                rows.append(row(S, "E_hermite_eigen", {"alpha": alpha, "n": n, "lambda": lam}, r, _ok(r)))
            c = _rand_rational(rng) + 2
            D = min(cfg.max_degree, 6)
            for (pp, qq), prm in (((2, 1), (a, b, c)), ((1, 1), (a, c)), ((0, 1), (c,))):
                layers = hyper.pfq_formal(hyper.HyperParams(prm[:pp], prm[pp:], alpha), D, n)
                res = operators.annihilation_check(operators.Phi(pp, qq, prm, k, n), layers, n)
                worst = max(res.values(), default=Fraction(0))
                rows.append(row(S, f"annihilation_{pp}F{qq}", {"alpha": alpha, "n": n, "params": list(prm), "D": D}, worst, _ok(worst)))
            lem = operators.exponential_lemmas(k, n, 6)
            for name, r in lem.items():
                rows.append(row(S, f"exponential_{name}", {"alpha": alpha, "n": n}, r, _ok(r)))
            for mu in partitions_upto(4, n):
                for name, r in operators.lemma_sums(mu, alpha, n).items():
                    rows.append(row(S, f"one_box_sum_{name}", {"alpha": alpha, "n": n, "mu": mu}, r, _ok(r)))
    return rows


# ---------------------------------------------------------------------------
# Monte Carlo


def mc_suite(cfg: SuiteConfig) -> list[dict]:
    S = "mc-integrals"
    N, seed = cfg.samples, cfg.seed
    reports = [
        integrals.selberg_kadell_check((1,), 2, 3, 2, 1, N, seed),
        integrals.selberg_kadell_check((2, 1), 3, 3, 2, 2, N, seed),
        integrals.laguerre_moment_check((2, 1), 3, 2, 2, N, seed),
        integrals.orthogonality_check("laguerre", (1,), (), 1, 2, a=0.5, samples=N, seed=seed),
        integrals.orthogonality_check("laguerre", (1,), (1,), 1, 2, a=0.5, samples=N, seed=seed),
        integrals.orthogonality_check("hermite", (2,), (1, 1), 2, 2, samples=N, seed=seed),
        integrals.orthogonality_check("hermite", (2,), (2,), 2, 2, samples=N, seed=seed),
        integrals.orthogonality_check("hermite", (1, 1), (1, 1), 2, 2, samples=N, seed=seed),
        integrals.laplace_omega_check((2,), 3, 1, [1.0, 1.5], 2, N, seed),
        integrals.laplace_omega_check((2,), 3, 2, [1.0, 1.5], 2, N, seed),
        integrals.laplace_omega_check((2,), 3, math.inf, [1.0, 1.5], 2, N, seed),
        integrals.hankel_check("kernel", 2, 2, 1.0, [1.0, 1.5], z=[0.3, 0.5], samples=N, seed=seed),
        integrals.hankel_check("laguerre", 2, 2, 1.0, [0.5, 0.8], lam=(2, 1), samples=N, seed=seed),
        integrals.hermite_even_moment((1, 1), 1, 2, N, seed),
        integrals.hyper_integral_check("laplace", (), (), 2.5, [0.1, 0.2], 2, 1, samples=N, seed=seed),
        integrals.hyper_integral_check("euler", (0.5,), (), 2.5, [0.1, 0.2], 2, 2, b=5.0, samples=N, seed=seed),
    ]
    return [mc_row(S, r) for r in reports]


def mc_row(suite: str, r: integrals.McReport) -> dict:
    if r.status == "evidence":
        status = "evidence"
    elif r.status == "reported":
        status = "reported"
    else:
        status = r.verdict
    return row(suite, r.check, r.params, abs(r.estimate - r.target), status, estimate=r.estimate, stderr=r.stderr,
               target=r.target, sigmas=r.sigmas, tail_allowance=r.tail_allowance)


# ---------------------------------------------------------------------------
# Conjecture evidence


def shift_identity_residual(lam, alpha, n: int) -> Fraction:
    """Omega_lam(1 + x) - sum_mu binom(lam, mu) Omega_mu(x), largest coefficient."""
    from .jack import binom

    lam = Partition(lam)
    shifted = shift_by_one(jack(lam, alpha, n, "Omega"))
    coords = expand_in_omega(shifted, alpha)
    keys = set(coords) | {mu for mu in subpartitions(lam) if len(mu) <= n}
    return max((abs(coords.get(mu, 0) - (binom(lam, mu, alpha) if len(mu) <= n else 0)) for mu in keys), default=Fraction(0))


def conjectures_suite(cfg: SuiteConfig) -> list[dict]:
    S = "conjectures"
    rows = []
    for alpha in [Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(5, 2)]:
        for n in (1, 2, 3):
            for lam in partitions_upto(5, n):
                r = shift_identity_residual(lam, alpha, n)
                rows.append(row(S, "shift_identity", {"alpha": alpha, "n": n, "lambda": lam}, r, "evidence", holds=(r == 0)))
    for kk in (1, 2):
        alpha = Fraction(1, kk)
        for n in (1, 2, 3):
            for lam in partitions_upto(4, n):
                fd = formal_degree(lam, alpha, n)
                r = fd["eps"] - fd["product"]
                rows.append(row(S, "formal_degree", {"k": kk, "n": n, "lambda": lam}, r, "evidence", holds=(r == 0),
                                eps=fd["eps"], product=fd["product"]))
    for alpha in (Fraction(3, 2), Fraction(3)):
        r = integrals.laplace_omega_check((2,), 3, alpha, [1.0, 1.5], 2, cfg.samples, cfg.seed)
        rows.append(row(S, "laplace_omega", r.params, abs(r.estimate - r.target), "evidence", consistent=r.passed(),
                        estimate=r.estimate, stderr=r.stderr, target=r.target, sigmas=r.sigmas))
    for alpha in (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(3), Fraction(5, 2)):
        rep = hyper.check_shifted_1f0(0.5, [0.1, 0.2], [0.1, 0.05], alpha)
        rows.append(row(S, "shifted_1F0", rep.params, rep.max_residual, "evidence", holds=rep.passed()))
    for alpha in (Fraction(1), Fraction(2), Fraction(3)):
        k = k_of(alpha)
        n = 2
        a, b, c = Fraction(1, 3), Fraction(2, 5), Fraction(7, 4)
        lay = {"0F0": ((), ()), "1F0": ((a,), ()), "0F1": ((), (c,)), "1F1": ((a,), (c,)), "2F1": ((a, b), (c,))}
        for name, op in operators.kernel_operator_rows(k, n, a=a, b=b, c=c).items():
            up, lo = lay[name]
            res = operators.kernel_row_check(op, hyper.pfq_two_layers(hyper.HyperParams(up, lo, alpha), 4, n), n)
            worst = max(res.values())
            rows.append(row(S, f"kernel_operator_{name}", {"alpha": alpha, "n": n}, worst, "evidence", holds=(worst == 0)))
    for alpha in (Fraction(1, 2), Fraction(2), Fraction(3, 2)):
        for n in (2, 3):
            for lam in ((1,), (2,), (1, 1), (2, 1)):
                pr = ortho.jacobi_duality_probe(lam, Fraction(1, 2), Fraction(1, 3), alpha, n)
                r = pr["max_residual"]
                rows.append(row(S, "jacobi_duality_formal", {"alpha": alpha, "n": n, "lambda": lam}, r, "evidence",
                                holds=(r == 0), note="formal in n"))
    return rows


RUNNERS = {
    "exact-identities": exact_identities,
    "ortho": ortho_suite,
    "operators": operators_suite,
    "mc-integrals": mc_suite,
    "conjectures": conjectures_suite,
}


def run_suite(cfg: SuiteConfig) -> tuple[int, list[dict]]:
    """Exit code (0 when every asserted row passed, 1 otherwise) and the rows."""
    cfg.validate()
    rows = RUNNERS[cfg.suite](cfg)
    failed = any(r["status"] in ("fail", "inconclusive") for r in rows)
    return (1 if failed else 0), rows


def summarize(rows: Iterable[dict]) -> dict:
    out: dict[str, int] = {}
    for r in rows:
        out[r["status"]] = out.get(r["status"], 0) + 1
    return dict(sorted(out.items()))
