"""Floating-point Jack evaluation for series summation and sampling.

Values of J_lam (or m_lam at alpha = infinity) are produced for every
partition up to a degree bound, vectorized over a batch of points, by the
horizontal-strip branching rule.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .partitions import (
    Partition,
    conjugate,
    horizontal_strip_children,
    is_inf,
    partitions_list,
)


@lru_cache(maxsize=None)
def _hooks_float(lam: Partition, alpha: float) -> tuple[float, float]:
    conj = conjugate(lam)
    h = hp = 1.0
    for i, j in lam.boxes():
        a = lam[i - 1] - j
        l = conj[j - 1] - i
        h *= alpha * a + l + 1
        hp *= alpha * a + l + alpha
    return h, hp


def hooks_float(lam: Sequence[int], alpha) -> tuple[float, float]:
    return _hooks_float(Partition(lam), float(alpha))


def principal_spec_float(lam: Sequence[int], alpha, X: float) -> float:
    lam = Partition(lam)
    alpha = float(alpha)
    out = 1.0
    for i, j in lam.boxes():
        out *= X + alpha * (j - 1) - (i - 1)
    return out


@lru_cache(maxsize=None)
def _beta_float(lam: Partition, mu: Partition, alpha: float) -> float:
    lc, mc = conjugate(lam), conjugate(mu)
    width = len(lc)
    lcp = list(lc)
    mcp = list(mc) + [0] * (width - len(mc))
    mup = list(mu) + [0] * (len(lam) - len(mu))
    same = [lcp[j] == mcp[j] for j in range(width)]
    # A box (i, j) lying in both diagrams gives equal factors unless row i or
    # column j meets the strip lam/mu, so only those rows and columns are visited.
    rows = [i for i in range(1, len(lam) + 1) if lam[i - 1] != mup[i - 1]]
    row_set = set(rows)
    cols = [j for j in range(1, width + 1) if not same[j - 1]]
    out = 1.0
    for conj, parts, sign in ((lcp, list(lam), 1), (mcp, mup, -1)):
        num = 1.0
        for i in rows:
            row = parts[i - 1]
            for j in range(1, row + 1):
                if same[j - 1]:
                    num *= conj[j - 1] - i + alpha * (row - j + 1)
                else:
                    num *= conj[j - 1] - i + 1 + alpha * (row - j)
        for j in cols:
            c = conj[j - 1]
            for i in range(1, c + 1):
                if i not in row_set:
                    num *= c - i + 1 + alpha * (parts[i - 1] - j)
        out = out * num if sign > 0 else out / num
    return out


@lru_cache(maxsize=64)
def _branch_plan(n: int, D: int, alpha_key) -> tuple:
    """For each level m, the list (lam, [(mu, coefficient, degree drop)])."""
    inf = alpha_key == "inf"
    plan = []
    for m in range(1, n + 1):
        level = []
        for d in range(D + 1):
            for lam in partitions_list(d, m):
                terms = []
                if inf:
                    vals = sorted(set(lam), reverse=True)
                    if len(lam) <= m - 1:
                        terms.append((lam, 1.0, 0))
                    for v in vals:
                        parts = list(lam)
                        parts.remove(v)
                        terms.append((Partition(parts), 1.0, v))
                else:
                    for mu in horizontal_strip_children(lam, m - 1):
                        terms.append((mu, _beta_float(lam, mu, alpha_key), lam.size - mu.size))
                level.append((lam, terms))
        plan.append(level)
    return tuple(plan)


def jack_values(alpha, X: np.ndarray, D: int) -> dict[Partition, np.ndarray]:
    """J_lam(x) (m_lam(x) when alpha is infinite) for all l(lam) <= n, |lam| <= D.

    ``X`` has shape (N, n); the returned arrays have shape (N,).
    """
    X = np.atleast_2d(np.asarray(X, dtype=float))
    N, n = X.shape
    key = "inf" if is_inf(alpha) else float(alpha)
    plan = _branch_plan(n, D, key)
    prev: dict[Partition, np.ndarray] = {Partition(()): np.ones(N)}
    for m in range(1, n + 1):
        xm = X[:, m - 1]
        pw = [np.ones(N)]
        for _ in range(D):
            pw.append(pw[-1] * xm)
        cur: dict[Partition, np.ndarray] = {}
        for lam, terms in plan[m - 1]:
            acc = None
            for mu, c, drop in terms:
                v = prev.get(mu)
                if v is None:
                    continue
                t = c * v * pw[drop] if drop else c * v
                acc = t if acc is None else acc + t
            cur[lam] = acc if acc is not None else np.zeros(N)
        prev = cur
    return prev


def neumaier_sum(arrays: Sequence[np.ndarray]) -> np.ndarray:
    """Compensated elementwise sum of a sequence of equally shaped arrays."""
    s = None
    comp = None
    for a in arrays:
        if s is None:
            s = np.array(a, dtype=float, copy=True)
            comp = np.zeros_like(s)
            continue
        t = s + a
        big = np.abs(s) >= np.abs(a)
        comp += np.where(big, (s - t) + a, (a - t) + s)
        s = t
    if s is None:
        return np.zeros(())
    return s + comp


# ---------------------------------------------------------------------------
# Monomial-coefficient route (for evaluating one fixed series at many points)


@lru_cache(maxsize=None)
def _branch_coeff_float(lam: Partition, kappa: tuple[int, ...], alpha: float) -> float:
    m = len(kappa)
    if len(lam) > m:
        return 0.0
    if m == 0:
        return 1.0 if not lam else 0.0
    target = lam.size - kappa[-1]
    total = 0.0
    for mu in horizontal_strip_children(lam, m - 1):
        if mu.size == target:
            c = _branch_coeff_float(mu, kappa[:-1], alpha)
            if c:
                total += _beta_float(lam, mu, alpha) * c
    return total


def jack_monomial_coeffs_float(lam: Sequence[int], alpha, n: int) -> dict[Partition, float]:
    """Coefficients of m_kappa in J_lam (m_lam itself at alpha = infinity)."""
    lam = Partition(lam)
    if is_inf(alpha):
        return {lam: 1.0}
    out = {}
    a = float(alpha)
    for kappa in partitions_list(lam.size, n):
        if len(kappa) < len(lam):
            continue
        c = _branch_coeff_float(lam, tuple(kappa), a)
        if c:
            out[kappa] = c
    return out


class DenseSymPoly:
    """A float polynomial in n variables stored as a dense coefficient tensor."""

    def __init__(self, n: int, degree: int):
        self.n = n
        self.degree = degree
        self.coef = np.zeros((degree + 1,) * n)

    def add_monomial_symmetric(self, kappa: Sequence[int], c: float) -> None:
        from .polynomial import monomial_exponents

        for e in monomial_exponents(kappa, self.n):
            self.coef[e] += c

    def __call__(self, X: np.ndarray, chunk: int = 50_000) -> np.ndarray:
        X = np.atleast_2d(np.asarray(X, dtype=float))
        N = X.shape[0]
        out = np.empty(N)
        D = self.degree
        for start in range(0, N, chunk):
            xs = X[start : start + chunk]
            pows = [np.vander(xs[:, i], D + 1, increasing=True) for i in range(self.n)]
            T = self.coef
            # contract the last variable first: T[..., e] * x_n^e
            res = np.tensordot(pows[-1], T, axes=([1], [self.n - 1])) if self.n > 1 else pows[0] @ T
            # res has shape (chunk, D+1, ..., D+1) with n-1 trailing axes
            for i in range(self.n - 2, -1, -1):
                res = np.einsum("nj,n...j->n...", pows[i], res)
            out[start : start + chunk] = res
        return out
