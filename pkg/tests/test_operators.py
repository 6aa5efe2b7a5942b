import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from mhyperg import hyper, operators as ops, ortho
from mhyperg.integrals import gaussian_functional, jacobi_functional, laguerre_functional
from mhyperg.partitions import k_of, partitions_upto, rho
from mhyperg.polynomial import NVarPoly, SymmetryError
from mhyperg.symfun import MonomialExpansion

from conftest import alphas, partitions, rationals

N = 2
X = sympy.symbols("x0:2")


def _to_sympy(f: NVarPoly):
    return sympy.expand(sum((sympy.Rational(c.numerator, c.denominator) * sympy.prod([x**p for x, p in zip(X, e)])
                             for e, c in f.terms.items()), sympy.Integer(0)))


def test_primitives_against_direct_formulas():
    f = ops.omega_poly((2, 1), Fraction(2), N)
    F = _to_sympy(f)
    U = sum(x**3 * sympy.diff(F, x, 2) for x in X) / 2
    assert _to_sympy(ops.apply(ops.U(3, 2, N), f)) == sympy.expand(U)
    V = sum(X[i] ** 2 * sympy.diff(F, X[i]) / (X[i] - X[j]) for i in range(N) for j in range(N) if i != j)
    assert _to_sympy(ops.apply(ops.V(2, N), f)) == sympy.simplify(V).expand()
    assert ops.apply(ops.mult_p(2, N), f) == NVarPoly.power_sum(2, N) * f


def test_composition_order():
    f = ops.omega_poly((1,), 1, N)
    lhs = ops.apply(ops.U(0, 1, N) @ ops.mult_p(2, N), f)
    assert lhs == ops.apply(ops.U(0, 1, N), NVarPoly.power_sum(2, N) * f)


def test_singular_part_needs_symmetric_input():
    with pytest.raises(SymmetryError):
        ops.apply(ops.V(0, N), NVarPoly.variable(N, 0), check_symmetry=True)


@settings(max_examples=30)
@given(partitions(4, 3), alphas, rationals(1, 5), rationals(1, 5), st.integers(1, 3))
def test_jacobi_eigenfunctions(lam, alpha, a, b, n):
    if len(lam) > n:
        return
    k = k_of(alpha)
    p = k * (n - 1) + 1
    G = ortho.jacobi(lam, a, b, alpha, n).to_poly()
    ev = (a + b + 2 * p) * lam.size + 2 * rho(lam, alpha)
    assert ops.eigencheck(ops.E_jacobi(a, b, k, n), G, ev).is_zero()


@settings(max_examples=30)
@given(partitions(4, 3), alphas, st.integers(1, 3))
def test_hermite_eigenfunctions(lam, alpha, n):
    if len(lam) > n:
        return
    H = ortho.hermite(lam, alpha, n).to_poly()
    assert ops.eigencheck(ops.E_hermite(k_of(alpha), n), H, -2 * lam.size).is_zero()


@settings(max_examples=30)
@given(partitions(4, 3), alphas, rationals(1, 5), st.integers(1, 3))
def test_laguerre_eigenfunctions(lam, alpha, a, n):
    if len(lam) > n:
        return
    L = ortho.laguerre(lam, a, alpha, n).to_poly()
    assert ops.eigencheck(ops.E_laguerre(a, k_of(alpha), n), L, lam.size).is_zero()


@given(partitions(5, 3), alphas)
def test_laplace_beltrami_eigenvalue(lam, alpha):
    n = 3
    if len(lam) > n:
        return
    k = k_of(alpha)
    f = ops.omega_poly(lam, alpha, n)
    assert ops.eigencheck(ops.E_laplace(k, n), f, ops.laplace_eigenvalue(lam, k, n)).is_zero()
    # W f = n(n-1)/2 f + V_2 f, so E' - E = 2 U11 + n + k n(n-1)
    diff = ops.apply(ops.E_laplace_prime(k, n), f) - ops.apply(ops.E_laplace(k, n), f)
    assert diff == (ops.apply(ops.U(1, 1, n), f).scale(2) + f.scale(n + k * n * (n - 1)))


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(2)])
def test_jacobi_operator_self_adjoint(alpha):
    n, a, b = 2, Fraction(3, 2), Fraction(7, 3)
    k = k_of(alpha)
    p = k * (n - 1) + 1
    E = ops.E_jacobi(a, b, k, n)
    basis = [ops.omega_poly(lam, alpha, n) for lam in partitions_upto(3, n)]
    for f in basis:
        Ef = ops.apply(E, f)
        for g in basis:
            lhs = jacobi_functional(MonomialExpansion.from_poly(f * ops.apply(E, g)), a + p, b + p, alpha)
            rhs = jacobi_functional(MonomialExpansion.from_poly(Ef * g), a + p, b + p, alpha)
            assert lhs == rhs


@pytest.mark.parametrize("alpha", [Fraction(1), Fraction(3)])
def test_laguerre_and_hermite_operators_self_adjoint(alpha):
    n, a = 2, Fraction(5, 2)
    k = k_of(alpha)
    p = k * (n - 1) + 1
    EL, EH = ops.E_laguerre(a, k, n), ops.E_hermite(k, n)
    basis = [ops.omega_poly(lam, alpha, n) for lam in partitions_upto(3, n)]
    for f in basis:
        for g in basis:
            m = lambda h: MonomialExpansion.from_poly(h)
            assert laguerre_functional(m(f * ops.apply(EL, g)), a + p, alpha) == \
                laguerre_functional(m(ops.apply(EL, f) * g), a + p, alpha)
            assert gaussian_functional(m(f * ops.apply(EH, g)), alpha) == \
                gaussian_functional(m(ops.apply(EH, f) * g), alpha)


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(3)])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_series_annihilated_below_top_degree(alpha, n):
    k = k_of(alpha)
    a, b, c = Fraction(2, 3), Fraction(5, 4), Fraction(17, 5)
    for (pp, qq), prm in (((2, 1), (a, b, c)), ((1, 1), (a, c)), ((0, 1), (c,))):
        layers = hyper.pfq_formal(hyper.HyperParams(prm[:pp], prm[pp:], alpha), 5, n)
        res = ops.annihilation_check(ops.Phi(pp, qq, prm, k, n), layers, n)
        assert all(v == 0 for v in res.values()), (pp, qq, res)


def test_annihilation_detects_wrong_parameters():
    alpha, n = Fraction(2), 2
    k = k_of(alpha)
    layers = hyper.pfq_formal(hyper.HyperParams((Fraction(1, 2),), (Fraction(3),), alpha), 4, n)
    res = ops.annihilation_check(ops.Phi(1, 1, (Fraction(1, 2), Fraction(4)), k, n), layers, n)
    assert max(res.values()) > 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(2)])
def test_exponential_identities(alpha):
    assert all(v == 0 for v in ops.exponential_lemmas(k_of(alpha), 3, 5).values())


@given(partitions(4, 3), alphas)
def test_one_box_sums(mu, alpha):
    if len(mu) > 3:
        return
    assert all(v == 0 for v in ops.lemma_sums(mu, alpha, 3).values())


def test_kernel_rows_at_alpha_two():
    alpha, n = Fraction(2), 2
    a, b, c = Fraction(1, 3), Fraction(2, 5), Fraction(7, 4)
    lay = {"0F0": ((), ()), "1F0": ((a,), ()), "0F1": ((), (c,)), "1F1": ((a,), (c,)), "2F1": ((a, b), (c,))}
    for name, op in ops.kernel_operator_rows(k_of(alpha), n, a=a, b=b, c=c).items():
        up, lo = lay[name]
        res = ops.kernel_row_check(op, hyper.pfq_two_layers(hyper.HyperParams(up, lo, alpha), 4, n), n)
        assert max(res.values()) == 0, name
