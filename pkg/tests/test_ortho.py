import math
from fractions import Fraction

import numpy as np
import pytest
import scipy.special as sp
from scipy import integrate
from hypothesis import given, settings, strategies as st

from mhyperg import ortho
from mhyperg.integrals import gaussian_functional, jacobi_functional, laguerre_functional
from mhyperg.jack import jack, jstar_at_ones
from mhyperg.partitions import ContainmentError, ParameterError, Partition, conjugate, partitions_upto, subpartitions
from mhyperg.symfun import MonomialExpansion

from conftest import alphas, partitions, rationals

A_VALUES = [Fraction(1, 2), Fraction(3, 2), Fraction(3)]


# one variable: the classical polynomials


@pytest.mark.parametrize("r", range(6))
@pytest.mark.parametrize("a", A_VALUES)
def test_laguerre_one_variable(r, a):
    L = ortho.laguerre_omega_form((r,), a, 2, 1)
    for x in (0.3, 1.7, 4.0):
        assert L.evaluate([x]) == pytest.approx(math.factorial(r) * sp.eval_genlaguerre(r, float(a), x), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("r", range(6))
def test_jacobi_one_variable_is_shifted_jacobi(r):
    a, b = Fraction(1, 2), Fraction(3, 2)
    G = ortho.jacobi((r,), a, b, 1, 1)
    xs = [0.1, 0.35, 0.8]
    ratio = [G.evaluate([x]) / sp.eval_jacobi(r, float(a), float(b), 1 - 2 * x) for x in xs]
    assert ratio[1] == pytest.approx(ratio[0], rel=1e-11) and ratio[2] == pytest.approx(ratio[0], rel=1e-11)
    # alpha plays no role in one variable
    assert ortho.jacobi((r,), a, b, 3, 1) == G


@pytest.mark.parametrize("r", range(7))
def test_hermite_one_variable(r):
    H = ortho.hermite((r,), 2, 1)
    for x in (-1.2, 0.4, 2.0):
        assert H.evaluate([x]) == pytest.approx(sp.eval_hermite(r, x), rel=1e-12, abs=1e-9)
    assert ortho.hermite((3,), 1, 1).to_poly().evaluate([Fraction(1)]) == 8 - 12


# the moment functionals against direct quadrature


def _dblquad(f, lo, hi):
    return integrate.dblquad(lambda y, x: f(x, y), lo, hi, lo, hi, epsabs=1e-11, epsrel=1e-11)[0]


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1)])
def test_laguerre_functional_by_quadrature(lam):
    # alpha = 1 (k = 1, p = 2), a = 3: weight x y e^{-x-y} (x - y)^2
    f = jack(lam, 1, 2, "Omega")
    w = lambda x, y: x * y * math.exp(-x - y) * (x - y) ** 2
    num = _dblquad(lambda x, y: w(x, y) * float(f.evaluate([x, y])), 0, 60)
    den = _dblquad(w, 0, 60)
    assert num / den == pytest.approx(float(laguerre_functional(f, 3, 1)), rel=1e-8)


@pytest.mark.parametrize("lam", [(1,), (2,), (1, 1), (2, 1)])
def test_jacobi_functional_by_quadrature(lam):
    # alpha = 2 (k = 1/2, p = 3/2), a = 5/2, b = 7/2: weight x (1-x)^2 y (1-y)^2 |x - y|
    f = jack(lam, 2, 2, "Omega")
    w = lambda x, y: x * y * (1 - x) ** 2 * (1 - y) ** 2 * abs(x - y)
    num = 2 * integrate.dblquad(lambda y, x: w(x, y) * float(f.evaluate([x, y])), 0, 1, 0, lambda x: x, epsabs=1e-12)[0]
    den = 2 * integrate.dblquad(lambda y, x: w(x, y), 0, 1, 0, lambda x: x, epsabs=1e-12)[0]
    assert num / den == pytest.approx(float(jacobi_functional(f, Fraction(5, 2), Fraction(7, 2), 2)), rel=1e-8)


@pytest.mark.parametrize("lam", [(2,), (1, 1), (2, 2), (3, 1)])
def test_gaussian_functional_by_quadrature(lam):
    f = jack(lam, 1, 2, "Omega")
    w = lambda x, y: math.exp(-x * x - y * y) * (x - y) ** 2
    num = _dblquad(lambda x, y: w(x, y) * float(f.evaluate([x, y])), -9, 9)
    den = _dblquad(w, -9, 9)
    assert num / den == pytest.approx(float(gaussian_functional(f, 1)), rel=1e-8)


# exact orthogonality


def _pairs(n, max_size):
    lams = list(partitions_upto(max_size, n))
    return [(l, m) for l in lams for m in lams]


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(2)])
def test_laguerre_orthogonality_exact(alpha):
    n, a = 2, Fraction(5, 3)
    A = a + (n - 1) / alpha + 1
    polys = {lam: ortho.laguerre(lam, a, alpha, n).to_monomial() for lam in partitions_upto(3, n)}
    for lam, f in polys.items():
        for mu, g in polys.items():
            val = laguerre_functional(f * g, A, alpha)
            if lam == mu:
                assert val == ortho.laguerre_norm_ratio(lam, a, alpha, n)
            else:
                assert val == 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(3)])
def test_jacobi_orthogonality_exact(alpha):
    n, a, b = 2, Fraction(4, 3), Fraction(5, 2)
    p = (n - 1) / alpha + 1
    polys = {lam: ortho.jacobi(lam, a, b, alpha, n).to_monomial() for lam in partitions_upto(3, n)}
    for lam, f in polys.items():
        for mu, g in polys.items():
            if lam != mu:
                assert jacobi_functional(f * g, a + p, b + p, alpha) == 0


@pytest.mark.parametrize("alpha", [Fraction(1, 2), Fraction(1), Fraction(2)])
def test_hermite_orthogonality_exact(alpha):
    n = 2
    polys = {lam: ortho.hermite(lam, alpha, n).to_monomial() for lam in partitions_upto(4, n)}
    for lam, f in polys.items():
        for mu, g in polys.items():
            val = gaussian_functional(f * g, alpha)
            if lam == mu:
                assert val == ortho.hermite_norm_ratio(lam, alpha, n)
            else:
                assert val == 0


# structure of the families


@given(partitions(4, 3), alphas, rationals(1, 5), st.integers(1, 3))
def test_laguerre_forms_agree(lam, alpha, a, n):
    if len(lam) > n:
        return
    J = ortho.laguerre(lam, a, alpha, n)
    O = ortho.laguerre_omega_form(lam, a, alpha, n)
    assert J == O.scale(jstar_at_ones(lam, alpha, n))


@settings(max_examples=25)
@given(partitions(4, 2), alphas, rationals(1, 5), rationals(1, 5))
def test_jacobi_reflection(lam, alpha, a, b):
    n = 2
    if len(lam) > n:
        return
    G = ortho.jacobi(lam, a, b, alpha, n).to_poly()
    Gs = ortho.jacobi(lam, b, a, alpha, n).to_poly()
    # G^{(a,b)}(1 - x) = (-1)^{|lam|} G^{(b,a)}(x)
    assert G.negate_args().substitute_shift(-1) == Gs.scale((-1) ** lam.size)


@given(partitions(4), alphas, rationals(4, 12))
def test_jacobi_coefficient_routes(lam, alpha, C):
    for mu in subpartitions(lam):
        try:
            rec = ortho.jacobi_c(lam, mu, C, alpha)
            dual = ortho.jacobi_c(conjugate(lam), conjugate(mu), -alpha * C, 1 / alpha)
        except ortho.SingularParameterError:
            continue
        assert rec == ortho.jacobi_c_tableau(lam, mu, C, alpha)
        assert rec == (-alpha) ** (lam.size - mu.size) * dual


def test_jacobi_coefficient_symbolic():
    import sympy

    C = sympy.Symbol("C")
    c = ortho.jacobi_c((2,), (1,), C, 2)
    for val in (Fraction(7), Fraction(9, 2)):
        assert Fraction(str(c.subs(C, sympy.Rational(val.numerator, val.denominator)))) == ortho.jacobi_c((2,), (1,), val, 2)


def test_jacobi_coefficient_boundary():
    assert ortho.jacobi_c((2, 1), (2, 1), 5, 2) == 1
    assert ortho.jacobi_c((2, 1), (3,), 5, 2) == 0


@given(partitions(4, 3), alphas)
def test_hermite_value_at_origin(lam, alpha):
    """H_lam(0) from the p_2^m coefficient of J_lam, independent of n."""
    for n in (len(lam) or 1, 3):
        H = ortho.hermite(lam, alpha, n).to_poly()
        assert H.evaluate([Fraction(0)] * n) == ortho.hermite_at_zero(lam, alpha)


@given(partitions(4, 2), alphas)
def test_hermite_parity(lam, alpha):
    H = ortho.hermite(lam, alpha, 2)
    assert all((lam.size - mu.size) % 2 == 0 for mu in H.coeffs)


@given(partitions(4, 2), alphas, rationals(1, 4), rationals(1, 4))
def test_jacobi_duality_probe(lam, alpha, a, b):
    assert ortho.jacobi_duality_probe(lam, a, b, alpha, 2)["max_residual"] == 0


def test_numeric_and_exact_evaluation_agree():
    L = ortho.laguerre((2, 1), Fraction(1, 2), 2, 2)
    pt = [Fraction(1, 3), Fraction(5, 4)]
    assert L.evaluate([float(v) for v in pt]) == pytest.approx(float(L.evaluate(pt)), rel=1e-12)


def test_parameter_errors():
    with pytest.raises(ContainmentError):
        ortho.laguerre((1, 1, 1), 1, 2, 2)
    with pytest.raises(ParameterError):
        ortho.hermite((1,), math.inf, 2)
    with pytest.raises(ParameterError):
        ortho.laguerre((2,), -2, 1, 1)
