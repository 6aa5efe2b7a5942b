from fractions import Fraction

from hypothesis import given

from mhyperg.partitions import Partition, partitions_list
from mhyperg.polynomial import NVarPoly
from mhyperg.symfun import (MonomialExpansion, PowerSumElement, inner_product, m_in_p, m_to_p, omega_alpha,
                            p_in_m, p_to_m, specialize)

from conftest import alphas, partitions


def test_power_sum_to_monomials_small_cases():
    # p_1^2 = m_2 + 2 m_11 ; p_2 p_1 = m_3 + m_21
    assert p_in_m(Partition((1, 1))) == {Partition((2,)): 1, Partition((1, 1)): 2}
    assert p_in_m(Partition((2, 1))) == {Partition((3,)): 1, Partition((2, 1)): 1}


@given(partitions(6))
def test_transition_matrices_are_inverse(mu):
    back = MonomialExpansion({}, None)
    for lam, c in m_in_p(mu).items():
        back = back + MonomialExpansion(p_in_m(lam), None).scale(c)
    assert back == MonomialExpansion({mu: 1}, None)


@given(partitions(5, 3))
def test_power_sum_polynomial_matches_product(mu):
    n = 3
    direct = NVarPoly.constant(n, Fraction(1))
    for r in mu:
        direct = direct * NVarPoly.power_sum(r, n)
    assert p_to_m(PowerSumElement.p(*mu), n).to_poly(n) == direct


@given(partitions(6), partitions(6), alphas)
def test_power_sums_are_orthogonal(lam, mu, alpha):
    val = inner_product(PowerSumElement.p(*lam), PowerSumElement.p(*mu), alpha)
    assert val == (lam.z() * alpha ** len(lam) if lam == mu else 0)


@given(partitions(6), alphas)
def test_omega_alpha_squares_to_scaling(lam, alpha):
    # applying omega_alpha then omega_{1/alpha} is the identity
    f = PowerSumElement.p(*lam)
    assert omega_alpha(omega_alpha(f, alpha), 1 / alpha) == f


def test_specializations():
    f = PowerSumElement.p(2, 1) + PowerSumElement.p(1, 1, 1).scale(Fraction(1, 2))
    assert specialize(f, "eps_X", Fraction(3)) == 9 + Fraction(27, 2)
    assert specialize(f, "eps_delta") == Fraction(1, 2)
    assert specialize(f, "numeric", [1, 2]) == 5 * 3 + Fraction(27, 2)


def test_monomial_round_trip_through_power_sums():
    for lam in partitions_list(5):
        m = MonomialExpansion({lam: 1}, None)
        assert p_to_m(m_to_p(m), None) == m
