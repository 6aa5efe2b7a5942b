import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mhyperg.partitions import (ContainmentError, ParameterError, Partition, as_alpha, complement, conjugate,
                                gen_pochhammer, hook_products, k_of, partitions_list, partitions_upto, rho,
                                subpartitions)

from conftest import alphas, partitions, rationals


def test_parse_and_strip_zeros():
    assert Partition((3, 1, 0, 0)) == Partition.parse("3,1")
    assert Partition.parse("[2, 2, 1]") == (2, 2, 1)
    assert Partition.parse("") == ()


def test_rejects_bad_parts():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, -1))


def test_partition_counts():
    # p(m) for m = 0..10
    assert [len(partitions_list(m)) for m in range(11)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]
    assert len(partitions_list(6, 2)) == 4


def test_alpha_parsing():
    assert as_alpha("5/2") == Fraction(5, 2)
    assert math.isinf(as_alpha("inf"))
    assert k_of(Fraction(2)) == Fraction(1, 2)
    assert k_of(math.inf) == 0
    with pytest.raises(ParameterError):
        as_alpha(0)


@given(partitions(8))
def test_conjugate_is_an_involution(lam):
    assert conjugate(conjugate(lam)) == lam
    assert conjugate(lam).size == lam.size


@given(partitions(7))
def test_subpartitions_are_contained_and_complete(lam):
    subs = list(subpartitions(lam))
    assert len(subs) == len(set(subs))
    assert all(lam.contains(mu) for mu in subs)
    brute = [mu for d in range(lam.size + 1) for mu in partitions_list(d) if lam.contains(mu)]
    assert set(subs) == set(brute)


@given(partitions(7), alphas)
def test_hooks_match_arm_leg_definition(lam, alpha):
    h, hp = hook_products(lam, alpha)
    eh = ehp = Fraction(1)
    for i, j in lam.boxes():
        a, l = lam.arm(i, j), lam.leg(i, j)
        eh *= alpha * a + l + 1
        ehp *= alpha * a + l + alpha
    assert (h, hp) == (eh, ehp)


@given(partitions(6), alphas, rationals(-4, 6))
def test_pochhammer_is_a_box_product(lam, alpha, a):
    # (a)_lam = prod over boxes (a + (j-1) - k(i-1))
    k = 1 / alpha
    expect = Fraction(1)
    for i, j in lam.boxes():
        expect *= a + (j - 1) - k * (i - 1)
    assert gen_pochhammer(a, lam, alpha) == expect


@given(partitions(6), alphas)
def test_rho_as_box_sum(lam, alpha):
    # rho(lam) = sum over boxes ((j-1) - k(i-1))
    k = 1 / alpha
    assert rho(lam, alpha) == sum((Fraction(j - 1) - k * (i - 1) for i, j in lam.boxes()), Fraction(0))


def test_pochhammer_float_matches_exact():
    lam = Partition((3, 2, 1))
    assert gen_pochhammer(2.5, lam, 2) == pytest.approx(float(gen_pochhammer(Fraction(5, 2), lam, 2)))


def test_complement_in_box():
    assert complement((2, 1), 3, 3) == (3, 2, 1)
    assert complement((), 2, 2) == (2, 2)
    with pytest.raises(ContainmentError):
        complement((4,), 3, 2)


def test_partitions_upto_is_degree_major():
    sizes = [lam.size for lam in partitions_upto(5)]
    assert sizes == sorted(sizes)
