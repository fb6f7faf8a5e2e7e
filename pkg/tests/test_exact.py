import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from magicsquare.exact import (
    LinearFactorProduct,
    LinearForm,
    QPoly,
    factorial_ratio,
    falling_factorial,
    gauss_binomial,
    gen_binomial,
    parse_rat,
    rat_str,
)

rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)


def test_gen_binomial_examples():
    assert gen_binomial(20, 1) == 20
    assert gen_binomial(Fraction(13, 2), 1) == Fraction(13, 2)
    assert gen_binomial(Fraction(11, 3), 2) == Fraction(44, 9)
    assert gen_binomial(Fraction(5), 0) == 1


def test_gen_binomial_matches_integer_binomial():
    from math import comb

    for x in range(31):
        for k in range(x + 1):
            assert gen_binomial(x, k) == comb(x, k)


@given(rationals, st.integers(min_value=0, max_value=10))
@settings(max_examples=100)
def test_gen_binomial_falling_factorial(x, k):
    fact = 1
    for i in range(1, k + 1):
        fact *= i
    assert gen_binomial(x, k) * fact == falling_factorial(x, k)


def test_gen_binomial_rejects_negative_k():
    with pytest.raises(ValueError):
        gen_binomial(3, -1)


def test_factorial_ratio():
    assert factorial_ratio(5, 3) == 20
    assert factorial_ratio(Fraction(7, 2), Fraction(3, 2)) == Fraction(35, 4)
    assert factorial_ratio(Fraction(9, 4), Fraction(9, 4)) == 1
    with pytest.raises(ValueError):
        factorial_ratio(Fraction(7, 2), 3)
    with pytest.raises(ValueError):
        factorial_ratio(2, 5)


def test_gauss_binomial_examples():
    assert gauss_binomial(1, 1) == QPoly([1, 1])
    assert gauss_binomial(2, 2) == QPoly([1, 1, 2, 1, 1])


def test_gauss_binomial_q1_limit():
    from math import comb

    for l in range(8):
        for k in range(8):
            assert gauss_binomial(l, k).at_one() == comb(l + k, k)


def test_gauss_binomial_palindromic_nonneg():
    for l in range(13):
        for k in range(13):
            g = gauss_binomial(l, k)
            assert g.is_palindromic()
            assert g.has_nonneg_coeffs()


def test_qpoly_divexact():
    a = QPoly([1, 2, 1])
    b = QPoly([1, 1])
    assert a.divexact(b) == b
    with pytest.raises(ValueError):
        QPoly([1, 1, 1]).divexact(QPoly([1, 1]))


def test_rat_strings():
    assert rat_str(Fraction(3)) == "3"
    assert rat_str(Fraction(-5, 2)) == "-5/2"
    assert parse_rat("-5/2") == Fraction(-5, 2)


def test_linear_factor_product_eval():
    lfp = LinearFactorProduct()
    lfp.mul_scalar(Fraction(3, 2))
    lfp.mul_factor(LinearForm.make(1, a=2))      # 1 + 2a
    lfp.mul_factor(LinearForm.make(0, a=1), -1)  # 1/a
    assert lfp.eval({"a": Fraction(2)}) == Fraction(3, 2) * 5 / 2
    with pytest.raises(ZeroDivisionError):
        lfp.eval({"a": Fraction(0)})
    assert lfp.numerator_count() == 1
    assert lfp.denominator_count() == 1


def test_linear_factor_product_matches_series_value():
    # evaluation of the factored form equals the formula value at 50
    # assignments that avoid poles
    from magicsquare.series import EXCEPTIONAL, evaluate_series

    rng = random.Random(7)
    checked = 0
    while checked < 50:
        exps = {s: rng.randint(0, 2) for s in ("p", "q", "r", "s")}
        a = Fraction(rng.randint(1, 15), rng.choice([1, 1, 2]))
        res = evaluate_series(EXCEPTIONAL, exps, a)
        if res.pole:
            continue
        try:
            v = res.factored.eval({"a": a})
        except ZeroDivisionError:
            continue
        assert v == res.value
        checked += 1
