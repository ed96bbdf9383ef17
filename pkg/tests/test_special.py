from fractions import Fraction

import pytest
import sympy

from tautcheck.series.core import (
    QQ,
    InadmissiblePrimeError,
    TruncatedSeries,
    derivative,
    exp,
    prime_field,
)
from tautcheck.series.special import (
    c_coefficient,
    c_derivative_series,
    c_integer,
    c_log_coefficients,
    c_series,
    factorial,
)


@pytest.mark.parametrize(
    "k, expected",
    [(0, Fraction(1)), (1, Fraction(5, 6)), (2, Fraction(385, 72))],
)
def test_c_coefficients(k, expected):
    assert c_coefficient(k) == expected
    assert c_series(2).coefficient(k) == expected


def test_c_integer_matches_factorial_formula():
    for k in range(8):
        expected = sympy.factorial(6 * k) / (sympy.factorial(3 * k) * sympy.factorial(2 * k))
        assert c_integer(k) == int(expected)


def test_factorial_table():
    assert [factorial(n) for n in range(6)] == [1, 1, 2, 6, 24, 120]
    with pytest.raises(ValueError):
        factorial(-1)


def test_c_series_mod_p_is_the_reduction():
    field = prime_field(10007)
    reduced = c_series(10, field)
    for k in range(11):
        assert reduced.coefficient(k).residue == field.coerce(c_coefficient(k))


@pytest.mark.parametrize("p", [2, 3])
def test_c_series_needs_72_invertible(p):
    with pytest.raises(InadmissiblePrimeError):
        c_series(3, prime_field(p))


def test_c_series_negative_order():
    with pytest.raises(ValueError):
        c_series(-1)


def test_log_coefficients():
    c1, c2 = c_log_coefficients(2)
    assert c1 == Fraction(5, 6)
    assert c2 == 5


def test_log_coefficients_exponentiate_back():
    order = 12
    logs = c_log_coefficients(order)
    assert exp(TruncatedSeries([0, *logs], QQ)) == c_series(order)


def test_log_coefficients_need_positive_order():
    with pytest.raises(ValueError):
        c_log_coefficients(0)


@pytest.mark.parametrize("ring", [QQ, prime_field(10009)])
def test_derivative_from_formula_matches_termwise(ring):
    assert c_derivative_series(6, ring) == derivative(c_series(7, ring))


def test_c_denominators_only_involve_two_and_three():
    for k in range(16):
        assert set(sympy.factorint(c_coefficient(k).denominator)) <= {2, 3}
