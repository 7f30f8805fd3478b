from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from crr import oracle
from crr.core import ParameterError

from oracles import sympy_coeffs

rationals = st.fractions(min_value=Fraction(-6), max_value=Fraction(6), max_denominator=9)
positive = st.fractions(min_value=Fraction(1, 9), max_value=Fraction(8), max_denominator=9)


@pytest.mark.parametrize("n", range(0, 9))
def test_matches_sympy(n):
    lam, eta = Fraction(5, 3), Fraction(-2, 7)
    assert oracle.exact_coeffs(n, lam, eta) == [Fraction(int(c.p), int(c.q)) for c in sympy_coeffs(n, lam, eta)]


def test_degree_two_hand_expansion():
    assert oracle.exact_coeffs(2, 1, 0) == [Fraction(-1, 4), 0, Fraction(3, 4)]


@given(st.integers(0, 8), positive, rationals, rationals)
def test_recurrence_holds_exactly(n, lam, eta, x):
    # P_{n+1} = (x - c_{n+1}) P_n - d_{n+1} (x^2 + 1) P_{n-1}, with n + 1 <= 8
    if n == 0 or n + 1 > oracle.ORACLE_MAX_N:
        return
    c = eta / (lam + n)
    d = Fraction(n) * (n + 2 * lam - 1) / (4 * (n + lam - 1) * (n + lam))
    lhs = oracle.exact_value(n + 1, lam, eta, x)
    rhs = (x - c) * oracle.exact_value(n, lam, eta, x) - d * (x * x + 1) * oracle.exact_value(n - 1, lam, eta, x)
    assert lhs == rhs


def test_limits():
    with pytest.raises(ParameterError):
        oracle.exact_coeffs(9, 1, 0)
    with pytest.raises(ParameterError):
        oracle.exact_coeffs(2, 0, 1)
