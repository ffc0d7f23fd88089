import sympy
import pytest

from qspairs.ascarlitz import (
    asc_polynomial, asc_value_at_zero, asc_zero_closed_form,
    backward_shift_residual, closed_form_residual, p_recursion, q_derivative,
)

_x, _a, _q, _t = sympy.symbols("x a q t")


def test_low_degree_polynomials():
    assert asc_polynomial(0) == 1
    # U_1^(a)(x; q) = x - 1 - a, by expanding the defining sum
    assert sympy.expand(asc_polynomial(1) - (_x - 1 - _a)) == 0


def test_p_low_degrees():
    assert p_recursion(0) == 1
    # the q-derivative kills constants, so p_1 = x + q^{-1}
    assert sympy.expand(p_recursion(1) - (_x + 1 / _q)) == 0


def test_q_derivative():
    assert q_derivative(sympy.Integer(5)) == 0
    assert sympy.simplify(q_derivative(_x ** 3) - (_q ** 2 + _q + 1) * _x ** 2) == 0


@pytest.mark.parametrize("n", range(1, 9))
def test_backward_shift_recursion(n):
    assert backward_shift_residual(n) == 0


@pytest.mark.parametrize("n", range(0, 7))
def test_closed_form(n):
    assert closed_form_residual(n) == 0


@pytest.mark.parametrize("M,N,exp", [(2, 4, 1), (3, 3, 1), (5, 5, 1), (3, 12, 2)])
def test_value_at_zero_roots_of_unity(M, N, exp):
    # zeta^2 is a primitive M-th root in each sampled case
    assert asc_value_at_zero(M, N, exp) == asc_zero_closed_form(M, N, exp)
