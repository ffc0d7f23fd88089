"""Al-Salam-Carlitz I polynomials and the operator recursion behind the
root-of-unity constraint computations.

The polynomial identities (backward shift, the closed form of the operator
recursion) are verified symbolically over Z[a, q^{+-1}, x]; the value at
x = 0 for q a root of unity is evaluated exactly in Q(zeta_N)[a].
"""

from __future__ import annotations

import sympy

from .contexts import qbinom
from .scalars import CycNum, Scalar

_x, _a, _q, _t, _t1 = sympy.symbols("x a q t t1")


def gauss_binomial(n, k, q):
    """Gaussian binomial as a sympy polynomial in q (Pascal recursion)."""
    row = [sympy.Integer(1)]
    for m in range(1, n + 1):
        new = [sympy.Integer(1)]
        for j in range(1, m):
            new.append(sympy.expand(row[j - 1] + q ** j * row[j]))
        new.append(sympy.Integer(1))
        row = new
    return row[k]


def asc_polynomial(n, x=_x, a=_a, q=_q):
    """U_n^{(a)}(x; q) = sum_k [n choose k]_q (-a)^k q^(k(k-1)/2)
    (x-1)(x-q)...(x-q^(n-k-1))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = sympy.Integer(0)
    for k in range(n + 1):
        prod = sympy.Integer(1)
        for j in range(n - k):
            prod *= x - q ** j
        total += gauss_binomial(n, k, q) * (-a) ** k * q ** (k * (k - 1) // 2) * prod
    return sympy.expand(total)


def backward_shift_residual(n):
    """The backward shift recursion as an expression that must vanish:

    -q^(1-n) x U_n(x) - [a U_{n-1}(x) - (x-1)(x-a) U_{n-1}(x/q)].
    """
    un = asc_polynomial(n)
    um = asc_polynomial(n - 1)
    lhs = -_q ** (1 - n) * _x * un
    rhs = _a * um - (_x - 1) * (_x - _a) * um.subs(_x, _x / _q)
    return sympy.simplify(sympy.together(lhs - rhs))


def q_derivative(f, x=_x, q=_q):
    """D_q f(x) = (f(qx) - f(x)) / ((q-1) x)."""
    return sympy.cancel((f.subs(x, q * x) - f) / ((q - 1) * x))


def p_recursion(n, x=_x, t=_t, q=_q):
    """p_0 = 1 and p_n = (x + t q^(-2n) D_q + q^(-n)) p_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    p = sympy.Integer(1)
    for m in range(1, n + 1):
        p = sympy.expand(x * p + t * q ** (-2 * m) * q_derivative(p, x, q)
                         + q ** (-m) * p)
    return p


def closed_form_residual(n):
    """p_n(x; t, q) - t1^n q^(-n^2) U_n^(-1/t1-1)(q^n x / t1; q) under the
    substitution t = (q-1) t1 (t1+1); must vanish identically."""
    p = p_recursion(n).subs(_t, (_q - 1) * _t1 * (_t1 + 1))
    u = asc_polynomial(n, x=_q ** n * _x / _t1, a=-1 / _t1 - 1)
    closed = _t1 ** n * _q ** (-n * n) * u
    return sympy.simplify(sympy.together(sympy.expand(p - closed)))


def asc_value_at_zero(M, N, zeta_exponent=1):
    """U_M^{(a)}(0; zeta^2) in Q(zeta_N)[a], zeta = zeta_N^zeta_exponent."""
    zeta = _root(N, zeta_exponent)
    q = zeta * zeta
    total = Scalar.zero(N, 1)
    a = Scalar.c_var(N, 1, 0)
    for k in range(M + 1):
        # (x-1)(x-q)...(x-q^(M-k-1)) at x = 0
        const = CycNum.one(N)
        for j in range(M - k):
            const = const * (-(q ** j))
        coef = qbinom(M, k, q) * q ** (k * (k - 1) // 2) * const
        mono = Scalar.from_cyc(N, 1, coef if k % 2 == 0 else -coef)
        for _ in range(k):
            mono = mono * a
        total = total + mono
    return total


def asc_zero_closed_form(M, N, zeta_exponent=1):
    """(-1)^M zeta^(M(M-1)) (1 + a^M), valid when zeta^2 has order M."""
    zeta = _root(N, zeta_exponent)
    sign = CycNum.from_rational(N, -1) ** M
    coef = sign * zeta ** (M * (M - 1))
    a = Scalar.c_var(N, 1, 0)
    am = Scalar.one(N, 1)
    for _ in range(M):
        am = am * a
    return (Scalar.one(N, 1) + am) * coef


def _root(N, k):
    from .scalars import make_root
    return make_root(N, k)
