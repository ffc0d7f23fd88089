"""Exact arithmetic in cyclotomic fields and in parameter polynomial rings.

Every coefficient in this package lives in Q(zeta_N) for a single fixed N,
represented in the power basis 1, z, ..., z^(phi(N)-1) of Q[x]/(Phi_N) with
arbitrary-precision rational coordinates.  Polynomials in the deformation
parameters c_1, ..., c_n over that field are handled by :class:`Scalar`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def _poly_divmod(num, den):
    """Quotient and remainder of integer-coefficient polynomial division.

    Polynomials are lists of Fractions, lowest degree first.  Assumes the
    divisor is monic up to a rational leading coefficient.
    """
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        coef = num[k + len(den) - 1] / lead
        q[k] = coef
        for j, d in enumerate(den):
            num[k + j] -= coef * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N):
    """Coefficients of Phi_N, lowest degree first, as a tuple of ints."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    # x^N - 1 divided by the product of Phi_d over proper divisors d of N
    poly = [Fraction(-1)] + [Fraction(0)] * (N - 1) + [Fraction(1)]
    for d in range(1, N):
        if N % d == 0:
            phi_d = [Fraction(c) for c in cyclotomic_polynomial(d)]
            poly, rem = _poly_divmod(poly, phi_d)
            assert all(r == 0 for r in rem)
    assert all(c.denominator == 1 for c in poly)
    return tuple(int(c) for c in poly)


@lru_cache(maxsize=None)
def _reduction_table(N):
    """Rows expressing z^k for k = phi..2*phi-2 in the power basis mod Phi_N.

    Entries are integers since Phi_N is monic over Z.
    """
    phi_coeffs = cyclotomic_polynomial(N)
    phi = len(phi_coeffs) - 1
    rows = []
    # z^phi = -(phi_0 + phi_1 z + ... + phi_{phi-1} z^{phi-1})
    cur = [-c for c in phi_coeffs[:phi]]
    rows.append(tuple(cur))
    for _ in range(phi - 2):
        shifted = [0] + cur[:-1]
        top = cur[-1]
        cur = [shifted[j] + top * rows[0][j] for j in range(phi)]
        rows.append(tuple(cur))
    return tuple(rows)


def euler_phi(N):
    return len(cyclotomic_polynomial(N)) - 1


class CycNum:
    """An element of Q(zeta_N) in the power basis modulo Phi_N.

    Stored as an integer coefficient vector over one positive denominator
    (normalized), so the hot path runs on machine/big integers with a single
    gcd per operation.  Instances are immutable; mixing different N raises.
    """

    __slots__ = ("N", "num", "den", "_hash")

    def __init__(self, N, coeffs):
        phi = euler_phi(N)
        if len(coeffs) != phi:
            raise ValueError(f"expected {phi} coefficients for N={N}")
        self.N = N
        den = 1
        for c in coeffs:
            if isinstance(c, Fraction):
                d = c.denominator
                den = den // gcd(den, d) * d
        num = []
        for c in coeffs:
            if isinstance(c, Fraction):
                num.append(c.numerator * (den // c.denominator))
            else:
                num.append(int(c) * den)
        self.num = tuple(num)
        self.den = den
        self._hash = None
        self._normalize()

    @classmethod
    def _raw(cls, N, num, den):
        self = object.__new__(cls)
        self.N = N
        self.num = tuple(num)
        self.den = den
        self._hash = None
        self._normalize()
        return self

    def _normalize(self):
        den = self.den
        if den < 0:
            den = -den
            self.num = tuple(-x for x in self.num)
        g = den
        for x in self.num:
            if x:
                g = gcd(g, x)
            if g == 1:
                break
        if g > 1:
            self.num = tuple(x // g for x in self.num)
            den //= g
        self.den = den

    @property
    def coeffs(self):
        return tuple(Fraction(x, self.den) for x in self.num)

    @classmethod
    def from_rational(cls, N, value):
        phi = euler_phi(N)
        f = Fraction(value)
        return cls._raw(N, (f.numerator,) + (0,) * (phi - 1), f.denominator)

    @classmethod
    def zero(cls, N):
        return cls._raw(N, (0,) * euler_phi(N), 1)

    @classmethod
    def one(cls, N):
        return cls._raw(N, (1,) + (0,) * (euler_phi(N) - 1), 1)

    def _check(self, other):
        if self.N != other.N:
            raise ValueError(f"cyclotomic order mismatch: {self.N} vs {other.N}")

    def is_zero(self):
        return not any(self.num)

    def is_one(self):
        return self.den == 1 and self.num[0] == 1 and not any(self.num[1:])

    def __eq__(self, other):
        if isinstance(other, int):
            other = CycNum.from_rational(self.N, other)
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.N == other.N and self.den == other.den and self.num == other.num

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.N, self.den, self.num))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int):
            other = CycNum.from_rational(self.N, other)
        self._check(other)
        da, db = self.den, other.den
        if da == db:
            return CycNum._raw(self.N,
                               [a + b for a, b in zip(self.num, other.num)], da)
        return CycNum._raw(self.N,
                           [a * db + b * da for a, b in zip(self.num, other.num)],
                           da * db)

    def __sub__(self, other):
        if isinstance(other, int):
            other = CycNum.from_rational(self.N, other)
        self._check(other)
        da, db = self.den, other.den
        if da == db:
            return CycNum._raw(self.N,
                               [a - b for a, b in zip(self.num, other.num)], da)
        return CycNum._raw(self.N,
                           [a * db - b * da for a, b in zip(self.num, other.num)],
                           da * db)

    def __neg__(self):
        return CycNum._raw(self.N, [-a for a in self.num], self.den)

    def __mul__(self, other):
        if isinstance(other, int):
            return CycNum._raw(self.N, [a * other for a in self.num], self.den)
        if isinstance(other, Fraction):
            return CycNum._raw(self.N, [a * other.numerator for a in self.num],
                               self.den * other.denominator)
        self._check(other)
        a, b = self.num, other.num
        phi = len(a)
        conv = [0] * (2 * phi - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        conv[i + j] += ai * bj
        out = conv[:phi]
        table = _reduction_table(self.N)
        for k in range(phi, 2 * phi - 1):
            ck = conv[k]
            if ck:
                row = table[k - phi]
                for j in range(phi):
                    if row[j]:
                        out[j] += ck * row[j]
        return CycNum._raw(self.N, out, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse via the extended Euclidean algorithm mod Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta_N)")
        phi_poly = [Fraction(c) for c in cyclotomic_polynomial(self.N)]
        # gcd(a, Phi_N) = 1 since Phi_N is irreducible over Q
        r0, r1 = phi_poly, [Fraction(x, self.den) for x in self.num]
        while len(r1) > 1 and r1[-1] == 0:
            r1.pop()
        t_prev, t_cur = [Fraction(0)], [Fraction(1)]
        while not (len(r1) == 1 and r1[0] == 0):
            q, r = _poly_divmod(r0, r1)
            # t_next = t_prev - q * t_cur
            prod = [Fraction(0)] * (len(q) + len(t_cur) - 1)
            for i, qi in enumerate(q):
                if qi == 0:
                    continue
                for j, tj in enumerate(t_cur):
                    prod[i + j] += qi * tj
            t_next = [Fraction(0)] * max(len(t_prev), len(prod))
            for i, c in enumerate(t_prev):
                t_next[i] += c
            for i, c in enumerate(prod):
                t_next[i] -= c
            while len(t_next) > 1 and t_next[-1] == 0:
                t_next.pop()
            r0, r1 = r1, r
            t_prev, t_cur = t_cur, t_next
        # r0 is now the (constant) gcd; t_prev satisfies t_prev * a = r0 mod Phi
        g = r0[0]
        phi = euler_phi(self.N)
        inv = [c / g for c in t_prev] + [Fraction(0)] * (phi - len(t_prev))
        return CycNum(self.N, tuple(inv[:phi]))

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.N)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __repr__(self):
        return f"CycNum({self.N}, {self.as_string()!r})"

    def __str__(self):
        return self.as_string()

    def as_string(self):
        """Polynomial literal in the symbol z, e.g. ``-z^4+1`` or ``1/2*z``."""
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            mono = "z" if k == 1 else f"z^{k}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


def make_root(N, k):
    """zeta_N^k as a reduced CycNum; make_root(N, 0) is 1."""
    if N < 1:
        raise ValueError("N must be >= 1")
    k %= N
    phi = euler_phi(N)
    if k < phi:
        coeffs = [Fraction(0)] * phi
        coeffs[k] = Fraction(1)
        return CycNum(N, tuple(coeffs))
    z = CycNum(N, (Fraction(0), Fraction(1)) + (Fraction(0),) * (phi - 2)) if phi > 1 else CycNum.one(N)
    return z ** k


def multiplicative_order(a):
    """Order of a root of unity a in Q(zeta_N); raises if a is not one."""
    one = CycNum.one(a.N)
    p = a
    for k in range(1, 2 * a.N + 1):
        if p == one:
            return k
        p = p * a
    raise ValueError("element is not a root of unity of order <= 2N")


class Scalar:
    """Polynomial in the parameters c_1..c_n with CycNum coefficients.

    Stored as a map from exponent vectors (tuples of naturals of length n)
    to nonzero CycNum values; the empty map is zero.
    """

    __slots__ = ("N", "n", "terms")

    def __init__(self, N, n, terms=None):
        self.N = N
        self.n = n
        self.terms = {}
        if terms:
            for exp, coef in terms.items():
                if not coef.is_zero():
                    self.terms[tuple(exp)] = coef

    @classmethod
    def zero(cls, N, n):
        return cls(N, n)

    @classmethod
    def one(cls, N, n):
        return cls.from_cyc(N, n, CycNum.one(N))

    @classmethod
    def from_cyc(cls, N, n, value):
        return cls(N, n, {(0,) * n: value})

    @classmethod
    def from_rational(cls, N, n, value):
        return cls.from_cyc(N, n, CycNum.from_rational(N, value))

    @classmethod
    def c_var(cls, N, n, i):
        """The parameter c_i (0-based index i)."""
        exp = [0] * n
        exp[i] = 1
        return cls(N, n, {tuple(exp): CycNum.one(N)})

    def _check(self, other):
        if self.N != other.N or self.n != other.n:
            raise ValueError("scalar context mismatch (N or parameter count)")

    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * self.n, CycNum.zero(self.N))

    def is_constant(self):
        return not self.terms or (len(self.terms) == 1 and (0,) * self.n in self.terms)

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.N == other.N and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.N, self.n, frozenset(self.terms.items())))

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for exp, coef in other.terms.items():
            s = out.get(exp)
            s = coef if s is None else s + coef
            if s.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = s
        res = Scalar(self.N, self.n)
        res.terms = out
        return res

    def __neg__(self):
        res = Scalar(self.N, self.n)
        res.terms = {exp: -coef for exp, coef in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CycNum):
            if other.is_zero():
                return Scalar.zero(self.N, self.n)
            res = Scalar(self.N, self.n)
            res.terms = {exp: coef * other for exp, coef in self.terms.items()}
            return res
        if isinstance(other, (int, Fraction)):
            return self * CycNum.from_rational(self.N, other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(exp)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(exp, None)
                else:
                    out[exp] = s
        res = Scalar(self.N, self.n)
        res.terms = out
        return res

    __rmul__ = __mul__

    def substitute(self, values):
        """Evaluate at numeric parameters c_i = values[i] (CycNum), exactly."""
        if len(values) != self.n:
            raise ValueError("wrong number of parameter values")
        total = CycNum.zero(self.N)
        for exp, coef in self.terms.items():
            term = coef
            for i, e in enumerate(exp):
                for _ in range(e):
                    term = term * values[i]
            total = total + term
        return total

    def __repr__(self):
        return f"Scalar({self.as_string()!r})"

    def as_string(self):
        if not self.terms:
            return "0"
        def key(exp):
            return (sum(exp), exp)
        parts = []
        for exp in sorted(self.terms, key=key):
            coef = self.terms[exp]
            mono = "*".join(
                f"c{i+1}" if e == 1 else f"c{i+1}^{e}"
                for i, e in enumerate(exp) if e > 0
            )
            cs = coef.as_string()
            if not mono:
                parts.append(f"({cs})")
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)


def scalar_arith(a, b, op):
    """Ring operation on Scalars: op is 'add' or 'mul'."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def cyc_inverse(a):
    """Inverse of a nonzero CycNum; a * cyc_inverse(a) == 1 exactly."""
    return a.inverse()
