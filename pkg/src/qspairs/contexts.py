"""Ready-made bicharacter contexts and presentations for the worked examples.

These cover the four example families exercised by the verification suite:
quantized sl3 (generic and small root of unity), the rank-2 orthogonal case
with q_12 = 1, the sl(2|1) quantum supergroup, and the rank-2 diagram of
ufo(8) type at a 12th root of unity.
"""

from __future__ import annotations

from .bichar import BicharContext
from .freealg import FreeElement
from .scalars import CycNum, make_root


def serre_polynomial(ctx, i, j, a_ij, d_i):
    """Quantum Serre polynomial p_ij in letters i, j for Cartan data (a_ij, d_i).

    p_ij(x, y) = sum_k (-1)^k zeta^(-d_i k (1 - a_ij - k)) qbinom(1-a_ij, k)
                 x^(1-a_ij-k) y x^k  with the zeta^(2 d_i)-binomial.
    """
    zeta = make_root(ctx.N, ctx._zeta_exponent)
    q = zeta ** (2 * d_i)
    m = 1 - a_ij
    terms = {}
    for k in range(m + 1):
        word = (i,) * (m - k) + (j,) + (i,) * k
        coef = qbinom(m, k, q) * zeta ** (-d_i * k * (m - k))
        if k % 2:
            coef = -coef
        terms[word] = coef
    return FreeElement.from_words(ctx, terms)


def qnumber(n, q):
    """[n]_q = 1 + q + ... + q^(n-1)."""
    out = CycNum.zero(q.N)
    p = CycNum.one(q.N)
    for _ in range(n):
        out = out + p
        p = p * q
    return out


def qfactorial(n, q):
    out = CycNum.one(q.N)
    for k in range(1, n + 1):
        out = out * qnumber(k, q)
    return out


def qbinom(n, k, q):
    """Gaussian binomial via the q-Pascal rule; well-defined at roots of unity."""
    one = CycNum.one(q.N)
    row = [one]
    for m in range(1, n + 1):
        new = [one]
        for j in range(1, m):
            new.append(row[j - 1] + q ** j * row[j])
        new.append(one)
        row = new
    return row[k]


def sl3(N=5, D=4):
    """A2 Cartan data at a primitive N-th root of unity, diagram flip."""
    z = make_root(N, 1)
    q = [[z * z, z ** (N - 1)], [z ** (N - 1), z * z]]
    ctx = BicharContext(2, N, q, (1, 0), D)
    ctx._zeta_exponent = 1
    return ctx


def sl3_serre_relations(ctx):
    return [serre_polynomial(ctx, 0, 1, -1, 1), serre_polynomial(ctx, 1, 0, -1, 1)]


def rank2_orthogonal(N=5, D=4):
    """a_12 = 0 with the diagram flip; the constraint surface is c_2 = c_1."""
    z = make_root(N, 1)
    one = CycNum.one(N)
    q = [[z * z, one], [one, z * z]]
    ctx = BicharContext(2, N, q, (1, 0), D)
    ctx._zeta_exponent = 1
    return ctx


def rank2_orthogonal_relations(ctx):
    # a_12 = 0: the Serre polynomial degenerates to the plain commutator
    return [serre_polynomial(ctx, 0, 1, 0, 1), serre_polynomial(ctx, 1, 0, 0, 1)]


def small_sl3(N, D=4):
    """A2 data q_ii = zeta^2, q_12 = zeta^(-1) at a primitive N-th root."""
    z = make_root(N, 1)
    q = [[z * z, z ** (N - 1)], [z ** (N - 1), z * z]]
    ctx = BicharContext(2, N, q, (1, 0), D)
    ctx._zeta_exponent = 1
    return ctx


def braided_commutator_power(ctx, M):
    """(x1 x2 - q_12 x2 x1)^M as a FreeElement."""
    x12 = FreeElement.from_words(ctx, {
        (0, 1): CycNum.one(ctx.N),
        (1, 0): -ctx.q[0][1],
    })
    out = FreeElement.unit(ctx)
    for _ in range(M):
        out = out * x12
    return out


def super_sl21(N=5, D=4):
    """sl(2|1) data: vertex 2 odd isotropic (q_22 = -1), tau = id."""
    z = make_root(N, 1)
    q = [[z * z, z ** (N - 1)], [z ** (N - 1), CycNum.from_rational(N, -1)]]
    ctx = BicharContext(2, N, q, (0, 1), D)
    ctx._zeta_exponent = 1
    return ctx


def super_sl21_odd_relation(ctx):
    """The isotropic generator squares to zero."""
    return FreeElement.from_words(ctx, {(1, 1): CycNum.one(ctx.N)})


def ufo8(D=4):
    """The rank-2 non-Cartan diagram at a primitive 12th root of unity.

    N = 24 hosts both zeta (= zeta_24^2) and its square root zeta_24.
    """
    N = 24
    zeta = make_root(N, 2)
    half = make_root(N, 1)
    minus = CycNum.from_rational(N, -1)
    q11 = minus * zeta * zeta
    q = [[q11, half], [half, q11]]
    ctx = BicharContext(2, N, q, (1, 0), D)
    ctx._zeta_exponent = 2
    return ctx


def ufo8_relations(ctx):
    """Cube relations and the degree (2,2) relation of the distinguished quotient.

    The long relation, expanded in the free algebra, reads
    (x1^2 x2^2 + x2^2 x1^2) + a (x1 x2 x1 x2 + x2 x1 x2 x1)
                            + b (x1 x2^2 x1 + x2 x1^2 x2)
    with a = (1 + zeta^-1) zeta^(1/2) and b = -(1 + zeta^-1 + zeta^-2) zeta.
    """
    N = ctx.N
    one = CycNum.one(N)
    zeta = make_root(N, 2)
    half = make_root(N, 1)
    a = (one + zeta.inverse()) * half
    b = -(one + zeta.inverse() + (zeta * zeta).inverse()) * zeta
    cubes = [
        FreeElement.from_words(ctx, {(0, 0, 0): one}),
        FreeElement.from_words(ctx, {(1, 1, 1): one}),
    ]
    long_rel = FreeElement.from_words(ctx, {
        (0, 0, 1, 1): one, (1, 1, 0, 0): one,
        (0, 1, 0, 1): a, (1, 0, 1, 0): a,
        (0, 1, 1, 0): b, (1, 0, 0, 1): b,
    })
    return cubes + [long_rel]


def rank1(N=5, D=3):
    """One letter with q_11 = zeta_N, tau = id."""
    ctx = BicharContext(1, N, [[make_root(N, 1)]], (0,), D)
    ctx._zeta_exponent = 1
    return ctx
