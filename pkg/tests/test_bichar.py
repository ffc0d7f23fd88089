import random

import pytest

from qspairs.bichar import BicharContext, unit, wt_add, wt_neg
from qspairs.scalars import CycNum, make_root


def a2_context(N=5, D=4):
    z = make_root(N, 1)
    q = [[z * z, z ** (N - 1)], [z ** (N - 1), z * z]]
    return BicharContext(2, N, q, (1, 0), D)


def test_chi_on_generators():
    ctx = a2_context()
    z = make_root(5, 1)
    a1, a2 = unit(2, 0), unit(2, 1)
    assert ctx.chi(a1, a2) == z ** (-1)
    assert ctx.chi((0, 0), (3, -2)) == CycNum.one(5)
    # chi(a1+a2, a1+a2) = z^2 z^-1 z^-1 z^2 = z^2, direct product oracle
    lam = wt_add(a1, a2)
    prod = CycNum.one(5)
    for i in range(2):
        for j in range(2):
            prod = prod * ctx.q[i][j] ** (lam[i] * lam[j])
    assert ctx.chi(lam, lam) == prod == z * z


def test_chi_biadditive_random():
    ctx = a2_context()
    rng = random.Random(3)
    for _ in range(30):
        lam = (rng.randint(-3, 3), rng.randint(-3, 3))
        lam2 = (rng.randint(-3, 3), rng.randint(-3, 3))
        mu = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert ctx.chi(wt_add(lam, lam2), mu) == ctx.chi(lam, mu) * ctx.chi(lam2, mu)
        assert ctx.chi(mu, wt_add(lam, lam2)) == ctx.chi(mu, lam) * ctx.chi(mu, lam2)


def test_theta_and_lattice():
    ctx = a2_context()
    assert ctx.theta(unit(2, 0)) == (0, -1)
    assert ctx.theta((0, 0)) == (0, 0)
    assert ctx.theta(ctx.theta((2, -1))) == (2, -1)
    assert ctx.in_lattice_theta((1, -1))
    assert not ctx.in_lattice_theta((1, 0))
    assert ctx.in_lattice_theta((0, 0))
    # tau = id forces Z^n_theta = 0
    z = make_root(5, 1)
    ctx_id = BicharContext(1, 5, [[z]], (0,), 4)
    assert ctx_id.theta((3,)) == (-3,)
    assert not ctx_id.in_lattice_theta((1,))


def test_chi_trivial_on_theta_pairs():
    # chi(lam, mu + tau(mu)) = 1 whenever lam is theta-fixed
    ctx = a2_context()
    rng = random.Random(5)
    for _ in range(20):
        k = rng.randint(-3, 3)
        lam = (k, -k)
        mu = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert ctx.chi(lam, wt_add(mu, ctx.tau_wt(mu))) == CycNum.one(5)


def test_poly_cone_membership():
    ctx = a2_context()
    assert ctx.in_poly_cone((-1, 0))
    assert ctx.in_poly_cone((1, -1))
    assert ctx.in_poly_cone((-2, 0))
    assert not ctx.in_poly_cone((1, 0))
    ctx_id = BicharContext(1, 5, [[make_root(5, 1)]], (0,), 4)
    assert ctx_id.in_poly_cone((-2,))
    assert ctx_id.in_poly_cone((-1,))
    assert not ctx_id.in_poly_cone((2,))


def test_validate_rejects_bad_contexts():
    z = make_root(5, 1)
    good = [[z, z], [z, z]]
    with pytest.raises(ValueError):
        BicharContext(2, 5, [[z, z], [z * z, z]], (0, 1))  # not symmetric
    with pytest.raises(ValueError):
        BicharContext(2, 5, good, (1, 1))  # not a permutation
    with pytest.raises(ValueError):
        BicharContext(2, 5, [[z, CycNum.zero(5)], [CycNum.zero(5), z]], (0, 1))
    with pytest.raises(ValueError):
        # tau does not preserve q
        BicharContext(2, 5, [[z, z], [z, z * z]], (1, 0))


def test_theta_lattice_basis():
    ctx = a2_context()
    assert ctx.theta_lattice_basis() == [(1, -1)]
    assert ctx.theta_coordinates((3, -3)) == (3,)
    with pytest.raises(ValueError):
        ctx.theta_coordinates((1, 0))
