import pytest

from qspairs.bichar import wt_zero
from qspairs.coideal import Bosonization
from qspairs.contexts import rank1, sl3
from qspairs.double import DoubleAlgebra
from qspairs.kmatrix import KMatrix
from qspairs.nichols import get_reducer
from qspairs.scalars import CycNum, Scalar, make_root
from qspairs.tensorops import Tensor


def engine(ctx, c_values, bound):
    d = DoubleAlgebra(ctx, get_reducer(ctx, "nichols_max"))
    c = tuple(Scalar.from_cyc(ctx.N, ctx.n, v) for v in c_values)
    return KMatrix(Bosonization(d, c), bound=bound)


@pytest.fixture(scope="module")
def km_rank1():
    return engine(rank1(N=5, D=4), (make_root(5, 1),), 3)


@pytest.fixture(scope="module")
def km_sl3():
    return engine(sl3(N=5, D=4), (make_root(5, 1), make_root(5, 1)), 3)


def test_parameter_condition(km_rank1, km_sl3):
    # the power relations sit outside the even tau-symmetric cone, so any
    # parameters are admissible in both shipped contexts
    assert km_rank1.parameter_condition_ok()
    assert km_sl3.parameter_condition_ok()


def test_quasi_k_low_degrees(km_sl3):
    qk = km_sl3.quasi_k()
    d = km_sl3.dalg
    bos = km_sl3.bos
    zero = wt_zero(2)
    unit_key = ((), zero, ())
    one = Scalar.one(5, 2)
    # degree 0 component is 1 (x) 1
    assert qk.terms[(unit_key, unit_key)] == one
    # degree alpha_i component is -B_i (x) E_i
    for i in range(2):
        b = bos.b_generator(i).scaled(-1)
        for key, s in b.terms.items():
            assert qk.terms[(key, ((i,), zero, ()))] == s


def test_psi_recovers_theta(km_rank1, km_sl3):
    assert km_rank1.psi_recovers_theta()
    assert km_sl3.psi_recovers_theta()


def test_intertwiner(km_rank1, km_sl3):
    assert km_rank1.check_intertwiner() == []
    assert km_sl3.check_intertwiner() == []


def test_intertwiner_detects_perturbation(km_sl3):
    # uniqueness content: damaging one Theta^theta coefficient must break
    # the intertwiner relations
    qk = km_sl3.quasi_k()
    broken = Tensor(qk.algs, dict(qk.terms))
    key = next(k for k in broken.terms
               if k[1][0] and len(k[1][0]) == 1)
    broken.terms[key] = broken.terms[key] * CycNum.from_rational(5, 2)
    cache_key = ("quasi_k", id(km_sl3.bos), km_sl3.bound)
    saved = km_sl3.ctx._cache[cache_key]
    km_sl3.ctx._cache[cache_key] = broken
    try:
        assert km_sl3.check_intertwiner() != []
    finally:
        km_sl3.ctx._cache[cache_key] = saved


def test_coproduct_identities(km_rank1, km_sl3):
    assert km_rank1.check_coproduct_identities() == []
    assert km_sl3.check_coproduct_identities() == []


def test_R0_and_K0tau_on_generators(km_sl3):
    d = km_sl3.dalg
    # R0(E_i (x) 1) = E_i (x) K_i^{-1}
    t = Tensor.from_elements((d, d), [d.E(0), d.one()])
    got = km_sl3.apply_R0(t, 0, 1)
    expect = Tensor.from_elements((d, d), [d.E(0), d.K((-1, 0))])
    assert got == expect
    # R0 fixes H (x) H
    t = Tensor.from_elements((d, d), [d.K((2, -1)), d.K((0, 3))])
    assert km_sl3.apply_R0(t, 0, 1) == t
    # K0tau fixes H (x) H and twists E_i (x) 1 by K_i^{-1} K_tau(i)
    assert km_sl3.apply_K0tau(t, 0, 1) == t
    t = Tensor.from_elements((d, d), [d.E(0), d.one()])
    got = km_sl3.apply_K0tau(t, 0, 1)
    expect = Tensor.from_elements((d, d), [d.E(0), d.K((-1, 1))])
    assert got == expect
    # K0tau leaves B_i (x) 1 with a K_i K_tau(i)^{-1} tail
    b = km_sl3.bos.b_generator(0)
    t = Tensor.from_elements((d, d), [b, d.one()])
    got = km_sl3.apply_K0tau(t, 0, 1)
    expect = Tensor.from_elements((d, d), [b, d.K((1, -1))])
    assert got == expect


def test_R0_multiplicative(km_sl3):
    d = km_sl3.dalg
    a = Tensor.from_elements((d, d), [d.E(0), d.F(1)])
    b = Tensor.from_elements((d, d), [d.F(0), d.E(1)])
    lhs = km_sl3.apply_R0(a.mul(b), 0, 1)
    rhs = km_sl3.apply_R0(a, 0, 1).mul(km_sl3.apply_R0(b, 0, 1))
    assert lhs == rhs


def test_sigma_coproduct(km_sl3):
    assert km_sl3.check_sigma_coproduct() == []


def test_condition_violation_reported():
    from qspairs.contexts import rank2_orthogonal
    ctx = rank2_orthogonal(N=5, D=4)
    km = engine(ctx, (make_root(5, 1), make_root(5, 2)), 3)
    # c_1 != c_2 violates the constraint of the commutator relation
    assert not km.parameter_condition_ok()
    with pytest.raises(ValueError):
        km.quasi_k()
    km_good = engine(ctx, (make_root(5, 1), make_root(5, 1)), 3)
    assert km_good.parameter_condition_ok()
