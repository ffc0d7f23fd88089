import itertools

import pytest

from qspairs import linalg
from qspairs.contexts import (
    qbinom, qfactorial, qnumber, rank1, sl3, sl3_serre_relations,
    ufo8, ufo8_relations,
)
from qspairs.freealg import FreeElement, pairing_words
from qspairs.nichols import (
    degree_data, degrees_up_to, dual_basis_elements, get_reducer,
    normal_form_prenichols, theta_truncated, words_of_degree,
)
from qspairs.scalars import CycNum, make_root


def test_words_of_degree_order():
    ctx = sl3()
    assert words_of_degree(ctx, (1, 1)) == [(0, 1), (1, 0)]
    assert words_of_degree(ctx, (2, 1)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    assert words_of_degree(ctx, (0, 0)) == [()]
    assert words_of_degree(ctx, (-1, 0)) == []


def test_degree_data_a2_11():
    ctx = sl3()
    data = degree_data(ctx, (1, 1))
    assert len(data.all_words) == 2
    assert len(data.pivots) == 2
    assert not data.kernel_basis
    # Gram determinant oracle: 1 - q12 q21 != 0 for generic zeta
    g = data.gram
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    q12 = ctx.q[0][1]
    assert det == CycNum.one(5) - q12 * q12
    assert not det.is_zero()


def test_degree_data_a2_21_kernel_is_serre():
    ctx = sl3()
    data = degree_data(ctx, (2, 1))
    assert len(data.all_words) == 3
    assert len(data.pivots) == 2
    assert len(data.kernel_basis) == 1
    # brute-force oracle: the kernel vector, scaled to make the (0,0,1)
    # coefficient 1, is the quantum Serre polynomial
    vec = data.kernel_basis[0]
    scale = vec[(0, 0, 1)].inverse()
    normalized = {w: scale * c for w, c in vec.items()}
    p12 = sl3_serre_relations(ctx)[0]
    expected = {w: s.constant_term() for w, s in p12.terms.items()}
    assert normalized == expected


def test_degree_data_simple_root():
    ctx = sl3()
    data = degree_data(ctx, (1, 0))
    assert data.pivots == [(0,)]
    assert data.dual_change == [[CycNum.one(5)]]


def test_kernel_pairs_to_zero_all_degrees():
    ctx = sl3()
    for mu in degrees_up_to(ctx, ctx.D):
        data = degree_data(ctx, mu)
        for vec in data.kernel_basis:
            for ew in data.all_words:
                total = CycNum.zero(ctx.N)
                for fw, c in vec.items():
                    total = total + c * pairing_words(ctx, fw, ew)
                assert total.is_zero()


def test_dual_basis_property():
    ctx = sl3()
    for mu in [(1, 1), (2, 1), (2, 2)]:
        data = degree_data(ctx, mu)
        duals = dual_basis_elements(ctx, mu)
        for j, pj in enumerate(data.pivots):
            for k, (_, combo) in enumerate(duals):
                total = CycNum.zero(ctx.N)
                for ew, c in combo:
                    total = total + c * pairing_words(ctx, pj, ew)
                expected = CycNum.one(5) if j == k else CycNum.zero(5)
                assert total == expected


def test_theta_components():
    ctx = sl3()
    theta = theta_truncated(ctx)
    # degree 0 component is the unit
    assert theta[(0, 0)] == ([()], [[CycNum.one(5)]])
    # degree alpha_i has the single dual pair with sign -1
    assert theta[(1, 0)] == ([(0,)], [[CycNum.from_rational(5, -1)]])
    # at (1,1) the coefficient matrix is the inverse Gram (sign +1)
    data = degree_data(ctx, (1, 1))
    words, M = theta[(1, 1)]
    inv = linalg.invert(data.gram, CycNum.one(5), CycNum.zero(5))
    assert M == inv


def test_rank1_gram_is_qfactorial():
    ctx = rank1(N=5, D=3)
    z = make_root(5, 1)
    for m in range(1, 4):
        data = degree_data(ctx, (m,))
        assert data.gram == [[qfactorial(m, z)]]
        assert data.pivots == [(0,) * 0 + (0,) * m]


def test_presentation_reducer_sl3():
    ctx = sl3()
    red = get_reducer(ctx, "presentation", tuple(sl3_serre_relations(ctx)))
    # the relation itself reduces to zero
    p12 = sl3_serre_relations(ctx)[0]
    assert normal_form_prenichols(ctx, tuple(sl3_serre_relations(ctx)), p12).is_zero()
    # empty presentation leaves elements alone
    f = FreeElement.from_words(ctx, {(0, 1, 0): CycNum.one(5)})
    free = get_reducer(ctx, "free")
    assert free.reduce_word((0, 1, 0)) == [((0, 1, 0), CycNum.one(5))]


def test_presentation_vs_gram_dimensions_a2():
    # on A2 the Serre ideal is the whole radical up to D=5 provided the
    # diagonal braiding values have order > 5 (no power relations yet);
    # N=12 gives ord(q_11) = ord(chi_(11),(11)) = 6
    ctx = sl3(N=12, D=5)
    rels = tuple(sl3_serre_relations(ctx))
    groeb = get_reducer(ctx, "presentation", rels)
    gram = get_reducer(ctx, "nichols_max")
    for mu in degrees_up_to(ctx, 5):
        assert len(groeb.basis(mu)) == len(gram.basis(mu)), mu


def test_ufo8_presentation():
    ctx = ufo8(D=4)
    rels = tuple(ufo8_relations(ctx))
    red = get_reducer(ctx, "presentation", rels)
    one = CycNum.one(ctx.N)
    # x1^3 -> 0
    assert red.reduce_word((0, 0, 0)) == []
    assert red.reduce_word((1, 1, 1)) == []
    f = FreeElement.from_words(ctx, {(0, 0, 0): one})
    assert normal_form_prenichols(ctx, rels, f).is_zero()
    # x1^2 survives
    assert red.reduce_word((0, 0)) == [((0, 0), one)]


def test_nonhomogeneous_relation_rejected():
    ctx = sl3()
    bad = FreeElement.from_words(ctx, {(0, 0): CycNum.one(5), (0, 1, 0): CycNum.one(5)})
    with pytest.raises(ValueError):
        get_reducer(ctx, "presentation", (bad,))


def test_degree_bound_enforced():
    ctx = sl3(D=3)
    with pytest.raises(ValueError):
        degree_data(ctx, (2, 2))
