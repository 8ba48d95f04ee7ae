from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from conftest import integer_bases, pd_forms
from latticebhw import linalg as la
from latticebhw.core import InnerProductSpace, Lattice, gram
from latticebhw.enumeration import count_ball
from latticebhw.errors import InvalidInputError
from latticebhw.reduction import (
    UnimodularTransform,
    ellipsoid_to_ball_form,
    extend_to_flag_basis,
    hnf,
    is_lll_reduced,
    lll_reduce,
    row_hnf,
)


def test_lll_identity_unchanged():
    U, G = lll_reduce(la.identity(2))
    assert U.U == la.identity(2)
    assert G == la.identity(2)


def test_lll_long_skew_basis():
    B = ((1, 100), (0, 1))
    G = gram(Lattice(B), InnerProductSpace.euclidean(2))
    U, Gr = lll_reduce(G)
    sv = min(oracles.qf(G, z) for z in oracles.points(G, (0, 0), 1) if any(z))
    assert Gr[0][0] == sv == 1
    assert la.matmul(la.matmul(la.transpose(U.U), G), U.U) == Gr


def test_lll_swaps_sorted_diagonal():
    _, G = lll_reduce(((4, 0), (0, 1)))
    assert G[0][0] == 1


def test_lll_rejects_indefinite():
    with pytest.raises(InvalidInputError):
        lll_reduce(((1, 2), (2, 1)))


@given(pd_forms(dims=(2, 3, 4)))
def test_lll_preserves_determinant(G):
    U, Gr = lll_reduce(G)
    assert la.det(Gr) == la.det(G)
    assert abs(la.det(U.U)) == 1
    assert is_lll_reduced(Gr)


def test_unimodular_transform_checks_det():
    with pytest.raises(InvalidInputError):
        UnimodularTransform(((2, 0), (0, 1)))
    V = UnimodularTransform(((1, 3), (0, 1)))
    assert la.matmul(V.U, V.inverse().U) == la.identity(2)


def test_hnf_examples():
    assert hnf(la.identity(2))[0] == la.identity(2)
    H, V = hnf(((2,), (4,)))
    assert H == ((2,), (4,))
    H, V = hnf(((2, 1), (0, 3)))
    assert abs(la.det(H)) == 6
    assert la.matmul(((2, 1), (0, 3)), V.U) == H
    assert H[0][1] == 0 and H[0][0] > 0 and H[1][1] > 0


def test_hnf_rank_deficient():
    with pytest.raises(InvalidInputError):
        hnf(((1, 2), (2, 4)))


@given(integer_bases(3, bound=5))
def test_hnf_shape(A):
    H, V = hnf(A)
    assert la.matmul(A, V.U) == H
    assert abs(la.det(H)) == abs(la.det(A))
    for i in range(3):
        assert H[i][i] > 0
        for j in range(i + 1, 3):
            assert H[i][j] == 0
        for j in range(i):
            assert 0 <= H[i][j] < H[i][i]


def test_row_hnf_reconstructs():
    A = ((2, 1), (1, 1), (3, 0))
    W, T, pivots = row_hnf(A)
    assert la.matmul(W, A) == T
    assert abs(la.det(W)) == 1
    assert pivots == (0, 1)


def _check_flag(flag, witnesses):
    d = len(flag.e)
    assert flag.is_unimodular()
    assert abs(la.det(flag.matrix)) == 1
    for i in range(1, len(witnesses) + 1):
        assert oracles.rank(list(witnesses[:i]) + list(flag.e[:i])) == i
    assert flag.prefix_spans_match()
    assert len(flag.e) == d


def test_flag_standard_basis():
    flag = extend_to_flag_basis(Lattice.standard(2), ((1, 0), (0, 1)))
    assert flag.e == ((1, 0), (0, 1))


def test_flag_saturates_first_witness():
    flag = extend_to_flag_basis(Lattice.standard(2), ((2, 0), (0, 1)))
    assert flag.e == ((1, 0), (0, 1))


def test_flag_non_orthogonal_witnesses():
    w = ((2, 1), (1, 1))
    flag = extend_to_flag_basis(Lattice.standard(2), w)
    _check_flag(flag, w)


def test_flag_dependent_witnesses():
    with pytest.raises(InvalidInputError):
        extend_to_flag_basis(Lattice.standard(2), ((1, 2), (2, 4)))


@given(st.sampled_from((2, 3, 4)).flatmap(lambda d: integer_bases(d, bound=4)))
def test_flag_invariants_random(A):
    d = len(A)
    witnesses = tuple(tuple(row[j] for row in A) for j in range(d))
    flag = extend_to_flag_basis(Lattice.standard(d), witnesses)
    _check_flag(flag, witnesses)
    assert extend_to_flag_basis(Lattice.standard(d), witnesses) == flag


def test_ellipsoid_to_ball_form_examples():
    space, ball = ellipsoid_to_ball_form((0, 0), la.identity(2))
    assert space.Q == la.identity(2) and ball.radius_sq == 1
    space, ball = ellipsoid_to_ball_form((0, 0), ((1, 0), (0, 4)))
    assert space.Q == ((1, 0), (0, 4))
    # (x-1)^2 + (x-1)y + y^2 <= 1
    space, ball = ellipsoid_to_ball_form((1, 0), ((1, F(1, 2)), (F(1, 2), 1)))
    for x, y in [(F(1, 3), F(1, 2)), (2, -1), (0, 0), (1, 1)]:
        direct = (x - 1) ** 2 + (x - 1) * y + y**2
        assert space.inner(la.sub((x, y), ball.center), la.sub((x, y), ball.center)) == direct


def test_ellipsoid_to_ball_form_rejects_indefinite():
    with pytest.raises(InvalidInputError):
        ellipsoid_to_ball_form((0, 0), ((0, 1), (1, 0)))


@given(pd_forms(dims=(2, 3), bound=2), st.lists(st.integers(-2, 2), min_size=3, max_size=3))
def test_ellipsoid_counts_match_ambient_brute_force(Q, c):
    d = len(Q)
    center = tuple(F(x, 2) for x in c[:d])
    space, ball = ellipsoid_to_ball_form(center, Q, level=3)
    expected = len(oracles.points(Q, center, 3))
    assert count_ball(Lattice.standard(d), ball) == expected
