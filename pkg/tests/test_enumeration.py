import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from conftest import integer_bases, pd_forms, rationals
from latticebhw import linalg as la
from latticebhw.core import Ball, InnerProductSpace, Lattice
from latticebhw.enumeration import (
    INFINITE,
    closest_vectors,
    count_ball,
    enumerate_ball,
    ldlt,
    oracle_count,
    short_vectors,
    successive_minima,
)
from latticebhw.errors import CapacityError, InvalidInputError

I2, I3 = la.identity(2), la.identity(3)
HEX = ((2, 1), (1, 2))
E2 = InnerProductSpace.euclidean(2)


def test_ldlt_examples():
    dec = ldlt(I2)
    assert dec.D == (1, 1) and dec.L == I2
    assert ldlt(((1, 0), (0, 4))).D == (1, 4)
    dec = ldlt(HEX)
    assert dec.D == (2, F(3, 2))
    assert dec.L[1][0] == F(1, 2)
    assert dec.reconstruct() == HEX


@given(pd_forms(dims=(1, 2, 3, 4)))
def test_ldlt_reconstructs(G):
    dec = ldlt(G)
    assert all(x > 0 for x in dec.D)
    assert dec.reconstruct() == la.matrix(G)


def test_ldlt_rejects_non_pd():
    with pytest.raises(InvalidInputError):
        ldlt(((1, 1), (1, 1)))


def test_enumerate_examples():
    assert len(enumerate_ball(I2, (0, 0), 4)) == 13
    assert enumerate_ball(HEX, (0, 0), 0) == [(0, 0)]
    half = F(1, 2)
    assert enumerate_ball(I2, (half, half), half) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert enumerate_ball(I2, (0, 0), -1) == []


def test_enumerate_thirteen_points_listed():
    assert enumerate_ball(I2, (0, 0), 4) == oracles.points(I2, (0, 0), 4)


def test_count_ball_examples():
    Z2 = Lattice.standard(2)
    assert count_ball(Z2, Ball(E2, (0, 0), 1)) == 5
    assert count_ball(Z2, Ball(E2, (0, 0), 4)) == 13
    assert count_ball(Z2, Ball(E2, (3, -1), 0)) == 1
    assert count_ball(Z2, Ball(E2, (F(1, 3), 0), 0)) == 0


def test_count_ball_sublattice():
    L = Lattice(((2, 1), (0, 1)))
    # ambient points of 2Z x Z ... sheared: columns (2,0),(1,1)
    ball = Ball(E2, (0, 0), 4)
    pts = [(x, y) for x in range(-3, 4) for y in range(-3, 4) if x * x + y * y <= 4 and L.contains_point((x, y))]
    assert count_ball(L, ball) == len(pts)


@given(pd_forms(dims=(1, 2, 3)), st.data())
def test_oracle_equivalence(G, data):
    d = len(G)
    t = tuple(data.draw(rationals(3, 4)) for _ in range(d))
    R_sq = data.draw(st.builds(F, st.integers(-1, 12), st.integers(1, 3)))
    got = enumerate_ball(G, t, R_sq)
    assert got == oracles.points(G, t, R_sq)
    assert oracle_count(G, t, R_sq) == len(got)


def test_oracle_count_examples():
    assert oracle_count(I2, (0, 0), 4) == 13
    assert oracle_count(HEX, (0, 0), -3) == 0
    assert oracle_count(I3, (0, 0, 0), 1) == 7


def test_oracle_capacity():
    with pytest.raises(CapacityError):
        oracle_count(I3, (0, 0, 0), 10**6, capacity=1000)


def test_cvp_examples():
    assert closest_vectors(I2, (F(2, 5), F(3, 5))) == (F(8, 25), [(0, 1)])
    assert closest_vectors(I2, (3, -4)) == (0, [(3, -4)])
    dist, mins = closest_vectors(((1,),), (F(1, 2),))
    assert dist == F(1, 4) and mins == [(0,), (1,)]
    assert mins[0] == (0,)


@given(pd_forms(dims=(1, 2, 3)), st.data())
def test_cvp_matches_oracle_and_is_symmetric(G, data):
    t = tuple(data.draw(rationals(4, 5)) for _ in range(len(G)))
    dist, mins = closest_vectors(G, t)
    assert (dist, mins) == oracles.cvp(G, t)
    assert closest_vectors(G, tuple(-x for x in t))[0] == dist


def test_short_vectors_hex():
    vs = short_vectors(HEX, 2)
    assert sorted(vs) == [z for z in oracles.points(HEX, (0, 0), 2) if any(z)]
    assert len(vs) == 6


def test_minima_examples():
    p = successive_minima(I2)
    assert p.lambda_sq == (1, 1)
    assert p.witnesses == ((1, 0), (0, 1))
    assert successive_minima(((1, 0), (0, 4))).lambda_sq == (1, 4)
    assert successive_minima(HEX).lambda_sq == (2, 2)


def test_minima_hex_oracle_box():
    # no nonzero vector of norm^2 < 2 inside |z_i| <= 3, two independent of norm^2 2
    box = [(a, b) for a in range(-3, 4) for b in range(-3, 4) if (a, b) != (0, 0)]
    assert min(oracles.qf(HEX, z) for z in box) == 2
    assert oracles.rank([z for z in box if oracles.qf(HEX, z) == 2]) == 2


def _check_minima(G):
    p = successive_minima(G)
    assert list(p.lambda_sq) == oracles.minima(G)
    assert oracles.rank(p.witnesses) == len(G)
    for lam, w in zip(p.lambda_sq, p.witnesses):
        assert oracles.qf(G, w) == lam
    assert list(p.lambda_sq) == sorted(p.lambda_sq)


@given(pd_forms(dims=(1, 2, 3)))
def test_minima_match_oracle(G):
    _check_minima(G)


@settings(max_examples=25)
@given(pd_forms(dims=(4,), bound=1))
def test_minima_match_oracle_dim4(G):
    _check_minima(G)


@given(pd_forms(dims=(2, 3)))
def test_witness_minimality(G):
    p = successive_minima(G)
    for i, lam in enumerate(p.lambda_sq):
        below = [z for z in oracles.points(G, [0] * len(G), lam) if any(z) and oracles.qf(G, z) < lam]
        assert oracles.rank(below) <= i


@given(integer_bases(2), pd_forms(dims=(2,)), st.data())
def test_count_translation_invariance(B, Q, data):
    L = Lattice(B)
    S = InnerProductSpace(Q)
    c = tuple(data.draw(rationals(3, 3)) for _ in range(2))
    z = tuple(data.draw(st.integers(-4, 4)) for _ in range(2))
    r = data.draw(st.builds(F, st.integers(0, 10), st.integers(1, 2)))
    shifted = la.add(c, L.to_ambient(z))
    assert count_ball(L, Ball(S, c, r)) == count_ball(L, Ball(S, shifted, r))


def test_infinite_constant():
    assert INFINITE == math.inf
