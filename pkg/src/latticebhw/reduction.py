"""Exact LLL, integer Hermite normal forms and flag bases adapted to minima witnesses."""

from dataclasses import dataclass
from fractions import Fraction
from math import floor

from . import linalg as la
from .core import Ball, FlagBasis, InnerProductSpace
from .errors import InvalidInputError

LLL_DELTA = Fraction(3, 4)


@dataclass(frozen=True)
class UnimodularTransform:
    U: tuple

    def __post_init__(self):
        U = la.as_int_matrix(self.U)
        if abs(la.det(U)) != 1:
            raise InvalidInputError("transform is not unimodular")
        object.__setattr__(self, "U", U)

    @property
    def dim(self):
        return len(self.U)

    def apply(self, z):
        return tuple(sum(a * b for a, b in zip(row, z)) for row in self.U)

    def inverse(self):
        return UnimodularTransform(la.as_int_matrix(la.inverse(self.U)))


def _gso(G):
    """Gram–Schmidt data from a Gram matrix: (mu, squared GS norms)."""
    d = len(G)
    mu = [[Fraction(0)] * d for _ in range(d)]
    B = [Fraction(0)] * d
    for i in range(d):
        for j in range(i):
            s = G[i][j] - sum(mu[j][k] * mu[i][k] * B[k] for k in range(j))
            mu[i][j] = s / B[j]
        B[i] = G[i][i] - sum(mu[i][k] ** 2 * B[k] for k in range(i))
        mu[i][i] = Fraction(1)
    return mu, B


def _col_addmul(G, U, k, j, r):
    """Basis column op ``b_k ← b_k − r·b_j`` applied to G (both sides) and U."""
    d = len(G)
    G[k] = [a - r * b for a, b in zip(G[k], G[j])]
    for i in range(d):
        G[i][k] -= r * G[i][j]
    for row in U:
        row[k] -= r * row[j]


def _swap(G, U, k, j):
    G[k], G[j] = G[j], G[k]
    for row in G:
        row[k], row[j] = row[j], row[k]
    for row in U:
        row[k], row[j] = row[j], row[k]


def lll_reduce(G, delta=LLL_DELTA):
    """LLL-reduce a Gram matrix in exact arithmetic.

    Returns ``(U, G')`` with ``G' = UᵀGU`` size-reduced (``|μᵢⱼ| ≤ 1/2``) and
    satisfying the Lovász condition for ``delta``.
    """
    G0 = la.matrix(G, "gram")
    if not la.is_positive_definite(G0):
        raise InvalidInputError("Gram matrix is not positive definite", "gram")
    d = len(G0)
    G = [list(row) for row in G0]
    U = [[int(i == j) for j in range(d)] for i in range(d)]
    k = 1
    while k < d:
        for j in range(k - 1, -1, -1):
            mu, _ = _gso(G)
            r = floor(mu[k][j] + Fraction(1, 2))
            if r:
                _col_addmul(G, U, k, j, r)
        mu, B = _gso(G)
        if B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1]:
            k += 1
        else:
            _swap(G, U, k, k - 1)
            k = max(k - 1, 1)
    return UnimodularTransform(U), tuple(tuple(row) for row in G)


def is_lll_reduced(G, delta=LLL_DELTA):
    mu, B = _gso([list(row) for row in G])
    d = len(G)
    size = all(abs(mu[i][j]) <= Fraction(1, 2) for i in range(d) for j in range(i))
    lovasz = all(B[k] >= (delta - mu[k][k - 1] ** 2) * B[k - 1] for k in range(1, d))
    return size and lovasz


def _xgcd(a, b):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def row_hnf(A):
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(W, T, pivots)`` with ``W`` unimodular and ``W·A = T`` in row
    echelon form, pivots positive and entries above each pivot reduced into
    ``[0, pivot)``.
    """
    T = [list(row) for row in la.as_int_matrix(A)]
    m = len(T)
    n = len(T[0]) if m else 0
    W = [[int(i == j) for j in range(m)] for i in range(m)]
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        for i in range(r + 1, m):
            a, b = T[r][c], T[i][c]
            if b == 0:
                continue
            g, x, y = _xgcd(a, b)
            p, q = a // g, b // g
            # det [[x, y], [-q, p]] = (xa + yb)/g = 1
            T[r], T[i] = ([x * u + y * v for u, v in zip(T[r], T[i])],
                          [-q * u + p * v for u, v in zip(T[r], T[i])])
            W[r], W[i] = ([x * u + y * v for u, v in zip(W[r], W[i])],
                          [-q * u + p * v for u, v in zip(W[r], W[i])])
        if T[r][c] == 0:
            continue
        if T[r][c] < 0:
            T[r] = [-v for v in T[r]]
            W[r] = [-v for v in W[r]]
        piv = T[r][c]
        for i in range(r):
            f = T[i][c] // piv
            if f:
                T[i] = [u - f * v for u, v in zip(T[i], T[r])]
                W[i] = [u - f * v for u, v in zip(W[i], W[r])]
        pivots.append(c)
        r += 1
    return tuple(map(tuple, W)), tuple(map(tuple, T)), tuple(pivots)


def hnf(A):
    """Column-style HNF of a full-column-rank integer matrix.

    Returns ``(H, V)`` with ``A·V = H`` lower triangular (echelon by columns),
    positive pivots and the other entries of each pivot row reduced modulo
    the pivot.
    """
    A = la.as_int_matrix(A)
    k = len(A[0])
    W, T, pivots = row_hnf(la.transpose(A))
    if len(pivots) != k:
        raise InvalidInputError("matrix does not have full column rank")
    return la.as_int_matrix(la.transpose(T)), UnimodularTransform(la.transpose(W))


def extend_to_flag_basis(lattice, witnesses):
    """Basis ``e`` of Λ with ``lin(a¹..aⁱ) = lin(e¹..eⁱ)`` for every prefix.

    Integer row reduction ``W·A = T`` of the witness columns puts ``T`` in
    upper echelon form with pivots on the diagonal, so each ``aⁱ`` is a
    combination of the first i columns of ``W⁻¹``. Taking ``e = W⁻¹`` from the
    canonical (HNF) reduction makes the completion deterministic.
    """
    witnesses = tuple(la.as_int_vector(a) for a in witnesses)
    d = lattice.dim
    if not witnesses or len(witnesses) > d or any(len(a) != d for a in witnesses):
        raise InvalidInputError(f"expected between 1 and {d} witnesses of length {d}", "witnesses")
    A = la.from_columns(witnesses)
    W, T, pivots = row_hnf(A)
    if pivots != tuple(range(len(witnesses))):
        raise InvalidInputError("witnesses are linearly dependent", "witnesses")
    E = la.as_int_matrix(la.inverse(W))
    e = tuple(tuple(row[j] for row in E) for j in range(d))
    return FlagBasis(lattice, e, witnesses)


def ellipsoid_to_ball_form(center, form, level=1):
    """Represent ``{x : (x−c)ᵀQ(x−c) ≤ level}`` as a ball of the inner product Q.

    No coordinate change happens; the form itself becomes the geometry.
    """
    space = InnerProductSpace(form)
    return space, Ball(space, center, level)
