"""Exact Fincke–Pohst enumeration of lattice points in quadratic-form balls.

Everything works in lattice coefficient space: a Gram matrix ``G``, a
rational center ``t`` and a squared radius. Accept/reject decisions only use
rational comparisons; interval endpoints come from integer square roots.
"""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg as la
from .core import coefficient_ball
from .errors import CapacityError, InvalidInputError
from .reduction import lll_reduce

INFINITE = math.inf
ORACLE_CAPACITY = 10**7


@dataclass(frozen=True)
class LdltDecomposition:
    """``G = L·diag(D)·Lᵀ`` with L unit lower triangular.

    Equivalently ``zᵀGz = Σᵢ Dᵢ (zᵢ + Σ_{j>i} L[j][i]·zⱼ)²``.
    """

    D: tuple
    L: tuple

    def reconstruct(self):
        d = len(self.D)
        return tuple(
            tuple(sum((self.L[i][k] * self.D[k] * self.L[j][k] for k in range(d)), Fraction(0)) for j in range(d))
            for i in range(d)
        )


@dataclass(frozen=True)
class MinimaProfile:
    """Successive minima ``λ₁² ≤ … ≤ λ_d²`` with independent witness vectors.

    Entries of ``lambda_sq`` may be :data:`INFINITE` (point bodies); witnesses
    are then empty.
    """

    lambda_sq: tuple
    witnesses: tuple

    @property
    def dim(self):
        return len(self.lambda_sq)


def _as_gram(G):
    G = la.matrix(G, "gram")
    if not la.is_positive_definite(G):
        raise InvalidInputError("Gram matrix is not positive definite", "gram")
    return G


def ldlt(G):
    G = _as_gram(G)
    d = len(G)
    L = [[Fraction(int(i == j)) for j in range(d)] for i in range(d)]
    D = [Fraction(0)] * d
    for j in range(d):
        D[j] = G[j][j] - sum(L[j][k] ** 2 * D[k] for k in range(j))
        for i in range(j + 1, d):
            L[i][j] = (G[i][j] - sum(L[i][k] * L[j][k] * D[k] for k in range(j))) / D[j]
    return LdltDecomposition(tuple(D), tuple(map(tuple, L)))


@lru_cache(maxsize=4096)
def integer_form(G):
    """``(Gi, den)`` with ``G = Gi / den`` and Gi integral."""
    den = math.lcm(*(Fraction(v).denominator for row in G for v in row))
    return tuple(tuple(int(v * den) for v in row) for row in G), den


def form_evaluator(G):
    """Return ``f`` with ``f(z) = zᵀGz`` for integer vectors z, in integer arithmetic."""
    Gi, den = integer_form(G)

    def value(z):
        total = 0
        for i, zi in enumerate(z):
            if zi:
                row = Gi[i]
                total += zi * sum(row[j] * zj for j, zj in enumerate(z) if zj)
        return Fraction(total, den)

    return value


def form_value(G, z):
    return form_evaluator(G)(z)


@lru_cache(maxsize=4096)
def _prepared(G):
    """LLL transform, its inverse and the LDLᵀ factors of the reduced form."""
    U, Gr = lll_reduce(G)
    fact = ldlt(Gr)
    return U, U.inverse(), fact.D, fact.L


def _fincke_pohst(D, L, t, R_sq):
    d = len(D)
    z = [0] * d
    out = []

    def descend(i, rem):
        c = t[i] - sum((L[j][i] * (z[j] - t[j]) for j in range(i + 1, d)), Fraction(0))
        k = la.floor_sqrt(rem / D[i])
        for v in range(math.ceil(c) - k - 1, math.floor(c) + k + 2):
            diff = v - c
            q = D[i] * diff * diff
            if q <= rem:
                z[i] = v
                if i == 0:
                    out.append(tuple(z))
                else:
                    descend(i - 1, rem - q)

    descend(d - 1, R_sq)
    return out


def enumerate_ball(G, t, R_sq):
    """All ``z ∈ Zᵈ`` with ``(z−t)ᵀG(z−t) ≤ R_sq``, in lexicographic order."""
    G = la.matrix(G, "gram")
    t = la.vector(t, "center")
    R_sq = la.to_rational(R_sq, "radius_sq")
    if len(t) != len(G):
        raise InvalidInputError("center and Gram matrix dimensions differ")
    U, Uinv, D, L = _prepared(G)
    if R_sq < 0:
        return []
    t_red = la.matvec(Uinv.U, t)
    return sorted(U.apply(z) for z in _fincke_pohst(D, L, t_red, R_sq))


def count_ball(lattice, ball):
    """``|ball ∩ Λ|``."""
    G, t, R_sq = coefficient_ball(lattice, ball)
    return len(enumerate_ball(G, t, R_sq))


def closest_vectors(G, t):
    """Exact CVP: ``(dist_sq, minimizers)``; minimizers sorted lexicographically."""
    G = la.matrix(G, "gram")
    t = la.vector(t, "target")
    U, Uinv, _, _ = _prepared(G)
    # Rounding in the reduced basis gives a lattice point, hence an upper bound.
    t_red = la.matvec(Uinv.U, t)
    guess = U.apply(tuple(math.floor(c + Fraction(1, 2)) for c in t_red))
    bound = la.quad(G, la.sub(guess, t))
    points = enumerate_ball(G, t, bound)
    dists = [la.quad(G, la.sub(z, t)) for z in points]
    best = min(dists)
    return best, [z for z, dd in zip(points, dists) if dd == best]


def short_vectors(G, R_sq):
    """Nonzero lattice vectors with norm² ≤ R_sq, sorted by (norm², lexicographic)."""
    G = la.matrix(G, "gram")
    zero = (Fraction(0),) * len(G)
    pts = [z for z in enumerate_ball(G, zero, R_sq) if any(z)]
    norm = form_evaluator(G)
    return sorted(pts, key=lambda z: (norm(z), z))


def _canonical_sign(z):
    lead = next(v for v in z if v)
    return z if lead > 0 else tuple(-v for v in z)


class _IndependentSet:
    """Incremental linear-independence test over Q (row echelon form kept reduced)."""

    def __init__(self):
        self.rows = []

    def add(self, v):
        v = [Fraction(x) for x in v]
        for p, row in self.rows:
            if v[p]:
                f = v[p] / row[p]
                v = [a - f * b for a, b in zip(v, row)]
        p = next((i for i, x in enumerate(v) if x), None)
        if p is None:
            return False
        self.rows.append((p, v))
        return True


def successive_minima(G):
    """Successive minima of the form ``zᵀGz`` on ``Zᵈ`` with witnesses.

    Vectors are enumerated in a ball whose radius doubles until d independent
    ones appear, then taken greedily in order of norm. Within a norm tie the
    candidates are sign-normalised (leading entry positive) and the
    lexicographically larger one goes first, so diagonal forms yield the
    standard basis in index order.
    """
    return _successive_minima(_as_gram(G))


@lru_cache(maxsize=1024)
def _successive_minima(G):
    d = len(G)
    U = _prepared(G)[0]
    norm = form_evaluator(G)
    R_sq = min(norm(la.column(U.U, j)) for j in range(d))
    while True:
        cands = sorted({_canonical_sign(z) for z in short_vectors(G, R_sq)},
                       key=lambda z: (norm(z), tuple(-v for v in z)))
        indep = _IndependentSet()
        witnesses = [z for z in cands if indep.add(z)]
        if len(witnesses) == d:
            return MinimaProfile(tuple(norm(z) for z in witnesses), tuple(witnesses))
        R_sq *= 2


def oracle_box(G, t, R_sq):
    """Per-coordinate integer ranges containing every solution (exact)."""
    Ginv = la.inverse(G)
    ranges = []
    for i, ti in enumerate(t):
        s = R_sq * Ginv[i][i]
        k = la.floor_sqrt(s)
        vals = [v for v in range(math.ceil(ti) - k - 1, math.floor(ti) + k + 2) if (v - ti) ** 2 <= s]
        ranges.append(range(vals[0], vals[-1] + 1) if vals else range(0))
    return ranges


def oracle_count(G, t, R_sq, capacity=ORACLE_CAPACITY):
    """Brute-force count over the bounding box ``|zᵢ−tᵢ| ≤ √(R_sq·(G⁻¹)ᵢᵢ)``.

    Independent of the LDLᵀ/LLL path: uses only a matrix inverse for the box
    and direct evaluation of the form for membership.
    """
    G = _as_gram(G)
    t = la.vector(t, "center")
    R_sq = la.to_rational(R_sq, "radius_sq")
    if R_sq < 0:
        return 0
    ranges = oracle_box(G, t, R_sq)
    size = math.prod(len(r) for r in ranges)
    if size > capacity:
        raise CapacityError(f"oracle box has {size} candidates, capacity is {capacity}")
    count = 0
    for z in itertools.product(*ranges):
        y = [zi - ti for zi, ti in zip(z, t)]
        if la.quad(G, y) <= R_sq:
            count += 1
    return count
