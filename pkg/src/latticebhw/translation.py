"""Simultaneous lattice translation of balls so that pairwise differences avoid ``tΛ`` for every ``t ≥ 1``.

Radii are carried as squared radii. Separation ``d > rᵢ + rⱼ`` is decided
without square roots, see :func:`exceeds_radius_sum`.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg as la
from .core import Ball, InnerProductSpace, Lattice, gram
from .enumeration import closest_vectors, enumerate_ball
from .errors import HypothesisViolation, InvalidInputError


def exceeds_radius_sum(dist_sq, a_sq, b_sq):
    """Exact test of ``dist > √a_sq + √b_sq`` for non-negative rationals."""
    s = dist_sq - a_sq - b_sq
    return s > 0 and s * s > 4 * a_sq * b_sq


@dataclass(frozen=True)
class SpherePack:
    """Balls ``B(wᵢ, rᵢ)`` of one inner product space, together with a lattice."""

    space: InnerProductSpace
    lattice: Lattice
    balls: tuple

    def __post_init__(self):
        balls = tuple(self.balls)
        if not balls:
            raise InvalidInputError("a sphere pack needs at least one ball", "spheres")
        if self.lattice.dim != self.space.dim:
            raise InvalidInputError("lattice and form dimensions differ")
        for b in balls:
            if b.space != self.space:
                raise InvalidInputError("all balls must live in the pack's inner product space", "spheres")
        object.__setattr__(self, "balls", balls)

    @classmethod
    def from_radii(cls, space, lattice, centers, radii):
        """Build from rational radii (not squared)."""
        balls = []
        for i, (c, r) in enumerate(zip(centers, radii)):
            r = la.to_rational(r, f"spheres[{i}].radius")
            if r < 0:
                raise InvalidInputError("radius must be non-negative", f"spheres[{i}].radius")
            balls.append(Ball(space, c, r * r))
        return cls(space, lattice, tuple(balls))

    @property
    def n(self):
        return len(self.balls)

    @property
    def centers(self):
        return tuple(b.center for b in self.balls)


@dataclass(frozen=True)
class TranslationResult:
    u: tuple
    shifts: tuple
    d_sq: tuple
    certified_all_t: bool


@dataclass
class PairCheck:
    i: int
    j: int
    d_sq: Fraction
    certified: bool
    samples: list = field(default_factory=list)

    @property
    def ok(self):
        return self.certified and all(s["ok"] for s in self.samples)


@dataclass
class TranslationReport:
    pairs: list

    @property
    def ok(self):
        return all(p.ok for p in self.pairs)

    @property
    def failures(self):
        return [p for p in self.pairs if not p.ok]


def _cvp_coset(G, y, s=1):
    """``min_z (y + s·z)ᵀG(y + s·z)`` and the lexicographically smallest minimizer z."""
    s = Fraction(s)
    dist, mins = closest_vectors(G, la.scale(-1 / s, y))
    return s * s * dist, mins[0]


def coset_distance_sq(space, lattice, x):
    """``min_{λ∈Λ} ‖x + λ‖²`` in the norm of ``space``."""
    return _cvp_coset(gram(lattice, space), lattice.to_coefficients(x))[0]


def pairwise_coset_distances(pack):
    G = gram(pack.lattice, pack.space)
    coeffs = [pack.lattice.to_coefficients(c) for c in pack.centers]
    n = pack.n
    D = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            D[i][j] = D[j][i] = _cvp_coset(G, la.sub(coeffs[i], coeffs[j]))[0]
    return tuple(map(tuple, D))


def separation_violations(pack, d_sq=None):
    """Pairs ``i < j`` whose balls meet modulo Λ, i.e. ``d_ij ≤ rᵢ + rⱼ``."""
    if d_sq is None:
        d_sq = pairwise_coset_distances(pack)
    radii = [b.radius_sq for b in pack.balls]
    return [
        (i, j)
        for i in range(pack.n)
        for j in range(i + 1, pack.n)
        if not exceeds_radius_sum(d_sq[i][j], radii[i], radii[j])
    ]


def find_lemma_violation(space, lattice, u):
    """A λ ∈ Λ with ``⟨u,λ⟩ + ‖λ‖² < 0``, or None.

    Any violator has ``‖λ‖ < ‖u‖`` by Cauchy–Schwarz, so the search over the
    ball of radius ``‖u‖`` is exhaustive. Returned as coefficients.
    """
    G = gram(lattice, space)
    y = lattice.to_coefficients(u)
    Gy = la.matvec(G, y)
    zero = (Fraction(0),) * len(y)
    for z in enumerate_ball(G, zero, la.dot(y, Gy)):
        if la.dot(Gy, z) + la.quad(G, z) < 0:
            return z
    return None


def certify_all_t(space, lattice, u):
    """True iff ``⟨u,λ⟩ + ‖λ‖² ≥ 0`` for every λ ∈ Λ.

    Equivalently ``‖½u + λ‖ ≥ ‖½u‖`` for all λ, which forces
    ``‖u + λ‖ ≤ ‖u + tλ‖`` for all ``t ≥ 1``.
    """
    return find_lemma_violation(space, lattice, u) is None


def translate_spheres(pack):
    """Fix the first ball and move every other one to a nearest point of its coset."""
    d_sq = pairwise_coset_distances(pack)
    bad = separation_violations(pack, d_sq)
    if bad:
        i, j = bad[0]
        raise HypothesisViolation(f"balls {i} and {j} are not separated modulo the lattice")
    G = gram(pack.lattice, pack.space)
    B = pack.lattice.basis
    w1 = pack.centers[0]
    u = [w1]
    shifts = [(0,) * pack.lattice.dim]
    for w in pack.centers[1:]:
        # nearest lattice point to wᵢ − w₁, lexicographically smallest on ties
        _, mins = closest_vectors(G, pack.lattice.to_coefficients(la.sub(w, w1)))
        z = tuple(-v for v in mins[0])
        shifts.append(z)
        u.append(la.add(w, la.matvec(B, z)))
    certified = all(
        certify_all_t(pack.space, pack.lattice, la.sub(u[i], u[j]))
        for i in range(pack.n)
        for j in range(i + 1, pack.n)
    )
    return TranslationResult(tuple(u), tuple(shifts), d_sq, certified)


def scaled_distance_sq(space, lattice, x, t):
    """``min_{λ∈Λ} ‖x + tλ‖²`` for rational ``t > 0``."""
    return _cvp_coset(gram(lattice, space), lattice.to_coefficients(x), t)[0]


def verify_translation(result, pack, t_samples=(1, Fraction(3, 2), 2, Fraction(5, 2), 7)):
    """Check the all-t certificate and sampled scalings for every pair."""
    ts = [la.to_rational(t, "t_samples") for t in t_samples]
    if any(t < 1 for t in ts):
        raise InvalidInputError("t samples must be at least 1", "t_samples")
    radii = [b.radius_sq for b in pack.balls]
    pairs = []
    for i in range(pack.n):
        for j in range(i + 1, pack.n):
            diff = la.sub(result.u[i], result.u[j])
            check = PairCheck(i, j, result.d_sq[i][j], certify_all_t(pack.space, pack.lattice, diff))
            for t in ts:
                dt = scaled_distance_sq(pack.space, pack.lattice, diff, t)
                ok = dt >= result.d_sq[i][j] and exceeds_radius_sum(dt, radii[i], radii[j])
                check.samples.append({"t": t, "dt_sq": dt, "ok": ok})
            pairs.append(check)
    return TranslationReport(pairs)
