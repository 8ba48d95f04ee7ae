"""The q-values ``⌊2/λᵢ + 1⌋`` and the lattice-point bounds built from them."""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .core import gram, half_difference_body
from .enumeration import INFINITE, MinimaProfile, count_ball, successive_minima
from .errors import InvalidInputError


@dataclass(frozen=True)
class QValues:
    q: tuple

    def __post_init__(self):
        q = tuple(int(v) for v in self.q)
        if any(v < 1 for v in q):
            raise InvalidInputError("q-values must be positive integers", "q")
        if any(a < b for a, b in zip(q, q[1:])):
            raise InvalidInputError("q-values must be non-increasing", "q")
        object.__setattr__(self, "q", q)

    @property
    def bound(self):
        return math.prod(self.q)


@dataclass(frozen=True)
class BhwReport:
    count: int
    minima: MinimaProfile
    q: QValues
    bound: int
    first_theorem_bound: int
    holds: bool
    holds_first: bool


def q_from_lambda_sq(lambda_sq):
    """``1 + max{k ≥ 0 : k²·λ² ≤ 4}``, i.e. ``⌊2/λ⌋ + 1``; an infinite λ gives 1."""
    if lambda_sq == INFINITE:
        return 1
    lambda_sq = la.to_rational(lambda_sq, "lambda_sq")
    if lambda_sq <= 0:
        raise InvalidInputError("lambda_sq must be positive", "lambda_sq")
    return 1 + la.floor_sqrt(Fraction(4) / lambda_sq)


def body_minima(lattice, ball):
    """Successive minima of a ball, taken via its half difference body.

    The half difference body of ``B(c, r²)`` is ``B(0, r²)`` and
    ``λ·B(0, r²) = B(0, λ²r²)``, so ``λᵢ² = μᵢ / r²`` where ``μᵢ`` are the
    minima of the Gram form. A point ball has every ``λᵢ`` infinite.
    """
    R_sq = half_difference_body(ball).radius_sq
    if R_sq == 0:
        return MinimaProfile((INFINITE,) * ball.dim, ())
    form = successive_minima(gram(lattice, ball.space))
    return MinimaProfile(tuple(mu / R_sq for mu in form.lambda_sq), form.witnesses)


def q_values(profile):
    return QValues(tuple(q_from_lambda_sq(l) for l in profile.lambda_sq))


def verify_theorem1(lattice, ball):
    """Count ``|E ∩ Λ|`` and compare against ``∏ qᵢ`` and ``q₁ᵈ``."""
    count = count_ball(lattice, ball)
    minima = body_minima(lattice, ball)
    q = q_values(minima)
    bound = q.bound
    first = q.q[0] ** ball.dim
    return BhwReport(count, minima, q, bound, first, count <= bound, count <= first)


def verify_first_theorem(lattice, ball):
    return verify_theorem1(lattice, ball).holds_first


def unit_ball_volume(d):
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def check_minkowski_second(lattice, ball, rel_tol=1e-9):
    """Floating-point check of ``vol(E)/det(Λ) ≤ ∏ 2/λᵢ``.

    ``vol(E) = ω_d·r^d/√det(Q)``. The volume is transcendental, so this is a
    sanity check outside the exact chain.
    """
    if ball.radius_sq <= 0:
        raise InvalidInputError("Minkowski's second theorem needs a nondegenerate ball", "radius_sq")
    d = ball.dim
    r = math.sqrt(ball.radius_sq)
    vol = unit_ball_volume(d) * r**d / math.sqrt(la.det(ball.space.Q))
    lhs = vol / float(lattice.covolume)
    rhs = math.prod(2 / math.sqrt(l) for l in body_minima(lattice, ball).lambda_sq)
    return lhs <= rhs * (1 + rel_tol)
