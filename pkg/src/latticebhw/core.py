"""Domain vocabulary: lattices, rational inner products, balls and flag bases.

Points of the lattice are integer coefficient vectors ``z`` whose ambient image
is ``B z``; balls are measured in the norm ``‖x‖² = xᵀQx`` of an
:class:`InnerProductSpace`. An ellipsoid is simply a ball of a non-Euclidean Q.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .errors import InvalidInputError


@dataclass(frozen=True)
class Lattice:
    """Full-rank lattice given by a rational basis; columns are basis vectors."""

    basis: tuple

    def __post_init__(self):
        basis = la.matrix(self.basis, "lattice_basis")
        if len(basis) != len(basis[0]):
            raise InvalidInputError("basis must be square", "lattice_basis")
        if la.det(basis) == 0:
            raise InvalidInputError("basis is singular", "lattice_basis")
        object.__setattr__(self, "basis", basis)

    @classmethod
    def standard(cls, d):
        return cls(la.identity(d))

    @property
    def dim(self):
        return len(self.basis)

    @property
    def covolume(self):
        return abs(la.det(self.basis))

    def to_coefficients(self, x):
        """Coordinates of the ambient point ``x`` with respect to the basis."""
        self._check(x)
        return la.solve(self.basis, la.vector(x))

    def to_ambient(self, z):
        self._check(z)
        return la.matvec(self.basis, la.vector(z))

    def contains_point(self, x):
        return la.is_integral(self.to_coefficients(x))

    def scaled(self, s):
        """The lattice ``sΛ``."""
        s = Fraction(s)
        return Lattice(tuple(tuple(s * v for v in row) for row in self.basis))

    def _check(self, x):
        if len(x) != self.dim:
            raise InvalidInputError(f"expected a vector of length {self.dim}, got {len(x)}")


@dataclass(frozen=True)
class InnerProductSpace:
    """``R^d`` with the rational positive definite form ``Q``."""

    Q: tuple

    def __post_init__(self):
        Q = la.matrix(self.Q, "form")
        if not la.is_symmetric(Q):
            raise InvalidInputError("form is not symmetric", "form")
        if not la.is_positive_definite(Q):
            raise InvalidInputError("form is not positive definite", "form")
        object.__setattr__(self, "Q", Q)

    @classmethod
    def euclidean(cls, d):
        return cls(la.identity(d))

    @property
    def dim(self):
        return len(self.Q)

    def inner(self, x, y):
        _check_dims(self.dim, x, y)
        return la.dot(x, la.matvec(self.Q, y))


@dataclass(frozen=True)
class Ball:
    """The compact set ``{x : (x−c)ᵀQ(x−c) ≤ radius_sq}``; ``radius_sq = 0`` is a point."""

    space: InnerProductSpace
    center: tuple
    radius_sq: Fraction

    def __post_init__(self):
        center = la.vector(self.center, "center")
        _check_dims(self.space.dim, center)
        radius_sq = la.to_rational(self.radius_sq, "radius_sq")
        if radius_sq < 0:
            raise InvalidInputError("radius_sq must be non-negative", "radius_sq")
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius_sq", radius_sq)

    @property
    def dim(self):
        return self.space.dim


@dataclass(frozen=True)
class FlagBasis:
    """Lattice basis ``e¹..eᵈ`` whose prefix spans match those of the witnesses ``a¹..aᵈ``.

    ``e`` and ``witnesses`` hold integer coefficient vectors with respect to
    ``lattice.basis``.
    """

    lattice: Lattice
    e: tuple
    witnesses: tuple

    @property
    def dim(self):
        return self.lattice.dim

    @property
    def matrix(self):
        """Integer coefficient matrix whose columns are the ``eⁱ``."""
        return la.from_columns(self.e)

    @property
    def ambient_basis(self):
        """Ambient basis matrix ``B·E`` of the flag."""
        return la.matmul(self.lattice.basis, self.matrix)

    def is_unimodular(self):
        return abs(la.det(self.matrix)) == 1

    def prefix_spans_match(self):
        k = len(self.witnesses)
        for i in range(1, k + 1):
            if la.rank_of_vectors(self.witnesses[:i] + self.e[:i]) != i:
                return False
        return True


def _check_dims(d, *vectors):
    for v in vectors:
        if len(v) != d:
            raise InvalidInputError(f"dimension mismatch: expected {d}, got {len(v)}")


def gram(lattice, space):
    """Gram matrix ``G = BᵀQB`` of the lattice basis in the given inner product."""
    if lattice.dim != space.dim:
        raise InvalidInputError(f"dimension mismatch: lattice {lattice.dim}, form {space.dim}")
    B = lattice.basis
    return la.matmul(la.transpose(B), la.matmul(space.Q, B))


def norm_sq(space, x):
    x = la.vector(x)
    _check_dims(space.dim, x)
    return la.quad(space.Q, x)


def contains(ball, x):
    x = la.vector(x)
    _check_dims(ball.dim, x)
    return norm_sq(ball.space, la.sub(x, ball.center)) <= ball.radius_sq


def difference_body(ball):
    """``B − B``: for a ball of radius r this is the origin ball of radius 2r."""
    return Ball(ball.space, (Fraction(0),) * ball.dim, 4 * ball.radius_sq)


def half_difference_body(ball):
    return Ball(ball.space, (Fraction(0),) * ball.dim, ball.radius_sq)


def coefficient_ball(lattice, ball):
    """Translate a ball to lattice coefficient space: ``(G, t, radius_sq)`` with ``t = B⁻¹c``."""
    return gram(lattice, ball.space), lattice.to_coefficients(ball.center), ball.radius_sq
