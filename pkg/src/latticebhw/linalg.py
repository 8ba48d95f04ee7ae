"""Exact rational linear algebra on tuples.

Vectors are tuples of ``Fraction`` (or ``int``), matrices are row-major tuples
of row tuples. Every function returns fresh values and never mutates input.
"""

from fractions import Fraction
from math import isqrt

from .errors import InvalidInputError


def to_rational(value, field=None):
    """Coerce ``value`` to a canonical Fraction.

    Accepts ints, Fractions and strings of the form ``"p"`` or ``"p/q"``.
    Floats are refused: they would smuggle rounding into an exact pipeline.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"expected a rational, got {value!r}", field)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise InvalidInputError(f"malformed rational {value!r}", field) from None
        if q == 0:
            raise InvalidInputError(f"zero denominator in {value!r}", field)
        return Fraction(p, q)
    raise InvalidInputError(f"expected a rational, got {value!r}", field)


def format_rational(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def vector(values, field=None):
    return tuple(to_rational(v, f"{field}[{i}]" if field else None) for i, v in enumerate(values))


def matrix(rows, field=None):
    rows = [list(r) for r in rows]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise InvalidInputError("matrix rows must be non-empty and of equal length", field)
    return tuple(
        tuple(to_rational(v, f"{field}[{i}][{j}]" if field else None) for j, v in enumerate(r))
        for i, r in enumerate(rows)
    )


def identity(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d))


def transpose(A):
    return tuple(zip(*A))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt) for row in A)


def matvec(A, x):
    return tuple(sum((a * b for a, b in zip(row, x)), Fraction(0)) for row in A)


def dot(x, y):
    return sum((a * b for a, b in zip(x, y)), Fraction(0))


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def scale(c, x):
    return tuple(c * a for a in x)


def quad(A, x):
    """Return ``xᵀAx``."""
    return dot(x, matvec(A, x))


def column(A, j):
    return tuple(row[j] for row in A)


def from_columns(cols):
    return transpose(tuple(tuple(c) for c in cols))


def is_symmetric(A):
    n = len(A)
    return all(len(row) == n for row in A) and all(A[i][j] == A[j][i] for i in range(n) for j in range(i))


def _eliminate(A):
    """Fraction-exact row echelon form. Returns (rows, pivot_cols, sign)."""
    M = [list(map(Fraction, row)) for row in A]
    m = len(M)
    n = len(M[0]) if m else 0
    pivots = []
    sign = 1
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
            sign = -sign
        for i in range(r + 1, m):
            f = M[i][c] / M[r][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return M, pivots, sign


def det(A):
    if len(A) != len(A[0]):
        raise InvalidInputError("determinant of a non-square matrix")
    M, pivots, sign = _eliminate(A)
    if len(pivots) < len(A):
        return Fraction(0)
    out = Fraction(sign)
    for i in range(len(A)):
        out *= M[i][i]
    return out


def rank(A):
    if not A or not A[0]:
        return 0
    return len(_eliminate(A)[1])


def rank_of_vectors(vectors):
    """Rank of a collection of vectors (given as rows)."""
    vectors = [v for v in vectors]
    if not vectors:
        return 0
    return rank(vectors)


def inverse(A):
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            raise InvalidInputError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [a / piv for a in M[c]]
        for i in range(n):
            if i != c and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def solve(A, b):
    return matvec(inverse(A), b)


def leading_minors(A):
    return [det(tuple(row[:k] for row in A[:k])) for k in range(1, len(A) + 1)]


def is_positive_definite(A):
    """Sylvester's criterion, exact."""
    if not is_symmetric(A):
        return False
    # LDLᵀ pivots are ratios of consecutive leading minors; positive pivots <=> PD.
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    for c in range(n):
        if M[c][c] <= 0:
            return False
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return True


def floor_sqrt(q):
    """``⌊√q⌋`` for a rational ``q ≥ 0``, exactly."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("square root of a negative rational")
    return isqrt(q.numerator // q.denominator)


def is_integral(x):
    return all(Fraction(v).denominator == 1 for v in x)


def as_int_vector(x):
    return tuple(int(Fraction(v)) for v in x)


def as_int_matrix(A):
    return tuple(as_int_vector(row) for row in A)
