import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

EXAMPLES = Path(__file__).parent / "data"


def rationals(bound=5, max_den=4):
    return st.builds(Fraction, st.integers(-bound, bound), st.integers(1, max_den))


@st.composite
def pd_forms(draw, dims=(1, 2, 3), bound=3):
    """``AᵀA + I`` with small rational A: symmetric positive definite."""
    d = draw(st.sampled_from(dims))
    A = [[draw(rationals(bound, 3)) for _ in range(d)] for _ in range(d)]
    return tuple(
        tuple(sum(A[k][i] * A[k][j] for k in range(d)) + (i == j) for j in range(d)) for i in range(d)
    )


@st.composite
def integer_bases(draw, d, bound=3):
    """Nonsingular integer matrices (rows)."""
    from latticebhw import linalg as la

    B = draw(st.lists(st.lists(st.integers(-bound, bound), min_size=d, max_size=d), min_size=d, max_size=d)
             .filter(lambda M: la.det(M) != 0))
    return tuple(tuple(r) for r in B)


@pytest.fixture
def data_dir():
    return EXAMPLES
