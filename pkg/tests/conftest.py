import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hahnseries import FieldContext, FiniteSeries, LinearRecurrence  # noqa: E402

Q = FieldContext.rationals()


def rand_poly(rng: random.Random, n: int, deg: int, unit_corner: bool = True) -> FiniteSeries:
    """Random polynomial with exponents in [0, deg]^n; nonzero constant term if asked."""
    from hahnseries.lattice import box_points

    pts = box_points((0,) * n, (deg,) * n)
    coeffs = {}
    for e in pts:
        if rng.random() < 0.5:
            coeffs[e] = rng.randint(-4, 4)
    if unit_corner:
        coeffs[(0,) * n] = rng.choice([c for c in range(-3, 4) if c])
    s = FiniteSeries.from_dict(n, Q, coeffs)
    return s if not s.is_zero() else FiniteSeries.monomial(Q, (0,) * n, 1)


def rand_rec(rng: random.Random, n: int, deg: int) -> LinearRecurrence:
    """Random recurrence on the full box [0, deg]^n with nonzero value at 0."""
    from hahnseries.lattice import box_points

    pts = box_points((0,) * n, (deg,) * n)
    pairs = [(e, rng.randint(-3, 3)) for e in pts]
    pairs[0] = (pts[0], rng.choice([1, -1, 2, 3]))
    return LinearRecurrence.from_pairs(n, Q, pairs)


@pytest.fixture
def rng():
    return random.Random(20240611)
