"""The exponent group Z^n with the lexicographic order.

Exponents are plain tuples of ints.  Python already compares tuples
lexicographically, so ``a < b`` is the group order; the helpers here add
dimension and 64-bit overflow checks at the boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

Exponent = tuple[int, ...]

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1


class DimensionError(ValueError):
    pass


def _check_range(coords: Iterable[int]) -> None:
    for c in coords:
        if c < INT_MIN or c > INT_MAX:
            raise OverflowError(f"exponent coordinate {c} exceeds 64-bit range")


def exponent(coords: Iterable[int], n: int | None = None) -> Exponent:
    """Build a validated exponent from an iterable of integers."""
    e = tuple(int(c) for c in coords)
    if n is not None and len(e) != n:
        raise DimensionError(f"expected dimension {n}, got {len(e)}")
    _check_range(e)
    return e


def check_dims(*exps: Exponent) -> int:
    n = len(exps[0])
    for e in exps[1:]:
        if len(e) != n:
            raise DimensionError(f"dimension mismatch: {len(e)} != {n}")
    return n


def lex_compare(a: Exponent, b: Exponent) -> int:
    """Return -1, 0 or 1 as ``a`` is lex-less, equal or greater than ``b``."""
    check_dims(a, b)
    return (a > b) - (a < b)


def exp_add(a: Exponent, b: Exponent) -> Exponent:
    check_dims(a, b)
    out = tuple(x + y for x, y in zip(a, b))
    _check_range(out)
    return out


def exp_sub(a: Exponent, b: Exponent) -> Exponent:
    check_dims(a, b)
    out = tuple(x - y for x, y in zip(a, b))
    _check_range(out)
    return out


def exp_neg(a: Exponent) -> Exponent:
    out = tuple(-x for x in a)
    _check_range(out)
    return out


def zero(n: int) -> Exponent:
    return (0,) * n


def cw_min(exps: Iterable[Exponent]) -> Exponent:
    """Componentwise minimum of a nonempty collection."""
    return tuple(min(c) for c in zip(*exps))


def cw_max(exps: Iterable[Exponent]) -> Exponent:
    return tuple(max(c) for c in zip(*exps))


def cw_le(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def in_positive_orthant(g: Exponent) -> bool:
    return all(c >= 0 for c in g)


def box_points(lo: Exponent, hi: Exponent) -> list[Exponent]:
    """All lattice points of the box [lo, hi], in ascending lex order."""
    check_dims(lo, hi)
    pts: list[Exponent] = [()]
    for a, b in zip(lo, hi):
        pts = [p + (c,) for p in pts for c in range(a, b + 1)]
    return pts


@dataclass(frozen=True)
class UnitriangularMap:
    """An order-preserving automorphism of (Z^n, <_lex).

    These are exactly the lower unitriangular integer matrices acting on
    column vectors.
    """

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        for i, r in enumerate(rows):
            if len(r) != n:
                raise DimensionError("matrix must be square")
            if r[i] != 1:
                raise ValueError(f"diagonal entry ({i},{i}) must be 1")
            if any(r[j] != 0 for j in range(i + 1, n)):
                raise ValueError(f"row {i} has a nonzero entry above the diagonal")
        _check_range(x for r in rows for x in r)

    @classmethod
    def identity(cls, n: int) -> UnitriangularMap:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def elementary(cls, n: int, i: int, j: int, c: int) -> UnitriangularMap:
        """Identity plus ``c`` at row ``i``, column ``j`` (0-based, i > j)."""
        if i <= j:
            raise ValueError("elementary entry must lie strictly below the diagonal")
        rows = [[int(a == b) for b in range(n)] for a in range(n)]
        rows[i][j] = c
        return cls(tuple(map(tuple, rows)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def __call__(self, g: Exponent) -> Exponent:
        return apply_map(self, g)

    def __matmul__(self, other: UnitriangularMap) -> UnitriangularMap:
        return compose_maps(self, other)

    def inverse(self) -> UnitriangularMap:
        return invert_map(self)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def apply_map(tau: UnitriangularMap, g: Exponent) -> Exponent:
    if len(g) != tau.n:
        raise DimensionError(f"map of dimension {tau.n} applied to exponent of dimension {len(g)}")
    # lower triangular: row i only reads g[0..i]
    out = tuple(sum(r[j] * g[j] for j in range(i + 1)) for i, r in enumerate(tau.rows))
    _check_range(out)
    return out


def compose_maps(t1: UnitriangularMap, t2: UnitriangularMap) -> UnitriangularMap:
    """Matrix product; ``compose_maps(t1, t2)(g) == t1(t2(g))``."""
    if t1.n != t2.n:
        raise DimensionError("cannot compose maps of different dimension")
    n = t1.n
    a, b = t1.rows, t2.rows
    return UnitriangularMap(
        tuple(tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n))
    )


def invert_map(tau: UnitriangularMap) -> UnitriangularMap:
    # forward substitution; unit diagonal keeps everything integral
    n = tau.n
    a = tau.rows
    inv = [[0] * n for _ in range(n)]
    for j in range(n):
        inv[j][j] = 1
        for i in range(j + 1, n):
            inv[i][j] = -sum(a[i][k] * inv[k][j] for k in range(j, i))
    return UnitriangularMap(tuple(map(tuple, inv)))


def as_map(rows: Sequence[Sequence[int]]) -> UnitriangularMap:
    return UnitriangularMap(tuple(tuple(r) for r in rows))
