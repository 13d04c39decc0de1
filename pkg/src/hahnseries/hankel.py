"""Hankel matrices of series supported on an arithmetic progression.

For s supported on v(s) + N*g the Hankel matrix has entries
H[i][j] = s_{v(s) + (i+j) g}.  Finite rank of the infinite matrix is
equivalent to rationality; at finite size we only report rank profiles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import linalg
from .fields import FieldElement
from .lattice import Exponent, exp_add, exponent
from .series import SeriesLike, UncertifiedError, as_truncated, valuation


@dataclass(frozen=True)
class HankelMatrix:
    entries: tuple[tuple[FieldElement, ...], ...]

    @classmethod
    def from_sequence(cls, seq, N: int) -> HankelMatrix:
        if len(seq) < 2 * N - 1:
            raise ValueError(f"need {2 * N - 1} terms for a {N}x{N} Hankel matrix")
        return cls(tuple(tuple(seq[i + j] for j in range(N)) for i in range(N)))

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[FieldElement]]:
        return [list(r) for r in self.entries]

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.entries]


@dataclass(frozen=True)
class Ok:
    base: Exponent


@dataclass(frozen=True)
class Fail:
    witness: Exponent


def _is_positive(g: Exponent) -> bool:
    return g > (0,) * len(g)


def _progression_index(d: Exponent, g: Exponent) -> int | None:
    """The i >= 0 with d = i*g, if any."""
    k = next(j for j, c in enumerate(g) if c)
    if d[k] % g[k]:
        return None
    i = d[k] // g[k]
    if i < 0 or any(x != i * c for x, c in zip(d, g)):
        return None
    return i


def progression_check(s: SeriesLike, g: Exponent) -> Ok | Fail:
    s = as_truncated(s)
    g = exponent(g, s.n)
    if not _is_positive(g):
        raise ValueError("increment must be lex-positive")
    base = valuation(s)
    for e, _ in s.terms:
        if _progression_index(tuple(a - b for a, b in zip(e, base)), g) is None:
            return Fail(e)
    return Ok(base)


def progression_coefficients(s: SeriesLike, g: Exponent, count: int) -> list[FieldElement]:
    """s_{v + i g} for i < count, all of which must be certified."""
    s = as_truncated(s)
    g = exponent(g, s.n)
    verdict = progression_check(s, g)
    if isinstance(verdict, Fail):
        raise ValueError(f"support point {verdict.witness} is off the progression")
    out, e = [], verdict.base
    for _ in range(count):
        if not s.is_certified(e):
            raise UncertifiedError(f"coefficient at {e} is not certified")
        out.append(s.data.coeff(e))
        e = exp_add(e, g)
    return out


def build_hankel(s: SeriesLike, g: Exponent, N: int) -> HankelMatrix:
    if N < 1:
        raise ValueError("Hankel size must be positive")
    return HankelMatrix.from_sequence(progression_coefficients(s, g, 2 * N - 1), N)


def exact_rank(H: HankelMatrix) -> int:
    return linalg.rank(H.rows(), H.size)


@dataclass(frozen=True)
class StabilizedAt:
    rank: int


@dataclass(frozen=True)
class FullUpTo:
    size: int


@dataclass(frozen=True)
class RankProfile:
    ranks: tuple[tuple[int, int], ...]
    verdict: StabilizedAt | FullUpTo


def rank_profile(s: SeriesLike, g: Exponent, N_max: int) -> RankProfile:
    """Ranks of the leading N x N Hankel minors for N = 1..N_max.

    The verdict is StabilizedAt(L) when the last ceil(N_max/3) ranks all
    equal L; this is finite-size evidence only.
    """
    if N_max < 1:
        raise ValueError("N_max must be positive")
    seq = progression_coefficients(s, g, 2 * N_max - 1)
    ranks = tuple((N, exact_rank(HankelMatrix.from_sequence(seq, N))) for N in range(1, N_max + 1))
    window = [r for _, r in ranks[-math.ceil(N_max / 3):]]
    if len(set(window)) == 1:
        verdict: StabilizedAt | FullUpTo = StabilizedAt(window[0])
    else:
        verdict = FullUpTo(N_max)
    return RankProfile(ranks, verdict)
