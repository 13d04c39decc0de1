"""Canonical lifts and internal twists acting on series and recurrences.

canonical lift of (rho, tau):  sum s_g t^g  ->  sum rho(s_g) t^{tau(g)}
internal twist by x:           sum s_g t^g  ->  sum s_g x^g t^g
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .fields import CoefficientAutomorphism, FieldContext, FieldElement, FieldMismatchError
from .lattice import DimensionError, Exponent, UnitriangularMap, apply_map
from .recurrence import LinearRecurrence
from .series import ALL, FiniteSeries, SeriesLike, TruncatedSeries


@dataclass(frozen=True)
class ExponentCharacter:
    """A homomorphism Z^n -> k^x given by the images of the unit vectors."""

    values: tuple[FieldElement, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("a character needs at least one generator image")
        ctx = self.values[0].ctx
        for a in self.values:
            if a.ctx != ctx:
                raise FieldMismatchError("generator images must share one field")
            if not a:
                raise ValueError("generator images must be invertible")

    @classmethod
    def of(cls, ctx: FieldContext, values: Sequence) -> ExponentCharacter:
        return cls(tuple(ctx(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def ctx(self) -> FieldContext:
        return self.values[0].ctx

    def __call__(self, g: Exponent) -> FieldElement:
        return char_eval(self, g)


def char_eval(x: ExponentCharacter, g: Exponent) -> FieldElement:
    if len(g) != x.n:
        raise DimensionError("character and exponent differ in dimension")
    out = x.ctx.one
    for a, k in zip(x.values, g):
        if k:
            out = out * a**k
    return out


def _check_lift(rho: CoefficientAutomorphism, tau: UnitriangularMap, n: int, ctx: FieldContext):
    if rho.ctx != ctx:
        raise FieldMismatchError(f"automorphism of {rho.ctx} applied over {ctx}")
    if tau.n != n:
        raise DimensionError(f"map of dimension {tau.n} applied in Z^{n}")


def _lift_terms(rho, tau, s: FiniteSeries) -> FiniteSeries:
    # tau preserves the order, so the mapped terms stay sorted
    return FiniteSeries(s.n, s.ctx, tuple((apply_map(tau, e), rho(c)) for e, c in s.terms))


def canonical_lift(
    rho: CoefficientAutomorphism, tau: UnitriangularMap, s: SeriesLike
) -> SeriesLike:
    """Apply the canonical lift of (rho, tau).

    A truncation keeps its certificate only when the image of its box is a
    box again (tau the identity, or n = 1) or when it is exact everywhere.
    Otherwise the plain :class:`FiniteSeries` of mapped terms is returned:
    receiving a FiniteSeries for a truncated input is the downgrade flag.
    """
    _check_lift(rho, tau, s.n, s.ctx)
    if isinstance(s, FiniteSeries):
        return _lift_terms(rho, tau, s)
    data = _lift_terms(rho, tau, s.data)
    if s.region is ALL:
        return TruncatedSeries(data, ALL, data.corner() if data.terms else None)
    if tau.is_identity():
        return TruncatedSeries(data, s.region, s.cone_origin)
    return data


def lift_on_sequence(
    rho: CoefficientAutomorphism, tau: UnitriangularMap, r: LinearRecurrence
) -> LinearRecurrence:
    _check_lift(rho, tau, r.n, r.ctx)
    return LinearRecurrence(
        r.n, r.ctx, tuple(apply_map(tau, h) for h in r.domain), tuple(rho(c) for c in r.coeffs)
    )


def _twist_terms(x: ExponentCharacter, s: FiniteSeries) -> FiniteSeries:
    if x.ctx != s.ctx:
        raise FieldMismatchError("character and series live over different fields")
    if x.n != s.n:
        raise DimensionError("character and series differ in dimension")
    return FiniteSeries(s.n, s.ctx, tuple((e, c * char_eval(x, e)) for e, c in s.terms))


def internal_twist(x: ExponentCharacter, s: SeriesLike) -> SeriesLike:
    if isinstance(s, FiniteSeries):
        return _twist_terms(x, s)
    return TruncatedSeries(_twist_terms(x, s.data), s.region, s.cone_origin)


def twist_on_sequence(x: ExponentCharacter, r: LinearRecurrence) -> LinearRecurrence:
    if x.ctx != r.ctx:
        raise FieldMismatchError("character and recurrence live over different fields")
    if x.n != r.n:
        raise DimensionError("character and recurrence differ in dimension")
    return LinearRecurrence(
        r.n, r.ctx, r.domain, tuple(c * char_eval(x, h) for h, c in r.items())
    )
