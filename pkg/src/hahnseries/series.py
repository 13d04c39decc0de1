"""Finite-support series over Z^n and truncations with exactness certificates.

A :class:`TruncatedSeries` is a finite window onto an element of the Hahn
field k((Z^n)).  Two pieces of metadata say which coefficients are exact:

* ``region``: a box (or ``ALL``) on which every coefficient is known;
* ``cone_origin``: an optional point gamma such that the whole support of
  the underlying series lies in gamma + N^n, so every coefficient outside
  that cone is known to be zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Union

from .fields import FieldContext, FieldElement, FieldMismatchError
from .lattice import (
    DimensionError,
    Exponent,
    box_points,
    cw_le,
    cw_min,
    exp_add,
    exp_sub,
    exponent,
    in_positive_orthant,
)

DEFAULT_BUDGET = 10**6


class UncertifiedError(ValueError):
    """A coefficient was requested outside the certified region."""


class EmptyRegionError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    pass


class CornerError(ValueError):
    """The denominator has no corner term; use coefficient_at_lex instead."""


# -- finite series -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteSeries:
    """A Laurent polynomial sum c_g t^g with terms sorted ascending in lex."""

    n: int
    ctx: FieldContext
    terms: tuple[tuple[Exponent, FieldElement], ...] = ()

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if len(e) != self.n:
                raise DimensionError(f"term exponent {e} is not in Z^{self.n}")
            if c.ctx != self.ctx:
                raise FieldMismatchError(f"coefficient of {c.ctx} in a series over {self.ctx}")
            if not c:
                raise ValueError("stored coefficients must be nonzero")
            if prev is not None and not prev < e:
                raise ValueError("terms must be strictly increasing in lex order")
            prev = e

    @classmethod
    def from_dict(cls, n: int, ctx: FieldContext, coeffs: Mapping) -> FiniteSeries:
        """Build from ``{exponent: coefficient}``; zeros are dropped and
        plain ints / Fractions are coerced into ``ctx``."""
        items = []
        for e, c in coeffs.items():
            c = ctx(c)
            if c:
                items.append((exponent(e, n), c))
        items.sort(key=lambda t: t[0])
        return cls(n, ctx, tuple(items))

    @classmethod
    def univariate(cls, ctx: FieldContext, coeffs: Iterable, start: int = 0) -> FiniteSeries:
        return cls.from_dict(1, ctx, {(start + i,): c for i, c in enumerate(coeffs)})

    @classmethod
    def monomial(cls, ctx: FieldContext, g: Exponent, c=1) -> FiniteSeries:
        return cls.from_dict(len(g), ctx, {g: c})

    @classmethod
    def zero(cls, n: int, ctx: FieldContext) -> FiniteSeries:
        return cls(n, ctx, ())

    @cached_property
    def coeff_map(self) -> dict[Exponent, FieldElement]:
        return dict(self.terms)

    def coeff(self, g: Exponent) -> FieldElement:
        return self.coeff_map.get(g, self.ctx.zero)

    def support(self) -> list[Exponent]:
        return [e for e, _ in self.terms]

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: FiniteSeries):
        if self.n != other.n:
            raise DimensionError(f"dimension mismatch: {self.n} != {other.n}")
        if self.ctx != other.ctx:
            raise FieldMismatchError(f"field mismatch: {self.ctx} != {other.ctx}")

    def __add__(self, other: FiniteSeries) -> FiniteSeries:
        self._check(other)
        acc = dict(self.terms)
        for e, c in other.terms:
            acc[e] = acc[e] + c if e in acc else c
        return FiniteSeries.from_dict(self.n, self.ctx, acc)

    def __neg__(self) -> FiniteSeries:
        return FiniteSeries(self.n, self.ctx, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: FiniteSeries) -> FiniteSeries:
        return self + (-other)

    def __mul__(self, other) -> FiniteSeries:
        if not isinstance(other, FiniteSeries):
            return self.scale(other)
        self._check(other)
        acc: dict[Exponent, FieldElement] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = exp_add(e1, e2)
                acc[e] = acc[e] + c1 * c2 if e in acc else c1 * c2
        return FiniteSeries.from_dict(self.n, self.ctx, acc)

    def scale(self, lam) -> FiniteSeries:
        lam = self.ctx(lam)
        return FiniteSeries.from_dict(self.n, self.ctx, {e: lam * c for e, c in self.terms})

    def shift(self, g: Exponent) -> FiniteSeries:
        """Multiply by the monomial t^g."""
        return FiniteSeries(self.n, self.ctx, tuple((exp_add(e, g), c) for e, c in self.terms))

    def valuation(self) -> Exponent:
        if not self.terms:
            raise ValueError("the zero series has no valuation")
        return self.terms[0][0]

    def corner(self) -> Exponent:
        """Componentwise minimum of the support."""
        if not self.terms:
            raise ValueError("the zero series has no support")
        return cw_min(self.support())

    def __eq__(self, other):
        if not isinstance(other, FiniteSeries):
            return NotImplemented
        return self.n == other.n and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.ctx, self.terms))

    def __str__(self):
        return format_series(self)


def variable_names(n: int) -> list[str]:
    return ["t"] if n == 1 else [f"x{i + 1}" for i in range(n)]


def _monomial_str(e: Exponent, names: list[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_series(s: FiniteSeries) -> str:
    """Human-readable form such as ``x2-x1`` or ``1-t-t^2``."""
    if s.is_zero():
        return "0"
    names = variable_names(s.n)
    out = []
    for e, c in s.terms:
        mono = _monomial_str(e, names)
        text = str(c)
        neg = text.startswith("-") and ("+" not in text[1:] and "-" not in text[1:])
        if neg:
            text = text[1:]
        if ("+" in text or "-" in text) and mono:
            text = f"({text})"
        if mono:
            body = mono if text == "1" else f"{text}*{mono}"
        else:
            body = text
        if out:
            out.append(("-" if neg else "+") + body)
        else:
            out.append(("-" if neg else "") + body)
    return "".join(out)


# -- regions and truncations --------------------------------------------------


@dataclass(frozen=True)
class Box:
    lo: Exponent
    hi: Exponent

    def __post_init__(self):
        if len(self.lo) != len(self.hi):
            raise DimensionError("box corners differ in dimension")
        if not cw_le(self.lo, self.hi):
            raise EmptyRegionError(f"empty box {self.lo}..{self.hi}")

    def __contains__(self, g: Exponent) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, g, self.hi))

    def points(self) -> list[Exponent]:
        return box_points(self.lo, self.hi)


class _All:
    """Every coefficient is known."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __contains__(self, g) -> bool:
        return True

    def __repr__(self):
        return "ALL"


ALL = _All()
KnownRegion = Union[Box, _All]


def intersect_regions(a: KnownRegion, b: KnownRegion) -> KnownRegion:
    if a is ALL:
        return b
    if b is ALL:
        return a
    lo = tuple(max(x, y) for x, y in zip(a.lo, b.lo))
    hi = tuple(min(x, y) for x, y in zip(a.hi, b.hi))
    return Box(lo, hi)


@dataclass(frozen=True)
class TruncatedSeries:
    data: FiniteSeries
    region: KnownRegion = ALL
    cone_origin: Exponent | None = None

    def __post_init__(self):
        n = self.data.n
        if isinstance(self.region, Box):
            if len(self.region.lo) != n:
                raise DimensionError("region dimension does not match the series")
            for e in self.data.support():
                if e not in self.region:
                    raise ValueError(f"stored exponent {e} lies outside the known region")
        if self.cone_origin is not None:
            if len(self.cone_origin) != n:
                raise DimensionError("cone origin dimension does not match the series")
            for e in self.data.support():
                if not cw_le(self.cone_origin, e):
                    raise ValueError(f"stored exponent {e} lies outside the cone at {self.cone_origin}")

    @classmethod
    def exact(cls, s: FiniteSeries) -> TruncatedSeries:
        """A finite series is known everywhere; its cone sits at the support corner."""
        return cls(s, ALL, s.corner() if s.terms else None)

    @classmethod
    def from_dict(cls, n, ctx, coeffs, region=ALL, cone_origin=None) -> TruncatedSeries:
        return cls(FiniteSeries.from_dict(n, ctx, coeffs), region, cone_origin)

    @property
    def n(self) -> int:
        return self.data.n

    @property
    def ctx(self) -> FieldContext:
        return self.data.ctx

    @property
    def terms(self):
        return self.data.terms

    def in_cone(self, g: Exponent) -> bool:
        return self.cone_origin is None or cw_le(self.cone_origin, g)

    def is_certified(self, g: Exponent) -> bool:
        return g in self.region or not self.in_cone(g)

    def coeff(self, g: Exponent) -> FieldElement:
        if not self.is_certified(g):
            raise UncertifiedError(f"coefficient at {g} is not certified")
        return self.data.coeff(g)

    def is_exact(self) -> bool:
        return self.region is ALL


SeriesLike = Union[FiniteSeries, TruncatedSeries]


def as_truncated(s: SeriesLike) -> TruncatedSeries:
    return s if isinstance(s, TruncatedSeries) else TruncatedSeries.exact(s)


# -- support descriptors ------------------------------------------------------


@dataclass(frozen=True)
class FiniteSet:
    exponents: frozenset

    def __init__(self, exponents: Iterable[Exponent]):
        object.__setattr__(self, "exponents", frozenset(tuple(e) for e in exponents))

    def __contains__(self, g):
        return g in self.exponents


@dataclass(frozen=True)
class PositiveOrthant:
    def __contains__(self, g):
        return in_positive_orthant(g)


@dataclass(frozen=True)
class Cone:
    origin: Exponent

    def __contains__(self, g):
        return cw_le(self.origin, g)


SupportDescriptor = Union[FiniteSet, PositiveOrthant, Cone]


@dataclass(frozen=True)
class Contained:
    pass


@dataclass(frozen=True)
class Violation:
    witness: Exponent


def support_within(s: SeriesLike, d: SupportDescriptor) -> Contained | Violation:
    for e, _ in s.terms:  # ascending lex, so the first hit is the lex-least
        if e not in d:
            return Violation(e)
    return Contained()


# -- arithmetic ---------------------------------------------------------------


def _check_pair(a: TruncatedSeries, b: TruncatedSeries):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} != {b.n}")
    if a.ctx != b.ctx:
        raise FieldMismatchError(f"field mismatch: {a.ctx} != {b.ctx}")


def _restrict(s: FiniteSeries, region: KnownRegion) -> FiniteSeries:
    if region is ALL:
        return s
    return FiniteSeries(s.n, s.ctx, tuple(t for t in s.terms if t[0] in region))


def _anchored(s: TruncatedSeries) -> bool:
    return s.region is ALL or cw_le(s.region.lo, s.cone_origin)


def s_add(a: SeriesLike, b: SeriesLike) -> TruncatedSeries:
    a, b = as_truncated(a), as_truncated(b)
    _check_pair(a, b)
    region = intersect_regions(a.region, b.region)
    # an exact zero constrains nothing and does not erase the other cone
    live = [x for x in (a, b) if not (x.is_exact() and x.data.is_zero())]
    cone = None
    if live and all(x.cone_origin is not None for x in live):
        cone = cw_min([x.cone_origin for x in live])
        if isinstance(region, Box) and all(_anchored(x) for x in live):
            # below an anchored box every point is outside the cone, so the
            # sum stays certified down to the lower of the two corners
            lows = [x.region.lo for x in live if isinstance(x.region, Box)]
            region = Box(cw_min(lows), region.hi)
    return TruncatedSeries(_restrict(a.data + b.data, region), region, cone)


def s_scale(lam, a: SeriesLike) -> TruncatedSeries:
    a = as_truncated(a)
    return TruncatedSeries(a.data.scale(lam), a.region, a.cone_origin)


def s_mul(a: SeriesLike, b: SeriesLike) -> TruncatedSeries:
    """Product of two cone-anchored truncations.

    With cones gamma1, gamma2 and box tops U1, U2 the product is exact on
    the box [gamma1+gamma2, min(U1+gamma2, U2+gamma1)].
    """
    a, b = as_truncated(a), as_truncated(b)
    _check_pair(a, b)
    for x in (a, b):
        if x.is_exact() and x.data.is_zero():
            return TruncatedSeries(FiniteSeries.zero(a.n, a.ctx), ALL, None)
    if a.cone_origin is None or b.cone_origin is None:
        raise UncertifiedError("product exactness needs a cone origin on both factors")
    g1, g2 = a.cone_origin, b.cone_origin
    for x in (a, b):
        if isinstance(x.region, Box) and not cw_le(x.region.lo, x.cone_origin):
            raise UncertifiedError("known region must reach down to the cone origin")
    prod = a.data * b.data
    cone = exp_add(g1, g2)
    if a.is_exact() and b.is_exact():
        return TruncatedSeries(prod, ALL, cone)
    tops = []
    if not a.is_exact():
        tops.append(exp_add(a.region.hi, g2))
    if not b.is_exact():
        tops.append(exp_add(b.region.hi, g1))
    hi = cw_min(tops)
    region = Box(cone, hi)  # raises EmptyRegionError when the certificate is empty
    return TruncatedSeries(_restrict(prod, region), region, cone)


def valuation(s: SeriesLike) -> Exponent:
    """The lex-least support point, refusing truncations that could hide a
    smaller one."""
    if isinstance(s, FiniteSeries):
        return s.valuation()
    if s.data.is_zero():
        raise ValueError("the zero series has no valuation")
    v = s.data.valuation()
    if s.is_exact():
        return v
    gamma = s.cone_origin
    if gamma is None or not cw_le(gamma, v):
        raise UncertifiedError("no cone certificate bounds the support from below")
    # points of gamma + N^n that are lex-below v must all lie in the region
    diff = [i for i in range(s.n) if v[i] != gamma[i]]
    if not diff:
        return v
    if diff[0] != s.n - 1:
        raise UncertifiedError("infinitely many uncertified points lie below the stored valuation")
    lo = gamma
    hi = gamma[:-1] + (v[-1] - 1,)
    if lo not in s.region or hi not in s.region:
        raise UncertifiedError("region does not cover every point below the stored valuation")
    return v


# -- division -----------------------------------------------------------------


def expand_unit_quotient(p: FiniteSeries, q: FiniteSeries, box_hi: Exponent) -> TruncatedSeries:
    """Truncated expansion of p/q when q = t^gamma * (unit power series).

    The result is certified on the box from its cone origin up to ``box_hi``.
    """
    p._check(q)
    box_hi = exponent(box_hi, p.n)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero series")
    gamma = q.corner()
    r0 = q.coeff(gamma)
    if not r0:
        raise CornerError("denominator has no corner term; use coefficient_at_lex instead")
    if p.is_zero():
        return TruncatedSeries(FiniteSeries.zero(p.n, p.ctx), ALL, None)
    origin = exp_sub(p.corner(), gamma)
    region = Box(origin, box_hi)
    # p' = p * t^-gamma, q' = q * t^-gamma; then q' s = p'
    shift_p = {exp_sub(e, gamma): c for e, c in p.terms}
    tail = [(exp_sub(e, gamma), c) for e, c in q.terms if e != gamma]
    inv0 = r0.inv()
    zero = p.ctx.zero
    vals: dict[Exponent, FieldElement] = {}
    for g in region.points():  # lex order extends the componentwise order
        acc = shift_p.get(g, zero)
        for h, c in tail:
            d = tuple(x - y for x, y in zip(g, h))
            v = vals.get(d)
            if v is not None:
                acc = acc - c * v
        vals[g] = acc * inv0
    out = TruncatedSeries(FiniteSeries.from_dict(p.n, p.ctx, vals), region, origin)
    check = s_mul(TruncatedSeries.exact(q), out)
    if check.data != _restrict(p, check.region):
        raise RuntimeError("internal error: q * expansion does not reproduce p")
    return out


class LexDivider:
    """Coefficients of p/q in k((Z^n)) by memoized lex descent.

    Writing h0 = v(q), each coefficient satisfies
    s_g = (p_{g+h0} - sum_{j>=1} q_{h_j} s_{g+h0-h_j}) / q_{h0}
    and vanishes below v(p) - v(q).  The memo table is private to the
    instance.
    """

    def __init__(self, p: FiniteSeries, q: FiniteSeries, budget: int = DEFAULT_BUDGET):
        p._check(q)
        if q.is_zero():
            raise ZeroDivisionError("division by the zero series")
        self.p = p
        self.ctx = p.ctx
        self.h0, r0 = q.terms[0]
        self.inv0 = r0.inv()
        self.tail = [(exp_sub(self.h0, h), c) for h, c in q.terms[1:]]
        self.floor = exp_sub(p.valuation(), self.h0) if not p.is_zero() else None
        # Every step g -> g + h0 - h_j subtracts a lex-positive vector, and a
        # weight w = (K^(n-1), ..., K, 1) with K above every coordinate size
        # is strictly positive on all of them.  The support of p/q lies in
        # supp(p) - h0 + (monoid of those steps), so coefficients whose weight
        # falls below every term of p vanish, and each descent is finite.
        steps = [exp_sub(h, self.h0) for h, _ in q.terms[1:]]
        K = max((abs(c) for d in steps for c in d), default=0) + 2
        self.weight = tuple(K ** (p.n - 1 - i) for i in range(p.n))
        self.wfloor = min((self._w(exp_sub(e, self.h0)) for e in p.support()), default=0)
        self.budget = budget
        self.memo: dict[Exponent, FieldElement] = {}

    def _w(self, g: Exponent) -> int:
        return sum(a * b for a, b in zip(self.weight, g))

    def _vanishes(self, g: Exponent) -> bool:
        return g < self.floor or self._w(g) < self.wfloor

    def __call__(self, g: Exponent) -> FieldElement:
        zero = self.ctx.zero
        if self.floor is None or self._vanishes(g):
            return zero
        memo = self.memo
        if g in memo:
            return memo[g]
        pending = {g}
        stack = [g]
        while stack:
            x = stack[-1]
            if x in memo:
                stack.pop()
                continue
            deps = [tuple(a + b for a, b in zip(x, d)) for d, _ in self.tail]
            missing = [d for d in deps if d not in memo and not self._vanishes(d)]
            fresh = [d for d in missing if d not in pending]
            if fresh:
                pending.update(fresh)
                if len(memo) + len(pending) > self.budget:
                    raise BudgetExceeded(f"more than {self.budget} coefficients needed")
                stack.extend(fresh)
                continue
            if missing:
                # a dependency is already on the stack below us; evaluate it first
                stack.extend(missing)
                continue
            acc = self.p.coeff(exp_add(x, self.h0))
            for (d, c), y in zip(self.tail, deps):
                v = memo.get(y)
                if v is not None:
                    acc = acc - c * v
            memo[x] = acc * self.inv0
            pending.discard(x)
            stack.pop()
        return memo[g]


def coefficient_at_lex(
    p: FiniteSeries, q: FiniteSeries, g: Exponent, budget: int = DEFAULT_BUDGET
) -> FieldElement:
    return LexDivider(p, q, budget)(exponent(g, p.n))
