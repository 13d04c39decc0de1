"""Generalised linear recurrence sequences with finite domain.

A recurrence r = (h_i, r_i) determines the set of series s with
sum_i r_i s_{g - h_i} = 0 for every g outside dom(r); equivalently
s = b / r* for some b supported inside dom(r).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from . import linalg
from .fields import FieldContext, FieldElement, FieldMismatchError
from .lattice import (
    DimensionError,
    Exponent,
    box_points,
    cw_max,
    cw_min,
    exp_add,
    exp_sub,
    exponent,
    zero,
)
from .series import (
    ALL,
    CornerError,
    EmptyRegionError,
    FiniteSeries,
    LexDivider,
    SeriesLike,
    TruncatedSeries,
    UncertifiedError,
    as_truncated,
    expand_unit_quotient,
    s_mul,
)


class TrivialRecurrenceError(ValueError):
    pass


@dataclass(frozen=True)
class LinearRecurrence:
    n: int
    ctx: FieldContext
    domain: tuple[Exponent, ...]
    coeffs: tuple[FieldElement, ...]

    def __post_init__(self):
        if len(self.domain) != len(self.coeffs):
            raise ValueError("domain and coefficient lists differ in length")
        for i, h in enumerate(self.domain):
            if len(h) != self.n:
                raise DimensionError(f"domain point {h} is not in Z^{self.n}")
            if i and not self.domain[i - 1] < h:
                raise ValueError("domain must be strictly increasing in lex order")
        for c in self.coeffs:
            if c.ctx != self.ctx:
                raise FieldMismatchError(f"coefficient of {c.ctx} in a recurrence over {self.ctx}")
        if not any(self.coeffs):
            raise TrivialRecurrenceError("trivial recurrences carry no information")

    @classmethod
    def from_pairs(cls, n: int, ctx: FieldContext, pairs: Iterable) -> LinearRecurrence:
        """Build from ``(exponent, value)`` pairs in any order; zeros are kept."""
        items = sorted((exponent(h, n), ctx(c)) for h, c in pairs)
        return cls(n, ctx, tuple(h for h, _ in items), tuple(c for _, c in items))

    @classmethod
    def univariate(cls, ctx: FieldContext, coeffs: Sequence) -> LinearRecurrence:
        return cls.from_pairs(1, ctx, [((i,), c) for i, c in enumerate(coeffs)])

    def __len__(self):
        return len(self.domain)

    def items(self):
        return zip(self.domain, self.coeffs)

    def value(self, h: Exponent) -> FieldElement:
        for d, c in self.items():
            if d == h:
                return c
        raise KeyError(h)


def indicator_recurrence(A: Iterable[Exponent], n: int, ctx: FieldContext) -> LinearRecurrence:
    """The sequence on A u {0} taking 1 at 0 and 0 elsewhere."""
    origin = zero(n)
    pts = {exponent(a, n) for a in A} | {origin}
    return LinearRecurrence.from_pairs(n, ctx, [(h, 1 if h == origin else 0) for h in pts])


def associated_series(r: LinearRecurrence) -> FiniteSeries:
    return FiniteSeries.from_dict(r.n, r.ctx, dict(r.items()))


def associated_sequence(s: SeriesLike) -> LinearRecurrence:
    s = s.data if isinstance(s, TruncatedSeries) else s
    if s.is_zero():
        raise ValueError("the zero series has no associated sequence")
    return LinearRecurrence(s.n, s.ctx, tuple(e for e, _ in s.terms), tuple(c for _, c in s.terms))


# -- verification and membership ---------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    checked_points: int
    first_failure: tuple[Exponent, FieldElement] | None = None

    @property
    def ok(self) -> bool:
        return self.first_failure is None


def equation_points(s: TruncatedSeries, domain: Sequence[Exponent]) -> list[Exponent]:
    """Every g outside ``domain`` whose relation only reads certified
    coefficients and is not trivially 0 = 0, ascending in lex."""
    lo_d, hi_d = cw_min(domain), cw_max(domain)
    if s.region is ALL:
        if s.data.is_zero():
            return []
        lo = exp_add(s.data.corner(), lo_d)
        hi = exp_add(cw_max(s.data.support()), hi_d)
    else:
        base = s.region.lo if s.cone_origin is None else cw_min([s.cone_origin, s.region.lo])
        lo = exp_add(base, lo_d)
        hi = exp_add(s.region.hi, hi_d)
    dom = set(domain)
    out = []
    for g in box_points(lo, hi):
        if g in dom:
            continue
        diffs = [exp_sub(g, h) for h in domain]
        if not all(s.is_certified(d) for d in diffs):
            continue
        if s.cone_origin is not None and not any(s.in_cone(d) for d in diffs):
            continue
        out.append(g)
    return out


def verify(
    s: SeriesLike, r: LinearRecurrence, test_points: Iterable[Exponent] | None = None
) -> VerificationReport:
    s = as_truncated(s)
    if s.n != r.n:
        raise DimensionError("series and recurrence differ in dimension")
    if test_points is None:
        pts = equation_points(s, r.domain)
    else:
        pts = sorted(exponent(g, r.n) for g in set(map(tuple, test_points)))
    dom = set(r.domain)
    count = 0
    for g in pts:
        if g in dom:
            raise ValueError(f"test point {g} lies inside dom(r)")
        res = s.ctx.zero
        for h, c in r.items():
            d = exp_sub(g, h)
            if not s.is_certified(d):
                raise UncertifiedError(f"test point {g} depends on uncertified coefficient {d}")
            if c:
                res = res + c * s.data.coeff(d)
        count += 1
        if res:
            return VerificationReport(count, (g, res))
    return VerificationReport(count, None)


@dataclass(frozen=True)
class Member:
    pass


@dataclass(frozen=True)
class NonMember:
    witness: Exponent


@dataclass(frozen=True)
class Inconclusive:
    pass


def membership_check(s: SeriesLike, r: LinearRecurrence) -> Member | NonMember | Inconclusive:
    """Test supp(r* s) within dom(r) on the certified part of the product."""
    s = as_truncated(s)
    if s.cone_origin is None and not (s.is_exact() and s.data.is_zero()):
        raise UncertifiedError("membership needs a cone certificate on the series")
    try:
        prod = s_mul(TruncatedSeries.exact(associated_series(r)), s)
    except EmptyRegionError:
        return Inconclusive()
    dom = set(r.domain)
    for e, _ in prod.terms:
        if e not in dom:
            return NonMember(e)
    return Member()


# -- univariate detection -----------------------------------------------------


def bm_minimal(coeffs: Sequence, ctx: FieldContext | None = None) -> LinearRecurrence:
    """Berlekamp-Massey: the shortest relation sum_j c_j s_{m-j} = 0 with c_0 = 1."""
    if not coeffs:
        raise ValueError("need at least one coefficient")
    if ctx is None:
        ctx = coeffs[0].ctx if isinstance(coeffs[0], FieldElement) else FieldContext()
    s = [ctx(c) for c in coeffs]
    one = ctx.one
    C, B = [one], [one]
    L, m, b = 0, 1, one
    for i in range(len(s)):
        d = s[i]
        for j in range(1, L + 1):
            if j < len(C):
                d = d + C[j] * s[i - j]
        if not d:
            m += 1
            continue
        coef = d / b
        T = list(C)
        need = len(B) + m
        if len(C) < need:
            C = C + [ctx.zero] * (need - len(C))
        for j, x in enumerate(B):
            C[j + m] = C[j + m] - coef * x
        if 2 * L <= i:
            L = i + 1 - L
            B, b, m = T, d, 1
        else:
            m += 1
    C = (C + [ctx.zero] * (L + 1))[: L + 1]
    return LinearRecurrence.univariate(ctx, C)


# -- multivariate fitting -----------------------------------------------------


def fit_multivariate(
    s: SeriesLike,
    domain_box: tuple[Exponent, Exponent],
    fit_points: Iterable[Exponent] | None = None,
) -> LinearRecurrence | None:
    """Solve sum_h r_h s_{g-h} = 0 over g in the fit set for r on the box.

    Returns the kernel vector of the first free column, scaled so the
    lex-least nonzero coefficient is 1, or ``None`` if the kernel is trivial.
    """
    s = as_truncated(s)
    lo, hi = (exponent(x, s.n) for x in domain_box)
    cand = box_points(lo, hi)
    if not cand:
        raise ValueError("empty domain box")
    if fit_points is None:
        pts = equation_points(s, cand)
    else:
        pts = sorted(set(exponent(g, s.n) for g in fit_points))
        inside = set(cand)
        for g in pts:
            if g in inside:
                raise ValueError(f"fit point {g} lies inside the domain box")
            for h in cand:
                if not s.is_certified(exp_sub(g, h)):
                    raise UncertifiedError(f"fit point {g} needs uncertified coefficient {exp_sub(g, h)}")
    if not pts:
        raise ValueError("no usable fit points")
    coeff = s.data.coeff
    rows = [[coeff(tuple(a - b for a, b in zip(g, h))) for h in cand] for g in pts]
    basis = linalg.nullspace(rows, len(cand), s.ctx)
    if not basis:
        return None
    v = basis[0]
    lead = next(x for x in v if x)
    v = [x / lead for x in v]
    return LinearRecurrence(s.n, s.ctx, tuple(cand), tuple(v))


# -- reconstruction -----------------------------------------------------------


@dataclass(frozen=True)
class Reconstruction:
    p: FiniteSeries
    q: FiniteSeries
    alpha: Exponent


Oracle = Union[SeriesLike, Callable[[Exponent], FieldElement]]


def _oracle_fn(samples: Oracle) -> Callable[[Exponent], FieldElement]:
    if isinstance(samples, FiniteSeries):
        return samples.coeff
    if isinstance(samples, TruncatedSeries):
        return samples.coeff
    return samples


def reconstruct(samples: Oracle, r: LinearRecurrence) -> Reconstruction:
    """Numerator and denominator polynomials from a recurrence and the
    finitely many coefficients s_{h_i - h_j}."""
    get = _oracle_fn(samples)
    alpha = tuple(-c for c in cw_min(r.domain))
    q = {exp_add(h, alpha): c for h, c in r.items()}
    p = {}
    for hi in r.domain:
        acc = r.ctx.zero
        for hj, c in r.items():
            if not c:
                continue
            d = exp_sub(hi, hj)
            try:
                v = get(d)
            except (KeyError, UncertifiedError) as exc:
                raise UncertifiedError(f"oracle cannot supply coefficient at {d}") from exc
            acc = acc + c * v
        p[exp_add(hi, alpha)] = acc
    return Reconstruction(
        FiniteSeries.from_dict(r.n, r.ctx, p), FiniteSeries.from_dict(r.n, r.ctx, q), alpha
    )


@dataclass(frozen=True)
class Rational:
    p: FiniteSeries
    q: FiniteSeries
    recurrence: LinearRecurrence
    degree: int


@dataclass(frozen=True)
class NoneFound:
    """No fraction found up to ``max_degree``; evidence, not a proof."""

    max_degree: int


def normalize_fraction(p: FiniteSeries, q: FiniteSeries) -> tuple[FiniteSeries, FiniteSeries]:
    """Cancel the common monomial factor and make q's lex-least coefficient 1."""
    supp = p.support() + q.support()
    m = tuple(-c for c in cw_min(supp))
    lead = q.terms[0][1].inv()
    return p.shift(m).scale(lead), q.shift(m).scale(lead)


def _agrees(s: TruncatedSeries, p: FiniteSeries, q: FiniteSeries, budget: int) -> bool:
    if s.region is ALL:
        if s.data.is_zero():
            return p.is_zero()
        pts = box_points(s.data.corner(), cw_max(s.data.support()))
        top = cw_max(s.data.support())
    else:
        pts = s.region.points()
        top = s.region.hi
    if p.is_zero():
        return s.data.is_zero() or all(not s.data.coeff(g) for g in pts)
    try:
        exp = expand_unit_quotient(p, q, top)
        get = exp.coeff
    except (CornerError, EmptyRegionError):
        get = LexDivider(p, q, budget)
    for g in pts:
        if get(g) != s.data.coeff(g):
            return False
    return True


def rationality_pipeline(
    s: SeriesLike, max_domain_degree: int = 3, budget: int = 10**6
) -> Rational | NoneFound:
    """Search domain boxes [0, d]^n for d = 0..max_domain_degree.

    A candidate is accepted only after its fraction re-expands to every
    certified coefficient of ``s``.
    """
    s = as_truncated(s)
    for d in range(max_domain_degree + 1):
        box = (zero(s.n), (d,) * s.n)
        try:
            r = fit_multivariate(s, box)
        except ValueError:
            continue
        if r is None:
            continue
        try:
            rec = reconstruct(s, r)
        except UncertifiedError:
            continue
        if rec.q.is_zero():
            continue
        p, q = normalize_fraction(rec.p, rec.q)
        if _agrees(s, p, q, budget):
            return Rational(p, q, r, d)
    return NoneFound(max_domain_degree)


# -- closure constructions ----------------------------------------------------


def product_recurrence(r1: LinearRecurrence, r2: LinearRecurrence) -> LinearRecurrence:
    if r1.n != r2.n or r1.ctx != r2.ctx:
        raise ValueError("recurrences live over different groups or fields")
    prod = associated_series(r1) * associated_series(r2)
    dom = {exp_add(a, b) for a in r1.domain for b in r2.domain}
    return LinearRecurrence.from_pairs(r1.n, r1.ctx, [(g, prod.coeff(g)) for g in dom])


def inverse_witness(r: LinearRecurrence, b: FiniteSeries) -> LinearRecurrence:
    """The sequence a on dom(r) with a* = b."""
    if b.is_zero():
        raise ValueError("b must be nonzero")
    dom = set(r.domain)
    for e in b.support():
        if e not in dom:
            raise ValueError(f"support point {e} of b lies outside dom(r)")
    return LinearRecurrence(r.n, r.ctx, r.domain, tuple(b.coeff(h) for h in r.domain))
