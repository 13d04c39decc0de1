import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hahnseries.fields import FieldContext
from hahnseries.lattice import box_points
from hahnseries.recurrence import (
    Inconclusive,
    LinearRecurrence,
    Member,
    NonMember,
    NoneFound,
    Rational,
    TrivialRecurrenceError,
    associated_sequence,
    associated_series,
    bm_minimal,
    fit_multivariate,
    indicator_recurrence,
    inverse_witness,
    membership_check,
    product_recurrence,
    rationality_pipeline,
    reconstruct,
    verify,
)
from hahnseries.series import (
    Box,
    FiniteSeries,
    TruncatedSeries,
    UncertifiedError,
    expand_unit_quotient,
    s_add,
    s_mul,
    s_scale,
)
from conftest import rand_poly, rand_rec
from oracles import shortest_relation_brute, sympy_rank

Q = FieldContext.rationals()


def uni(*coeffs):
    return FiniteSeries.univariate(Q, coeffs)


def ser2(d):
    return FiniteSeries.from_dict(2, Q, d)


def vals(r):
    return [c.v for c in r.coeffs]


def fib_trunc(m=8):
    return expand_unit_quotient(uni(1), uni(1, -1, -1), (m - 1,))


def ex710(m=6):
    return TruncatedSeries.from_dict(2, Q, {(i, -i): 1 for i in range(m + 1)}, Box((0, -m), (m, 1)), (0, -m))


def square_lift(m):
    """sum_{i<=m} x1^(i^2) x2^(-i), certified on [(0,-m),(m^2,0)] with no cone."""
    return TruncatedSeries.from_dict(2, Q, {(i * i, -i): 1 for i in range(m + 1)}, Box((0, -m), (m * m, 0)))


# -- construction ------------------------------------------------------------------


def test_construction():
    r = LinearRecurrence.from_pairs(1, Q, [((2,), 5), ((0,), 1), ((1,), 0)])
    assert r.domain == ((0,), (1,), (2,))
    assert vals(r) == [1, 0, 5]
    with pytest.raises(TrivialRecurrenceError):
        LinearRecurrence.univariate(Q, [0, 0])
    with pytest.raises(ValueError):
        LinearRecurrence(1, Q, ((1,), (0,)), (Q(1), Q(1)))


def test_associated_series_examples():
    assert associated_series(LinearRecurrence.univariate(Q, [1, -1, -1])) == uni(1, -1, -1)
    r = LinearRecurrence.from_pairs(1, Q, [((0,), 1), ((5,), 0)])
    assert associated_series(r) == uni(1)
    rA = indicator_recurrence([(1, 2), (3, -1)], 2, Q)
    assert associated_series(rA) == ser2({(0, 0): 1})
    assert len(rA) == 3


def test_associated_sequence_examples():
    r = associated_sequence(uni(1, 1))
    assert r.domain == ((0,), (1,)) and vals(r) == [1, 1]
    m = associated_sequence(FiniteSeries.monomial(Q, (2, -1)))
    assert m.domain == ((2, -1),) and vals(m) == [1]
    s = ser2({(0, 1): 3, (4, -2): Fraction(1, 2)})
    assert associated_series(associated_sequence(s)) == s
    with pytest.raises(ValueError):
        associated_sequence(FiniteSeries.zero(1, Q))


# -- verification ------------------------------------------------------------------


def test_verify_fibonacci():
    s, r = fib_trunc(), LinearRecurrence.univariate(Q, [1, -1, -1])
    rep = verify(s, r, [(h,) for h in range(3, 8)])
    assert rep.ok and rep.checked_points == 5
    assert verify(s, r).ok


def test_verify_perturbed():
    s = fib_trunc()
    terms = dict(s.data.coeff_map)
    terms[(5,)] = Q(9)
    bad = TruncatedSeries(FiniteSeries.from_dict(1, Q, terms), s.region, s.cone_origin)
    rep = verify(bad, LinearRecurrence.univariate(Q, [1, -1, -1]), [(h,) for h in range(3, 8)])
    # s5 - s4 - s3 = 9 - 5 - 3
    assert rep.first_failure == ((5,), Q(1))


def test_verify_example_710():
    r = LinearRecurrence.from_pairs(2, Q, [((0, 0), 1), ((1, -1), -1)])
    pts = [(i, -i) for i in range(2, 6)] + [(2, -1), (3, -5)]
    assert verify(ex710(), r, pts).ok
    # the cone (0,-6) declares the truncated sum exactly, so the first point
    # past it breaks the relation
    assert verify(ex710(), r).first_failure == ((7, -7), Q(-1))


def test_verify_preconditions():
    r = LinearRecurrence.univariate(Q, [1, -1, -1])
    with pytest.raises(ValueError):
        verify(fib_trunc(), r, [(1,)])
    with pytest.raises(UncertifiedError):
        verify(fib_trunc(), r, [(9,)])


# -- membership ------------------------------------------------------------------------


def test_membership_examples():
    a = associated_sequence(uni(1, 1))
    inv = expand_unit_quotient(uni(1), uni(1, 1), (10,))
    assert membership_check(inv, a) == Member()
    two = expand_unit_quotient(uni(2), uni(1, 0, -1), (10,))
    v = membership_check(two, a)
    assert isinstance(v, NonMember) and v.witness >= (2,)
    one = TruncatedSeries.exact(uni(1))
    assert membership_check(one, LinearRecurrence.univariate(Q, [1])) == Member()


def test_example_3_8_both_recurrences_reject():
    two = expand_unit_quotient(uni(2), uni(1, 0, -1), (10,))
    for a in (uni(1, 1), uni(1, -1)):
        assert isinstance(membership_check(two, associated_sequence(a)), NonMember)
    prod = expand_unit_quotient(uni(1), uni(1, 0, -1), (10,))
    for a in (uni(1, 1), uni(1, -1)):
        assert isinstance(membership_check(prod, associated_sequence(a)), NonMember)


def test_membership_needs_cone_and_reports_inconclusive():
    r = LinearRecurrence.univariate(Q, [1, -1])
    with pytest.raises(UncertifiedError):
        membership_check(TruncatedSeries(uni(1, 1), Box((0,), (4,))), r)
    # (r* s)_1 = s_1 = 1 but 1 is not in dom(r)
    s = TruncatedSeries(uni(1, 1), Box((0,), (1,)), (0,))
    wide = LinearRecurrence.from_pairs(1, Q, [((0,), 1), ((5,), 1)])
    assert membership_check(s, wide) == NonMember((1,))
    # a box ending below the cone certifies no product coefficient at all
    blind = TruncatedSeries(FiniteSeries.zero(1, Q), Box((0,), (0,)), (1,))
    assert membership_check(blind, wide) == Inconclusive()


def test_indicator_membership():
    rA = indicator_recurrence([(1, 0), (0, 2)], 2, Q)
    inside = TruncatedSeries.exact(ser2({(0, 0): 3, (1, 0): 1, (0, 2): -2}))
    outside = TruncatedSeries.exact(ser2({(0, 0): 3, (1, 1): 1}))
    assert membership_check(inside, rA) == Member()
    assert membership_check(outside, rA) == NonMember((1, 1))


# -- Berlekamp-Massey ------------------------------------------------------------------


def test_bm_examples():
    assert vals(bm_minimal([1, 1, 2, 3, 5, 8, 13])) == [1, -1, -1]
    assert vals(bm_minimal([1, 1, 1, 1])) == [1, -1]
    assert vals(bm_minimal([1, 2, 4, 8, 16])) == [1, -2]
    assert vals(bm_minimal([0, 0, 0])) == [1]
    with pytest.raises(ValueError):
        bm_minimal([])


def test_bm_prime_field():
    F5 = FieldContext.prime(5)
    r = bm_minimal([F5(x) for x in [1, 1, 2, 3, 5, 8, 13, 21]])
    assert r.ctx == F5
    assert [c.v for c in r.coeffs] == [1, 4, 4]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=12))
def test_bm_minimality_against_brute_force(seq):
    r = bm_minimal(seq)
    L = len(r) - 1
    c = [x.v for x in r.coeffs]
    for m in range(L, len(seq)):
        assert sum(c[j] * seq[m - j] for j in range(L + 1)) == 0
    assert L == shortest_relation_brute(seq)


# -- fitting ---------------------------------------------------------------------------


def test_fit_example_710():
    r = fit_multivariate(ex710(), ((0, -1), (1, 0)))
    assert r.domain == ((0, -1), (0, 0), (1, -1), (1, 0))
    assert vals(r) == [0, 1, -1, 0]


def test_fit_constant_one():
    s = TruncatedSeries(ser2({(0, 0): 1}), Box((-2, -2), (2, 2)), (0, 0))
    r = fit_multivariate(s, ((0, 0), (0, 0)))
    assert vals(r) == [1]


def _independent_fit_rank(s, lo, hi):
    """Column rank of the fit matrix, rebuilt from scratch and ranked by sympy."""
    cand = box_points(lo, hi)
    reg = s.region
    coeffs = dict(s.data.coeff_map)
    rows = []
    for g in box_points(tuple(a + b for a, b in zip(reg.lo, lo)), tuple(a + b for a, b in zip(reg.hi, hi))):
        if g in cand:
            continue
        diffs = [tuple(a - b for a, b in zip(g, h)) for h in cand]
        if all(reg.lo[k] <= d[k] <= reg.hi[k] for d in diffs for k in range(2)):
            rows.append([coeffs[d].v if d in coeffs else Fraction(0) for d in diffs])
    return sympy_rank(rows), len(cand)


def test_fit_square_lift_has_trivial_kernel():
    s = square_lift(6)
    lo, hi = (0, -3), (3, 0)
    assert fit_multivariate(s, (lo, hi)) is None
    rank, cols = _independent_fit_rank(s, lo, hi)
    assert rank == cols


def test_fit_rejects_bad_points():
    with pytest.raises(ValueError):
        fit_multivariate(ex710(), ((0, -1), (1, 0)), [(0, 0)])
    with pytest.raises(UncertifiedError):
        fit_multivariate(ex710(), ((0, -1), (1, 0)), [(9, -1)])


# -- reconstruction --------------------------------------------------------------------


def test_reconstruct_example_710_i():
    r = LinearRecurrence.from_pairs(2, Q, [((0, 0), 1), ((1, -1), -1)])
    rec = reconstruct(lambda g: Q(1) if g[0] >= 0 and g[0] == -g[1] else Q(0), r)
    assert rec.alpha == (0, 1)
    assert rec.q == ser2({(0, 1): 1, (1, 0): -1})
    assert rec.p == ser2({(0, 1): 1})
    assert reconstruct(ex710(), r).p == rec.p


def test_reconstruct_example_710_ii():
    r = LinearRecurrence.from_pairs(2, Q, [((0, 0), 1), ((1, -1), 1)])
    rec = reconstruct(TruncatedSeries.exact(ser2({(0, 0): 1})), r)
    assert rec.alpha == (0, 1)
    assert rec.q == ser2({(0, 1): 1, (1, 0): 1})
    assert rec.p == rec.q


def test_reconstruct_fibonacci():
    rec = reconstruct(fib_trunc(), LinearRecurrence.univariate(Q, [1, -1, -1]))
    assert rec.alpha == (0,)
    assert rec.p == uni(1) and rec.q == uni(1, -1, -1)


def test_reconstruct_missing_coefficient():
    r = LinearRecurrence.univariate(Q, [1, -1, -1])
    with pytest.raises(UncertifiedError):
        reconstruct(TruncatedSeries(uni(1), Box((0,), (0,)), (0,)), r)


# -- pipeline --------------------------------------------------------------------------


def test_pipeline_fibonacci():
    res = rationality_pipeline(fib_trunc(12))
    assert isinstance(res, Rational)
    assert res.p == uni(1) and res.q == uni(1, -1, -1)
    assert verify(fib_trunc(12), res.recurrence).ok


def test_pipeline_example_710():
    res = rationality_pipeline(ex710())
    assert isinstance(res, Rational)
    p, q = ser2({(0, 1): 1}), ser2({(0, 1): 1, (1, 0): -1})
    assert res.p * q == p * res.q


def test_pipeline_square_lift_none_found():
    assert rationality_pipeline(square_lift(6), 3) == NoneFound(3)


def test_pipeline_fixed_point_small():
    rng = random.Random(3)
    for n in (1, 2):
        for _ in range(15):
            p, q = rand_poly(rng, n, 2, unit_corner=False), rand_poly(rng, n, 2)
            s = expand_unit_quotient(p, q, (7,) * n)
            res = rationality_pipeline(s)
            assert isinstance(res, Rational)
            assert res.p * q == p * res.q
            assert verify(s, res.recurrence).ok


# -- closure constructions -------------------------------------------------------------


def test_product_recurrence_examples():
    a, b = associated_sequence(uni(1, 1)), associated_sequence(uni(1, -1))
    assert vals(product_recurrence(a, a)) == [1, 2, 1]
    r = product_recurrence(b, a)
    assert r.domain == ((0,), (1,), (2,)) and vals(r) == [1, 0, -1]
    assert vals(product_recurrence(associated_sequence(uni(1, 0, 1)), a)) == [1, 1, 1, 1]


def test_inverse_witness_examples():
    r = LinearRecurrence.univariate(Q, [1, -1, -1])
    assert vals(inverse_witness(r, uni(1))) == [1, 0, 0]
    r2 = LinearRecurrence.univariate(Q, [2, 5])
    a = inverse_witness(r2, uni(1, 1))
    assert a.domain == r2.domain and vals(a) == [1, 1]
    with pytest.raises(ValueError):
        inverse_witness(r2, uni(0, 0, 1))
    # (b / r*)^-1 = r* / b is a member of <a>
    s = expand_unit_quotient(associated_series(r2), uni(1, 1), (10,))
    assert membership_check(s, a) == Member()


def _member_of(rng, r, box):
    n = r.n
    b = FiniteSeries.from_dict(n, Q, {h: rng.randint(-3, 3) for h in r.domain})
    return expand_unit_quotient(b, associated_series(r), box)


def test_closure_properties_sampled():
    rng = random.Random(5)
    for n in (1, 2):
        box = (6,) * n
        for _ in range(10):
            r1, r2 = rand_rec(rng, n, 1), rand_rec(rng, n, 1)
            s1, s2 = _member_of(rng, r1, box), _member_of(rng, r1, box)
            lam = Q(rng.randint(-3, 3))
            assert membership_check(s_add(s1, s_scale(lam, s2)), r1) == Member()
            assert membership_check(TruncatedSeries.exact(FiniteSeries.monomial(Q, (0,) * n)), r1) == Member()
            t = _member_of(rng, r2, box)
            rp = product_recurrence(r1, r2)
            assert membership_check(s_add(s1, t), rp) == Member()
            assert membership_check(s_mul(s1, t), rp) == Member()
