"""JSON file formats for series, recurrences, fractions, characters and lifts."""

from __future__ import annotations

from typing import Any

from .fields import CoefficientAutomorphism, FieldContext, parse_element
from .hankel import HankelMatrix, RankProfile, StabilizedAt
from .lattice import Exponent, as_map, exponent
from .lifts import ExponentCharacter
from .recurrence import LinearRecurrence, Reconstruction, VerificationReport
from .series import ALL, Box, FiniteSeries, TruncatedSeries


class FormatError(ValueError):
    pass


def resolve_field(obj: Any, override: FieldContext | None) -> FieldContext:
    """The file's field, checked against an explicit override."""
    declared = None
    if isinstance(obj, dict) and obj.get("field") is not None:
        declared = FieldContext.from_json(obj["field"])
    if override is not None and declared is not None and override != declared:
        raise FormatError(f"file declares field {declared} but {override} was requested")
    return override or declared or FieldContext()


def _exp(x, n: int | None) -> Exponent:
    if isinstance(x, int):
        x = [x]
    if not isinstance(x, list):
        raise FormatError(f"exponent must be an integer array, got {x!r}")
    return exponent(x, n)


def _terms_to_json(s: FiniteSeries) -> list[dict]:
    return [{"e": list(e), "c": str(c)} for e, c in s.terms]


def _terms_from_json(items, n: int, ctx: FieldContext) -> FiniteSeries:
    acc = {}
    for t in items:
        e = _exp(t["e"], n)
        if e in acc:
            raise FormatError(f"duplicate exponent {list(e)}")
        acc[e] = parse_element(t["c"], ctx)
    return FiniteSeries.from_dict(n, ctx, acc)


def series_to_json(s) -> dict:
    if isinstance(s, FiniteSeries):
        # a bare term list from a downgraded lift carries no certificate
        return {"n": s.n, "field": s.ctx.to_json(), "cone_origin": None, "region": None,
                "downgraded": True, "terms": _terms_to_json(s)}
    region = "all" if s.region is ALL else {"lo": list(s.region.lo), "hi": list(s.region.hi)}
    return {
        "n": s.n,
        "field": s.ctx.to_json(),
        "cone_origin": None if s.cone_origin is None else list(s.cone_origin),
        "region": region,
        "terms": _terms_to_json(s.data),
    }


def series_from_json(obj: dict, field: FieldContext | None = None) -> TruncatedSeries:
    ctx = resolve_field(obj, field)
    n = int(obj["n"])
    data = _terms_from_json(obj.get("terms", []), n, ctx)
    reg = obj.get("region", "all")
    if reg is None:
        raise FormatError("series carries no exactness certificate")
    region = ALL if reg == "all" else Box(_exp(reg["lo"], n), _exp(reg["hi"], n))
    cone = obj.get("cone_origin")
    cone = None if cone is None else _exp(cone, n)
    if region is ALL and cone is None and data.terms:
        cone = data.corner()
    return TruncatedSeries(data, region, cone)


def is_series_json(obj) -> bool:
    return isinstance(obj, dict) and "terms" in obj


def is_recurrence_json(obj) -> bool:
    return isinstance(obj, dict) and "domain" in obj and "coeffs" in obj


def recurrence_to_json(r: LinearRecurrence) -> dict:
    return {
        "n": r.n,
        "field": r.ctx.to_json(),
        "domain": [list(h) for h in r.domain],
        "coeffs": [str(c) for c in r.coeffs],
    }


def recurrence_from_json(obj: dict, field: FieldContext | None = None) -> LinearRecurrence:
    ctx = resolve_field(obj, field)
    n = int(obj["n"])
    dom, coeffs = obj["domain"], obj["coeffs"]
    if len(dom) != len(coeffs):
        raise FormatError("domain and coeffs differ in length")
    pts = [_exp(h, n) for h in dom]
    if len(set(pts)) != len(pts):
        raise FormatError("duplicate domain point")
    return LinearRecurrence.from_pairs(n, ctx, [(h, parse_element(c, ctx)) for h, c in zip(pts, coeffs)])


def coeff_list_from_json(obj, field: FieldContext | None = None):
    """A univariate coefficient list: a bare array or ``{"coeffs": [...]}``."""
    ctx = resolve_field(obj, field)
    items = obj.get("coeffs") if isinstance(obj, dict) else obj
    if not isinstance(items, list):
        raise FormatError("expected a list of coefficients")
    if not items:
        raise FormatError("coefficient list is empty")
    return ctx, [parse_element(c, ctx) for c in items]


def coeff_list_as_series(ctx: FieldContext, coeffs) -> TruncatedSeries:
    """Read s_0..s_{m-1} as a truncation certified on [0, m-1] with cone at 0."""
    data = FiniteSeries.univariate(ctx, coeffs)
    return TruncatedSeries(data, Box((0,), (len(coeffs) - 1,)), (0,))


def fraction_to_json(p: FiniteSeries, q: FiniteSeries, alpha: Exponent | None = None) -> dict:
    out = {"n": p.n, "field": p.ctx.to_json()}
    if alpha is not None:
        out["alpha"] = list(alpha)
    out.update({"p": str(p), "q": str(q), "p_terms": _terms_to_json(p), "q_terms": _terms_to_json(q)})
    return out


def reconstruction_to_json(rec: Reconstruction) -> dict:
    return fraction_to_json(rec.p, rec.q, rec.alpha)


def fraction_from_json(obj: dict, field: FieldContext | None = None) -> tuple[FiniteSeries, FiniteSeries]:
    ctx = resolve_field(obj, field)
    n = int(obj["n"])
    return _terms_from_json(obj["p_terms"], n, ctx), _terms_from_json(obj["q_terms"], n, ctx)


def character_from_json(obj: dict, field: FieldContext | None = None) -> ExponentCharacter:
    ctx = resolve_field(obj, field)
    return ExponentCharacter(tuple(parse_element(v, ctx) for v in obj["values"]))


def lift_spec_from_json(obj: dict, ctx: FieldContext):
    rho = CoefficientAutomorphism(ctx, obj.get("rho", "id"))
    return rho, as_map(obj["tau"])


def report_to_json(rep: VerificationReport) -> dict:
    fail = None
    if rep.first_failure is not None:
        g, res = rep.first_failure
        fail = {"at": list(g), "residual": str(res)}
    return {"checked_points": rep.checked_points, "first_failure": fail}


def matrix_to_json(H: HankelMatrix) -> list[list[str]]:
    return H.to_json()


def profile_to_json(p: RankProfile) -> dict:
    v = p.verdict
    verdict = {"kind": "StabilizedAt", "rank": v.rank} if isinstance(v, StabilizedAt) \
        else {"kind": "FullUpTo", "size": v.size}
    return {"ranks": [[N, r] for N, r in p.ranks], "verdict": verdict, "evidence_only": True}
