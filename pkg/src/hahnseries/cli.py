"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
format error, 3 coefficient budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import formats as fmt
from .fields import FieldContext
from .hankel import Fail, FullUpTo, build_hankel, progression_check, rank_profile
from .lattice import cw_min, exp_sub
from .lifts import canonical_lift, internal_twist, lift_on_sequence, twist_on_sequence
from .recurrence import (
    Inconclusive,
    Member,
    NonMember,
    NoneFound,
    bm_minimal,
    fit_multivariate,
    membership_check,
    rationality_pipeline,
    reconstruct,
    verify,
)
from .series import DEFAULT_BUDGET, BudgetExceeded, LexDivider, expand_unit_quotient

DEFAULT_BOX = 8
DEFAULT_NMAX = 9
DEFAULT_DEGREE = 3


class UsageError(Exception):
    pass


def _load(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from exc


def _parse_exp(text: str) -> tuple[int, ...]:
    body = text.strip().strip("[]()")
    try:
        return tuple(int(x) for x in body.split(",") if x.strip())
    except ValueError as exc:
        raise UsageError(f"bad exponent {text!r}; write e.g. 1,-1") from exc


def _field(args) -> FieldContext | None:
    if args.field is None:
        return None
    try:
        return FieldContext.from_flag(args.field)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _samples(obj, field):
    """Series file or univariate coefficient list, as a truncated series."""
    if fmt.is_series_json(obj):
        return fmt.series_from_json(obj, field)
    return fmt.coeff_list_as_series(*fmt.coeff_list_from_json(obj, field))


# -- subcommands: each returns (json payload, exit code) ----------------------


def cmd_detect(args):
    ctx, coeffs = fmt.coeff_list_from_json(_load(args.coeffs), _field(args))
    return fmt.recurrence_to_json(bm_minimal(coeffs, ctx)), 0


def cmd_fit(args):
    field = _field(args)
    s = _samples(_load(args.series), field)
    if (args.lo is None) != (args.hi is None):
        raise UsageError("--lo and --hi must be given together")
    if args.lo is not None:
        r = fit_multivariate(s, (_parse_exp(args.lo), _parse_exp(args.hi)))
        if r is None:
            return {"verdict": "NoneFound"}, 1
        return fmt.recurrence_to_json(r), 0
    res = rationality_pipeline(s, args.max_degree, args.budget)
    if isinstance(res, NoneFound):
        return {"verdict": "NoneFound", "max_degree": res.max_degree, "evidence_only": True}, 1
    out = {"verdict": "Rational", "degree": res.degree}
    out.update(fmt.fraction_to_json(res.p, res.q))
    out["recurrence"] = fmt.recurrence_to_json(res.recurrence)
    return out, 0


def cmd_reconstruct(args):
    field = _field(args)
    s = _samples(_load(args.samples), field)
    r = fmt.recurrence_from_json(_load(args.recurrence), field or s.ctx)
    return fmt.reconstruction_to_json(reconstruct(s, r)), 0


def cmd_expand(args):
    p, q = fmt.fraction_from_json(_load(args.fraction), _field(args))
    if args.hi is not None:
        hi = _parse_exp(args.hi)
    else:
        if p.is_zero() or q.is_zero():
            hi = (args.box - 1,) * p.n
        else:
            origin = exp_sub(cw_min(p.support()), cw_min(q.support()))
            hi = tuple(c + args.box - 1 for c in origin)
    return fmt.series_to_json(expand_unit_quotient(p, q, hi)), 0


def cmd_coeff(args):
    p, q = fmt.fraction_from_json(_load(args.fraction), _field(args))
    g = _parse_exp(args.at)
    c = LexDivider(p, q, args.budget)(g)
    return {"at": list(g), "c": str(c)}, 0


def cmd_hankel(args):
    s = _samples(_load(args.series), _field(args))
    g = _parse_exp(args.g)
    verdict = progression_check(s, g)
    if isinstance(verdict, Fail):
        return {"verdict": "Fail", "witness": list(verdict.witness)}, 1
    prof = rank_profile(s, g, args.N)
    out = {"base": list(verdict.base)}
    out.update(fmt.profile_to_json(prof))
    if args.matrix:
        out["matrix"] = fmt.matrix_to_json(build_hankel(s, g, args.N))
    return out, 1 if isinstance(prof.verdict, FullUpTo) else 0


def cmd_verify(args):
    field = _field(args)
    s = _samples(_load(args.series), field)
    r = fmt.recurrence_from_json(_load(args.recurrence), field or s.ctx)
    rep = verify(s, r)
    return fmt.report_to_json(rep), 0 if rep.ok else 1


def cmd_member(args):
    field = _field(args)
    s = _samples(_load(args.series), field)
    r = fmt.recurrence_from_json(_load(args.recurrence), field or s.ctx)
    v = membership_check(s, r)
    if isinstance(v, Member):
        return {"verdict": "Member"}, 0
    if isinstance(v, NonMember):
        return {"verdict": "NonMember", "witness": list(v.witness)}, 1
    assert isinstance(v, Inconclusive)
    return {"verdict": "Inconclusive"}, 1


def _action_target(args):
    obj = _load(args.input)
    field = _field(args)
    if fmt.is_recurrence_json(obj):
        return fmt.recurrence_from_json(obj, field), True
    return fmt.series_from_json(obj, field), False


def cmd_lift(args):
    target, is_rec = _action_target(args)
    rho, tau = fmt.lift_spec_from_json(_load(args.spec), target.ctx)
    if is_rec:
        return fmt.recurrence_to_json(lift_on_sequence(rho, tau, target)), 0
    return fmt.series_to_json(canonical_lift(rho, tau, target)), 0


def cmd_twist(args):
    target, is_rec = _action_target(args)
    x = fmt.character_from_json(_load(args.character), target.ctx)
    if is_rec:
        return fmt.recurrence_to_json(twist_on_sequence(x, target)), 0
    return fmt.series_to_json(internal_twist(x, target)), 0


# -- output -------------------------------------------------------------------


def _pretty(obj, indent: str = "") -> str:
    if isinstance(obj, dict) and "terms" in obj:
        head = {k: v for k, v in obj.items() if k != "terms"}
        rows = [(str(t["e"]), t["c"]) for t in obj["terms"]]
        return _pretty(head, indent) + "\n" + _table(("exponent", "coefficient"), rows, indent)
    if isinstance(obj, dict) and "domain" in obj and "coeffs" in obj:
        head = {k: v for k, v in obj.items() if k not in ("domain", "coeffs")}
        rows = [(str(h), c) for h, c in zip(obj["domain"], obj["coeffs"])]
        return _pretty(head, indent) + "\n" + _table(("domain point", "value"), rows, indent)
    if isinstance(obj, dict):
        width = max((len(k) for k in obj), default=0)
        lines = []
        for k, v in obj.items():
            if isinstance(v, dict):
                lines.append(f"{indent}{k}:")
                lines.append(_pretty(v, indent + "  "))
            elif k == "matrix":
                lines.append(f"{indent}{k}:")
                lines.append(_table(None, [tuple(r) for r in v], indent + "  "))
            else:
                lines.append(f"{indent}{k.ljust(width)}  {json.dumps(v)}")
        return "\n".join(lines)
    return indent + json.dumps(obj)


def _table(header, rows, indent: str) -> str:
    allrows = ([tuple(header)] if header else []) + [tuple(map(str, r)) for r in rows]
    if not allrows:
        return ""
    widths = [max(len(r[i]) for r in allrows) for i in range(len(allrows[0]))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in allrows]
    if header:
        lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(indent + ln for ln in lines)


def _emit(payload, args) -> None:
    text = _pretty(payload) if args.pretty else json.dumps(payload)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="coefficient field: Q, Qi or Fp:<p>")
    common.add_argument("--out", help="write the result here instead of stdout")
    common.add_argument("--pretty", action="store_true", help="human-readable tables")
    common.add_argument("--jobs", type=int, default=1, help="worker count (output is identical for any value)")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="coefficient budget for lex descent")

    parser = argparse.ArgumentParser(prog="hahnseries", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=func)
        return sp

    sp = add("detect", cmd_detect, "minimal univariate recurrence (Berlekamp-Massey)")
    sp.add_argument("coeffs")

    sp = add("fit", cmd_fit, "fit a recurrence on a box, or search for a rational form")
    sp.add_argument("series")
    sp.add_argument("--lo", help="domain box lower corner")
    sp.add_argument("--hi", help="domain box upper corner")
    sp.add_argument("--max-degree", type=int, default=DEFAULT_DEGREE)

    sp = add("reconstruct", cmd_reconstruct, "numerator and denominator from a recurrence")
    sp.add_argument("samples")
    sp.add_argument("recurrence")

    sp = add("expand", cmd_expand, "truncated expansion of p/q")
    sp.add_argument("fraction")
    sp.add_argument("--box", type=int, default=DEFAULT_BOX, help="box side length")
    sp.add_argument("--hi", help="explicit upper corner of the box")

    sp = add("coeff", cmd_coeff, "one coefficient of p/q in lex order")
    sp.add_argument("fraction")
    sp.add_argument("--at", required=True)

    sp = add("hankel", cmd_hankel, "Hankel rank profile")
    sp.add_argument("series")
    sp.add_argument("--g", required=True, help="increment")
    sp.add_argument("--N", type=int, default=DEFAULT_NMAX)
    sp.add_argument("--matrix", action="store_true", help="include the N x N matrix")

    sp = add("verify", cmd_verify, "check a recurrence against a series")
    sp.add_argument("series")
    sp.add_argument("recurrence")

    sp = add("member", cmd_member, "membership in the set a recurrence determines")
    sp.add_argument("series")
    sp.add_argument("recurrence")

    sp = add("lift", cmd_lift, "canonical lift of a series or recurrence")
    sp.add_argument("spec")
    sp.add_argument("input")

    sp = add("twist", cmd_twist, "internal twist of a series or recurrence")
    sp.add_argument("character")
    sp.add_argument("input")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.jobs < 1 or args.budget < 1:
            raise UsageError("--jobs and --budget must be positive")
        if getattr(args, "N", 1) < 1 or getattr(args, "box", 1) < 1 or getattr(args, "max_degree", 0) < 0:
            raise UsageError("numeric options must be positive")
        payload, code = args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(payload, args)
    return code


if __name__ == "__main__":
    sys.exit(main())
