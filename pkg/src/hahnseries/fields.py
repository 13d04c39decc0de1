"""Exact coefficient fields: Q, Q(i) and prime fields F_p."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Q, QI, FP = "Q", "Qi", "Fp"

_RATIONAL = r"-?\d+(?:/\d+)?"
_RATIONAL_RE = re.compile(rf"^{_RATIONAL}$")
_GAUSS_RE = re.compile(rf"^({_RATIONAL})(?:([+-])(-?\d+(?:/\d+)?)i)?$")
_DIGITS_RE = re.compile(r"^\d+$")


class FieldMismatchError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    # deterministic below 2**64
    from sympy import isprime

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldContext:
    kind: str = Q
    p: int | None = None

    def __post_init__(self):
        if self.kind not in (Q, QI, FP):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == FP:
            if self.p is None or self.p < 2 or self.p >= 2**61 or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime p < 2**61, got {self.p}")
        elif self.p is not None:
            raise ValueError("p is only meaningful for prime fields")

    @classmethod
    def rationals(cls) -> FieldContext:
        return cls(Q)

    @classmethod
    def gaussian(cls) -> FieldContext:
        return cls(QI)

    @classmethod
    def prime(cls, p: int) -> FieldContext:
        return cls(FP, p)

    @classmethod
    def from_flag(cls, text: str) -> FieldContext:
        """Parse the CLI form ``Q``, ``Qi`` or ``Fp:<p>``."""
        if text in (Q, QI):
            return cls(text)
        m = re.fullmatch(r"Fp:(\d+)", text)
        if not m:
            raise ValueError(f"bad field flag {text!r}; expected Q, Qi or Fp:<p>")
        return cls(FP, int(m.group(1)))

    @classmethod
    def from_json(cls, obj: dict) -> FieldContext:
        kind = obj.get("kind")
        if kind == FP:
            return cls(FP, int(obj["p"]))
        return cls(kind)

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p} if self.kind == FP else {"kind": self.kind}

    def __str__(self):
        return f"Fp:{self.p}" if self.kind == FP else self.kind

    # element construction

    def _normalize(self, v):
        if self.kind == Q:
            return Fraction(v)
        if self.kind == QI:
            if isinstance(v, tuple):
                return (Fraction(v[0]), Fraction(v[1]))
            if isinstance(v, complex):
                raise TypeError("floating point complex values are not exact")
            return (Fraction(v), Fraction(0))
        if isinstance(v, Fraction):
            if v.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return v.numerator * pow(v.denominator, -1, self.p) % self.p
        return int(v) % self.p

    def __call__(self, v=0) -> FieldElement:
        if isinstance(v, FieldElement):
            if v.ctx != self:
                raise FieldMismatchError(f"element of {v.ctx} used in {self}")
            return v
        if isinstance(v, float):
            raise TypeError("floats are not exact field elements")
        return FieldElement(self, self._normalize(v))

    def gauss(self, re_part, im_part) -> FieldElement:
        if self.kind != QI:
            raise FieldMismatchError("imaginary parts need the Qi field")
        return FieldElement(self, (Fraction(re_part), Fraction(im_part)))

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def parse(self, text) -> FieldElement:
        return parse_element(text, self)


Coercible = Union["FieldElement", int, Fraction]


class FieldElement:
    """An exact element of a :class:`FieldContext`.

    The payload is a ``Fraction`` for Q, a pair of ``Fraction`` for Q(i)
    and an ``int`` residue in ``[0, p)`` for F_p.
    """

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldContext, v):
        self.ctx = ctx
        self.v = v

    def _coerce(self, other) -> FieldElement | None:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldMismatchError(f"cannot combine {self.ctx} and {other.ctx} elements")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self.ctx.kind
        if k == Q:
            return FieldElement(self.ctx, self.v + o.v)
        if k == QI:
            return FieldElement(self.ctx, (self.v[0] + o.v[0], self.v[1] + o.v[1]))
        return FieldElement(self.ctx, (self.v + o.v) % self.ctx.p)

    __radd__ = __add__

    def __neg__(self):
        k = self.ctx.kind
        if k == Q:
            return FieldElement(self.ctx, -self.v)
        if k == QI:
            return FieldElement(self.ctx, (-self.v[0], -self.v[1]))
        return FieldElement(self.ctx, -self.v % self.ctx.p)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        k = self.ctx.kind
        if k == Q:
            return FieldElement(self.ctx, self.v * o.v)
        if k == QI:
            a, b = self.v
            c, d = o.v
            return FieldElement(self.ctx, (a * c - b * d, a * d + b * c))
        return FieldElement(self.ctx, self.v * o.v % self.ctx.p)

    __rmul__ = __mul__

    def inv(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        k = self.ctx.kind
        if k == Q:
            return FieldElement(self.ctx, 1 / self.v)
        if k == QI:
            a, b = self.v
            nrm = a * a + b * b
            return FieldElement(self.ctx, (a / nrm, -b / nrm))
        return FieldElement(self.ctx, pow(self.v, -1, self.ctx.p))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, e: int):
        if e < 0:
            return self.inv() ** (-e)
        out = self.ctx.one
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        if self.ctx.kind == QI:
            return bool(self.v[0] or self.v[1])
        return bool(self.v)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.v == other.v
        if isinstance(other, (int, Fraction)):
            return self == self.ctx(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.v))

    def __repr__(self):
        return f"{self.ctx}({format_element(self)})"

    def __str__(self):
        return format_element(self)

    @property
    def real(self) -> Fraction:
        return self.v[0] if self.ctx.kind == QI else self.v

    @property
    def imag(self) -> Fraction:
        return self.v[1] if self.ctx.kind == QI else Fraction(0)


def f_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def f_sub(a: FieldElement, b: FieldElement) -> FieldElement:
    return a - b


def f_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def f_inv(a: FieldElement) -> FieldElement:
    return a.inv()


def f_eq(a: FieldElement, b: FieldElement) -> bool:
    if a.ctx != b.ctx:
        raise FieldMismatchError(f"cannot compare {a.ctx} and {b.ctx} elements")
    return a.v == b.v


def _fmt_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _parse_fraction(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_element(a: FieldElement) -> str:
    k = a.ctx.kind
    if k == Q:
        return _fmt_fraction(a.v)
    if k == QI:
        re_part, im_part = a.v
        if not im_part:
            return _fmt_fraction(re_part)
        sign = "-" if im_part < 0 else "+"
        return f"{_fmt_fraction(re_part)}{sign}{_fmt_fraction(abs(im_part))}i"
    return str(a.v)


def parse_element(text, ctx: FieldContext) -> FieldElement:
    """Parse a coefficient literal; integers are accepted as-is."""
    if isinstance(text, bool):
        raise ValueError("booleans are not coefficients")
    if isinstance(text, int):
        if ctx.kind == FP and text < 0:
            raise ValueError(f"prime-field literal must be nonnegative, got {text}")
        return ctx(text)
    if not isinstance(text, str):
        raise ValueError(f"malformed coefficient literal {text!r}")
    s = text.strip()
    if ctx.kind == Q:
        if not _RATIONAL_RE.match(s):
            raise ValueError(f"malformed rational literal {text!r}")
        return ctx(_parse_fraction(s))
    if ctx.kind == QI:
        m = _GAUSS_RE.match(s)
        if not m:
            raise ValueError(f"malformed Gaussian literal {text!r}")
        re_part = _parse_fraction(m.group(1))
        im_part = Fraction(0)
        if m.group(2):
            im_part = _parse_fraction(m.group(3))
            if m.group(2) == "-":
                im_part = -im_part
        return ctx.gauss(re_part, im_part)
    if not _DIGITS_RE.match(s):
        raise ValueError(f"malformed prime-field literal {text!r}")
    return ctx(int(s))


IDENTITY, CONJUGATION = "id", "conj"


@dataclass(frozen=True)
class CoefficientAutomorphism:
    """A field automorphism of the coefficient field: identity or, over Q(i),
    complex conjugation."""

    ctx: FieldContext
    tag: str = IDENTITY

    def __post_init__(self):
        if self.tag not in (IDENTITY, CONJUGATION):
            raise ValueError(f"unknown automorphism {self.tag!r}")
        if self.tag == CONJUGATION and self.ctx.kind != QI:
            raise ValueError(f"conjugation is not an automorphism of {self.ctx}")

    def __call__(self, a: FieldElement) -> FieldElement:
        return apply_rho(self, a)


def apply_rho(rho: CoefficientAutomorphism, a: FieldElement) -> FieldElement:
    if a.ctx != rho.ctx:
        raise FieldMismatchError(f"automorphism of {rho.ctx} applied to element of {a.ctx}")
    if rho.tag == IDENTITY:
        return a
    return FieldElement(a.ctx, (a.v[0], -a.v[1]))
