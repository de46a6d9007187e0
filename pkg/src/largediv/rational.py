"""Rational parsing/formatting and the quadratic surd type with certified sign."""

from __future__ import annotations

import math
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from numbers import Rational

import mpmath
from mpmath.ctx_iv import MPIntervalContext

from .errors import DomainError, IndeterminateSign

# precisions (bits) tried in turn when deciding the sign of an irrational number
PRECISION_LADDER = (53, 113, 256, 1024, 4096)


def to_fraction(value) -> Fraction:
    """Convert int, Fraction, Decimal, float, mpf or a "p/q" string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, (float, Decimal)):
        return Fraction(value)
    if isinstance(value, mpmath.mpf):
        man, exp = value.man_exp
        return Fraction(int(man)) * Fraction(2) ** int(exp)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(value) -> str:
    """Encode as "p/q" (or "p" for integers)."""
    f = to_fraction(value)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root if `value` is the square of a rational, else None."""
    if value < 0:
        return None
    p, q = value.numerator, value.denominator
    rp, rq = math.isqrt(p), math.isqrt(q)
    if rp * rp == p and rq * rq == q:
        return Fraction(rp, rq)
    return None


def _raw_to_fraction(raw) -> Fraction:
    """Exact value of a raw mpf tuple (sign, mantissa, exponent, bitcount)."""
    sign, man, exp, _ = raw
    value = Fraction(int(man)) * Fraction(2) ** int(exp)
    return -value if sign else value


def _iv_rational(ctx, f: Fraction):
    return ctx.mpf(f.numerator) / ctx.mpf(f.denominator)


class Surd:
    """x + y*sqrt(z) with rational x, y and rational z >= 0 not a perfect square.

    Construct through `Surd.make`, which collapses to a Fraction whenever the
    value is rational.
    """

    __slots__ = ("x", "y", "z")

    def __init__(self, x: Fraction, y: Fraction, z: Fraction):
        self.x, self.y, self.z = x, y, z

    @classmethod
    def make(cls, x, y, z):
        x, y, z = to_fraction(x), to_fraction(y), to_fraction(z)
        if z < 0:
            raise DomainError(f"negative radicand {z}")
        root = rational_sqrt(z)
        if root is not None:
            return x + y * root
        if y == 0:
            return x
        return cls(x, y, z)

    @classmethod
    def sqrt(cls, z):
        return cls.make(0, 1, z)

    def _coerce(self, other):
        if isinstance(other, Surd):
            if other.z != self.z:
                raise DomainError("surds over different quadratic fields")
            return other.x, other.y
        return to_fraction(other), Fraction(0)

    def __add__(self, other):
        ox, oy = self._coerce(other)
        return Surd.make(self.x + ox, self.y + oy, self.z)

    __radd__ = __add__

    def __neg__(self):
        return Surd(-self.x, -self.y, self.z)

    def __sub__(self, other):
        ox, oy = self._coerce(other)
        return Surd.make(self.x - ox, self.y - oy, self.z)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        ox, oy = self._coerce(other)
        return Surd.make(self.x * ox + self.y * oy * self.z, self.x * oy + self.y * ox, self.z)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Surd):
            raise TypeError("division by a surd is not supported")
        d = to_fraction(other)
        return Surd.make(self.x / d, self.y / d, self.z)

    def __float__(self):
        lo, hi = (_raw_to_fraction(e) for e in self.enclosure(113)._mpi_)
        return float((lo + hi) / 2)

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.x, self.y, self.z) == (other.x, other.y, other.z)
        return False

    def __hash__(self):
        return hash((self.x, self.y, self.z))

    def __repr__(self):
        return f"Surd({format_rational(self.x)} + {format_rational(self.y)}*sqrt({format_rational(self.z)}))"

    def enclosure(self, prec: int):
        """Interval enclosure at `prec` bits, with outward rounding."""
        ctx = MPIntervalContext()
        ctx.prec = prec
        return _iv_rational(ctx, self.x) + _iv_rational(ctx, self.y) * ctx.sqrt(_iv_rational(ctx, self.z))

    def certified_sign(self, max_prec: int | None = None) -> tuple[int, int]:
        """Return (sign, bits used) once an enclosure excludes zero."""
        ladder = [p for p in PRECISION_LADDER if max_prec is None or p <= max_prec] or [max_prec]
        for prec in ladder:
            box = self.enclosure(prec)
            if box.a > 0:
                return 1, prec
            if box.b < 0:
                return -1, prec
        raise IndeterminateSign(f"{self!r}: enclosure contains 0 at {ladder[-1]} bits")

    def sign(self, max_prec: int | None = None) -> int:
        return self.certified_sign(max_prec)[0]

    def interval_strings(self, prec: int = 113, digits: int = 30) -> tuple[str, str]:
        """Enclosure endpoints as decimals, rounded outward."""
        lo, hi = (_raw_to_fraction(e) for e in self.enclosure(prec)._mpi_)
        out = []
        for value, mode in ((lo, ROUND_FLOOR), (hi, ROUND_CEILING)):
            ctx = Context(prec=digits, rounding=mode)
            out.append(str(ctx.divide(Decimal(value.numerator), Decimal(value.denominator))))
        return out[0], out[1]


def sign_of(value, max_prec: int | None = None) -> int:
    if isinstance(value, Surd):
        return value.sign(max_prec)
    f = to_fraction(value)
    return (f > 0) - (f < 0)


def encode_number(value) -> dict | str:
    """JSON-friendly exact encoding of a Fraction or Surd."""
    if isinstance(value, Surd):
        sgn, prec = value.certified_sign()
        lo, hi = value.interval_strings(max(prec, 113))
        return {
            "exact": f"{format_rational(value.x)} + ({format_rational(value.y)})*sqrt({format_rational(value.z)})",
            "interval": [lo, hi],
            "precision_bits": max(prec, 113),
            "sign": sgn,
        }
    return format_rational(value)
