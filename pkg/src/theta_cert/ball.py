"""Complex midpoint-radius balls.

The midpoint is an mpmath complex at a fixed working precision; the radius
is a Python float that is always rounded upward (``math.nextafter``), so the
enclosure property survives both the midpoint rounding and the radius
arithmetic itself.  Every operation adds an explicit bound for the midpoint
rounding error.

Radii live in IEEE doubles, which caps the working precision: below about
2**-1000 the per-operation rounding term would underflow.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from mpmath.ctx_mp import MPContext

__all__ = ["Ball", "DivisionByZeroBall", "PrecisionError", "context", "MAX_PREC"]

MAX_PREC = 1000
_INF = math.inf


class PrecisionError(ArithmeticError):
    pass


class DivisionByZeroBall(ZeroDivisionError):
    pass


@lru_cache(maxsize=None)
def context(prec: int) -> MPContext:
    if prec < 16 or prec > MAX_PREC:
        raise PrecisionError(f"working precision must be in [16, {MAX_PREC}] bits, got {prec}")
    ctx = MPContext()
    ctx.prec = prec
    return ctx


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _add_up(*terms: float) -> float:
    acc = 0.0
    for t in terms:
        acc = _up(acc + t)
    return acc


def _mul_up(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    return _up(a * b)


def _mag(ctx: MPContext, z) -> float:
    """Upper bound for ``|z|`` as a float."""
    if not z:
        return 0.0
    f = float(ctx.fabs(z))
    return _up(_up(f * (1.0 + 2.0**-48)))


def _mag_lower(ctx: MPContext, z) -> float:
    if not z:
        return 0.0
    f = float(ctx.fabs(z))
    return math.nextafter(f * (1.0 - 2.0**-48), 0.0)


def _eps(prec: int, k: int = 2) -> float:
    # Bound on relative rounding error of one mpmath operation, with slack.
    return 2.0 ** (k - prec)


class Ball:
    """Complex ball ``{z : |z - mid| <= rad}``."""

    __slots__ = ("mid", "rad", "ctx")

    def __init__(self, mid, rad: float = 0.0, ctx: MPContext | None = None):
        if ctx is None:
            raise ValueError("a working-precision context is required")
        if rad < 0 or math.isnan(rad):
            raise ValueError("radius must be nonnegative")
        self.ctx = ctx
        self.mid = ctx.mpc(mid)
        self.rad = float(rad)

    @property
    def prec(self) -> int:
        return self.ctx.prec

    # -- construction ---------------------------------------------------

    @classmethod
    def exact(cls, value, prec: int) -> "Ball":
        """Enclose an int, Fraction, decimal string, float or complex value."""
        ctx = context(prec)
        if isinstance(value, Ball):
            return value if value.ctx is ctx else cls(0, 0.0, ctx)._coerce(value)
        if isinstance(value, complex):
            return cls.exact(Fraction(value.real), prec) + cls.exact(Fraction(value.imag), prec) * cls(1j, 0.0, ctx)
        if isinstance(value, (float, str)):
            value = Fraction(value)
        if isinstance(value, int):
            if value.bit_length() <= prec:
                return cls(ctx.mpf(value), 0.0, ctx)
            mid = ctx.mpf(value)
            err = abs(value - int(mid))
            return cls(mid, _up(float(err)), ctx)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return cls.exact(value.numerator, prec)
            mid = ctx.mpf(value.numerator) / value.denominator
            return cls(mid, _mul_up(_mag(ctx, mid), _eps(prec, 3)), ctx)
        raise TypeError(f"cannot enclose {type(value).__name__}")

    @classmethod
    def pi(cls, prec: int) -> "Ball":
        ctx = context(prec)
        return cls(ctx.pi, _eps(prec, 4), ctx)

    def _coerce(self, other) -> "Ball":
        if isinstance(other, Ball):
            if other.ctx is self.ctx:
                return other
            mid = self.ctx.mpc(other.mid)
            return Ball(mid, _add_up(other.rad, _mul_up(_mag(self.ctx, mid), _eps(self.prec))), self.ctx)
        if isinstance(other, (int, Fraction, float, complex)):
            return Ball.exact(other, self.prec)
        return NotImplemented

    # -- queries --------------------------------------------------------

    def contains_zero(self) -> bool:
        return _mag_lower(self.ctx, self.mid) <= self.rad

    def abs_upper(self) -> float:
        return _add_up(_mag(self.ctx, self.mid), self.rad)

    def abs_lower(self) -> float:
        lo = _mag_lower(self.ctx, self.mid) - self.rad
        return max(0.0, math.nextafter(lo, 0.0) if lo > 0 else 0.0)

    def contains(self, z) -> bool:
        d = self.ctx.fabs(self.ctx.mpc(z) - self.mid)
        return float(d) * (1 - 2.0**-40) <= self.rad

    # -- arithmetic -----------------------------------------------------

    def __pos__(self):
        return self

    def __neg__(self):
        return Ball(-self.mid, self.rad, self.ctx)

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        mid = self.mid + o.mid
        rnd = _mul_up(_add_up(_mag(ctx, self.mid), _mag(ctx, o.mid)), _eps(ctx.prec))
        return Ball(mid, _add_up(self.rad, o.rad, rnd), ctx)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, int) and abs(other) < 2**30 and other:
            # Small integer scaling: one rounding of the midpoint.
            mid = self.mid * other
            a = abs(other)
            rnd = _mul_up(_mag(self.ctx, mid), _eps(self.prec))
            return Ball(mid, _add_up(_mul_up(self.rad, float(a)), rnd), self.ctx)
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        ctx = self.ctx
        mid = self.mid * o.mid
        ma, mb = _mag(ctx, self.mid), _mag(ctx, o.mid)
        rad = _add_up(
            _mul_up(ma, o.rad),
            _mul_up(mb, self.rad),
            _mul_up(self.rad, o.rad),
            _mul_up(_mul_up(ma, mb), _eps(ctx.prec, 3)),
        )
        return Ball(mid, rad, ctx)

    __rmul__ = __mul__

    def inverse(self) -> "Ball":
        lo = _mag_lower(self.ctx, self.mid)
        if not lo > self.rad:
            raise DivisionByZeroBall("denominator ball contains zero")
        gap = math.nextafter(lo - self.rad, 0.0)
        if gap <= 0.0:
            raise DivisionByZeroBall("denominator ball too close to zero")
        mid = 1 / self.mid
        # |1/z - 1/m| <= r / (|m| (|m| - r)) for |z - m| <= r < |m|
        prop = _up(self.rad / math.nextafter(lo * gap, 0.0)) if self.rad else 0.0
        rnd = _mul_up(_mag(self.ctx, mid), _eps(self.prec, 4))
        return Ball(mid, _add_up(prop, rnd), self.ctx)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only nonnegative integer powers")
        out = Ball(1, 0.0, self.ctx)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def exp(self) -> "Ball":
        mid = self.ctx.exp(self.mid)
        m = _mag(self.ctx, mid)
        # |e^z - e^c| <= |e^c| (e^r - 1) for |z - c| <= r
        grow = _up(_up(math.expm1(self.rad)) * (1 + 2.0**-40)) if self.rad else 0.0
        rad = _add_up(_mul_up(m, grow), _mul_up(m, _eps(self.prec, 8)))
        return Ball(mid, rad, self.ctx)

    def times_i(self) -> "Ball":
        return Ball(self.mid * 1j, self.rad, self.ctx)

    # -- display --------------------------------------------------------

    def mid_strings(self, digits: int = 25) -> tuple[str, str]:
        ctx = self.ctx
        return ctx.nstr(self.mid.real, digits), ctx.nstr(self.mid.imag, digits)

    def __repr__(self):
        re, im = self.mid_strings(12)
        return f"Ball({re} + {im}j +/- {self.rad:.3e})"
