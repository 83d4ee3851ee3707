"""Rigorous enclosures of theta-constants and checks of their identities.

All values are :class:`~theta_cert.ball.Ball` enclosures.  ``tau`` is held
as an exact rational point of the upper half-plane, so ``n * tau`` and
``(u * tau + 2v) / w`` are exact as well; the nome ``q = exp(i pi tau)`` is
always computed from ``tau`` on the principal branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .ball import Ball, DivisionByZeroBall, PrecisionError
from .bigpoly import BiPoly, poly_eval
from .modular_tables import NotAvailable, get_poly, psi

__all__ = [
    "DomainError",
    "MissingTable",
    "TauPoint",
    "ThetaTriple",
    "TripleUVW",
    "Residual",
    "ResidualReport",
    "theta_constants",
    "verify_jacobi",
    "verify_duplication",
    "verify_modular_vanishing",
    "enumerate_triples",
    "verify_product_form",
    "seeded_tau_points",
    "DEFAULT_TAUS",
    "GUARD_BITS",
    "MAX_TERMS",
]

GUARD_BITS = 32
MAX_TERMS = 10**6
RETRY_CAP = 3


class DomainError(ValueError):
    pass


class MissingTable(LookupError):
    pass


@dataclass(frozen=True)
class TauPoint:
    """Exact point ``re + i*im`` with ``im > 0``."""

    re: Fraction
    im: Fraction

    def __post_init__(self):
        re, im = Fraction(self.re), Fraction(self.im)
        if im <= 0:
            raise DomainError(f"Im(tau) must be positive, got {im}")
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    @classmethod
    def parse(cls, text: str) -> "TauPoint":
        """Parse ``"RE,IM"`` with decimal or rational components."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2:
            raise DomainError(f"expected RE,IM, got {text!r}")
        try:
            re, im = Fraction(parts[0]), Fraction(parts[1])
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"cannot parse tau {text!r}") from None
        return cls(re, im)

    @classmethod
    def of(cls, value) -> "TauPoint":
        if isinstance(value, TauPoint):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        if isinstance(value, (tuple, list)):
            return cls(Fraction(value[0]), Fraction(value[1]))
        z = complex(value)
        return cls(Fraction(z.real), Fraction(z.imag))

    def scale(self, k) -> "TauPoint":
        return TauPoint(self.re * k, self.im * k)

    def mobius(self, u: int, v: int, w: int) -> "TauPoint":
        """``(u * tau + 2v) / w``."""
        return TauPoint((u * self.re + 2 * v) / Fraction(w), u * self.im / Fraction(w))

    def ball(self, prec: int) -> Ball:
        i = Ball.exact(1j, prec)
        return Ball.exact(self.re, prec) + Ball.exact(self.im, prec) * i

    def __str__(self):
        return f"{self.re},{self.im}"


@dataclass(frozen=True)
class ThetaTriple:
    theta2: Ball
    theta3: Ball
    theta4: Ball
    tau: TauPoint
    prec: int
    terms: int

    def __getitem__(self, j: int) -> Ball:
        return {2: self.theta2, 3: self.theta3, 4: self.theta4}[j]


@dataclass(frozen=True, order=True)
class TripleUVW:
    u: int
    v: int
    w: int


@dataclass
class Residual:
    label: str
    value: Ball
    tolerance_log2: float

    @property
    def radius(self) -> float:
        return self.value.rad

    @property
    def contains_zero(self) -> bool:
        return self.value.contains_zero()

    @property
    def passed(self) -> bool:
        return self.contains_zero and self.value.rad < 2.0**self.tolerance_log2

    def as_dict(self) -> dict:
        re, im = self.value.mid_strings(20)
        return {
            "check": self.label,
            "midpoint": [re, im],
            "radius": f"{self.value.rad:.6e}",
            "tolerance": f"2^{self.tolerance_log2:g}",
            "contains_zero": self.contains_zero,
            "passed": self.passed,
        }


@dataclass
class ResidualReport:
    name: str
    tau: TauPoint | None
    prec: int
    residuals: list[Residual] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.residuals)

    @property
    def max_radius(self) -> float:
        return max((r.radius for r in self.residuals), default=0.0)


def _nome(tau: TauPoint, divisor: int, prec: int) -> Ball:
    """``exp(i pi tau / divisor)``."""
    z = (Ball.pi(prec) * tau.ball(prec)).times_i()
    if divisor != 1:
        z = z / divisor
    return z.exp()


def _truncation(qa: float, prec: int, max_terms: int) -> int:
    """Smallest N with qa**((N+1)**2) / (1 - qa) < 2**-(prec + 8)."""
    if not qa < 1.0:
        raise PrecisionError("|q| is not bounded away from 1")
    if qa == 0.0:
        return 0
    lq = math.log(qa)
    target = -(prec + 8) * math.log(2.0) + math.log1p(-qa)
    n = max(0, math.ceil(math.sqrt(target / lq)) - 1)
    while n > 0 and (n * n) * lq < target:
        n -= 1
    while (n + 1) ** 2 * lq >= target:
        n += 1
    if n > max_terms:
        raise PrecisionError(f"{n} series terms needed, cap is {max_terms}")
    return n


def _tail(qa: float, e: float) -> float:
    """Upper bound for ``qa**e / (1 - qa)``, padded against libm error."""
    if qa == 0.0:
        return 0.0
    val = math.exp(e * math.log(qa) - math.log1p(-qa))
    return math.nextafter(val * (1 + 2.0**-30), math.inf)


def _thetas(tau: TauPoint, prec: int, guard: int, max_terms: int, which: Sequence[int] = (2, 3, 4)):
    work = prec + guard
    q4 = _nome(tau, 4, work) if 2 in which else None
    q = (q4 * q4) ** 2 if q4 is not None else _nome(tau, 1, work)
    qa = q.abs_upper()
    n = _truncation(qa, prec, max_terms)
    q2 = q * q
    out = {}
    if 3 in which or 4 in which:
        # q^(v^2) from q^((v-1)^2) * q^(2v-1)
        odd, sq = q, Ball(1, 0.0, q.ctx)
        s3 = Ball(0, 0.0, q.ctx)
        s4 = Ball(0, 0.0, q.ctx)
        for v in range(1, n + 1):
            sq = sq * odd
            odd = odd * q2
            s3 = s3 + sq
            s4 = s4 - sq if v & 1 else s4 + sq
        tail = 2.0 * _tail(qa, float((n + 1) ** 2))
        if 3 in which:
            t3 = 1 + 2 * s3
            out[3] = Ball(t3.mid, math.nextafter(t3.rad + tail, math.inf), t3.ctx)
        if 4 in which:
            t4 = 1 + 2 * s4
            out[4] = Ball(t4.mid, math.nextafter(t4.rad + tail, math.inf), t4.ctx)
    if 2 in which:
        # q^(v(v+1)) from q^((v-1)v) * q^(2v)
        even, pr = Ball(1, 0.0, q.ctx), Ball(1, 0.0, q.ctx)
        s2 = Ball(1, 0.0, q.ctx)
        for _ in range(1, n + 1):
            even = even * q2
            pr = pr * even
            s2 = s2 + pr
        t2 = 2 * q4 * s2
        tail = 2.0 * _tail(qa, (n + 1.5) ** 2)
        out[2] = Ball(t2.mid, math.nextafter(t2.rad + tail, math.inf), t2.ctx)
    return out, n


def theta_constants(tau, prec: int = 192, guard: int = GUARD_BITS, max_terms: int = MAX_TERMS) -> ThetaTriple:
    """Enclosures of ``theta_2, theta_3, theta_4`` at ``tau``.

    The series are cut at the first ``N`` whose geometric tail bound drops
    below ``2**-(prec + 8)``; that bound is added to each radius.  Midpoint
    arithmetic runs at ``prec + guard`` bits.
    """
    t = TauPoint.of(tau)
    vals, n = _thetas(t, prec, guard, max_terms)
    return ThetaTriple(vals[2], vals[3], vals[4], t, prec, n)


def _theta3(tau: TauPoint, prec: int, guard: int = GUARD_BITS) -> Ball:
    return _thetas(tau, prec, guard, MAX_TERMS, which=(3,))[0][3]


def verify_jacobi(tau, prec: int = 192) -> ResidualReport:
    t = TauPoint.of(tau)
    th = theta_constants(t, prec)
    res = th.theta3**4 - th.theta2**4 - th.theta4**4
    return ResidualReport("jacobi", t, prec, [Residual("theta3^4 - theta2^4 - theta4^4", res, -prec / 2)])


DUPLICATION_IDENTITIES = (
    "2 theta2(2t)^2 = theta3^2 - theta4^2",
    "2 theta3(2t)^2 = theta3^2 + theta4^2",
    "theta4(2t)^2 = theta3 theta4",
    "2 theta2(4t) = theta3 - theta4",
    "2 theta3(4t) = theta3 + theta4",
    "2 theta4(4t)^4 = (theta3^2 + theta4^2) theta3 theta4",
    "32 theta4(8t)^8 = (theta3 + theta4)^4 (theta3^2 + theta4^2) theta3 theta4",
)


def verify_duplication(tau, prec: int = 192) -> ResidualReport:
    t = TauPoint.of(tau)
    base = theta_constants(t, prec)
    d2 = theta_constants(t.scale(2), prec)
    d4 = theta_constants(t.scale(4), prec)
    d8 = theta_constants(t.scale(8), prec)
    t3, t4 = base.theta3, base.theta4
    s3, s4 = t3 * t3, t4 * t4
    p34 = t3 * t4
    diffs = (
        2 * d2.theta2**2 - (s3 - s4),
        2 * d2.theta3**2 - (s3 + s4),
        d2.theta4**2 - p34,
        2 * d4.theta2 - (t3 - t4),
        2 * d4.theta3 - (t3 + t4),
        2 * d4.theta4**4 - (s3 + s4) * p34,
        32 * d8.theta4**8 - (t3 + t4) ** 4 * (s3 + s4) * p34,
    )
    rep = ResidualReport("duplication", t, prec)
    rep.residuals = [Residual(lbl, d, -prec / 2) for lbl, d in zip(DUPLICATION_IDENTITIES, diffs)]
    return rep


def _is_pow2(n: int) -> bool:
    return n >= 2 and n & (n - 1) == 0


def _target_index(target) -> int:
    s = str(getattr(target, "value", target)).lower().replace("theta", "").replace("θ", "")
    if s not in ("2", "3", "4"):
        raise DomainError(f"unknown theta target {target!r}")
    return int(s)


def _lookup(family: str, n: int) -> BiPoly:
    try:
        return get_poly(family, n).poly
    except NotAvailable as exc:
        raise MissingTable(str(exc)) from None


def modular_point(target, n: int, tau, prec: int) -> tuple[BiPoly, Ball, Ball, str]:
    """The polynomial and the point ``(X0, Y0)`` at which it should vanish."""
    j = _target_index(target)
    t = TauPoint.of(tau)
    if _is_pow2(n):
        if j != 3:
            raise DomainError("the 2-power relation concerns theta3 only")
        poly = _lookup("pow2", n)
        a, b = theta_constants(t, prec), theta_constants(t.scale(n), prec)
        x0 = b.theta3**2 / a.theta3**2
        y0 = a.theta4 / a.theta3
        return poly, x0, y0, f"P{n}(theta3(nt)^2/theta3^2, theta4/theta3)"
    if n % 2:
        if n < 3:
            raise DomainError(f"odd n must be >= 3, got {n}")
        k, base, label = n, t, "t"
    elif n % 4 == 2 and n >= 6:
        k, base, label = n // 2, t.scale(2), "2t"
    else:
        raise DomainError(f"no modular relation implemented for n={n}")
    poly = _lookup("odd", k)
    a, b = theta_constants(base, prec), theta_constants(base.scale(k), prec)
    x0 = k * k * b[j] ** 4 / a[j] ** 4
    lam = a.theta2**4 / a.theta3**4
    if j == 2:
        y0 = 16 * (lam - 1) / lam
    elif j == 3:
        y0 = 16 * lam
    else:
        y0 = 16 * lam / (lam - 1)
    return poly, x0, y0, f"P{k}(h{j}({label}), Y{j}({label}))"


def verify_modular_vanishing(target, n: int, tau, prec: int = 192, retries: int = RETRY_CAP) -> ResidualReport:
    """Check that ``P(X0, Y0)`` encloses zero with radius below ``2**(-prec/2)``.

    A denominator ball that touches zero triggers a retry at doubled
    working precision, at most ``retries`` times.
    """
    t = TauPoint.of(tau)
    work = prec
    for attempt in range(retries + 1):
        try:
            poly, x0, y0, label = modular_point(target, n, t, work)
            break
        except DivisionByZeroBall:
            if attempt == retries:
                raise
            work *= 2
    value = poly_eval(poly, x0, y0)
    j = _target_index(target)
    rep = ResidualReport(f"modular:theta{j}:n={n}", t, prec)
    rep.residuals = [Residual(label, value, -prec / 2)]
    return rep


def enumerate_triples(n: int) -> list[TripleUVW]:
    """All ``(u, v, w)`` with ``gcd(u, v, w) = 1``, ``u w = n``, ``0 <= v < w``."""
    if n < 3 or n % 2 == 0:
        raise DomainError(f"n must be odd and >= 3, got {n}")
    out = []
    for u in range(1, n + 1):
        if n % u:
            continue
        w = n // u
        for v in range(w):
            if gcd(gcd(u, v), w) == 1:
                out.append(TripleUVW(u, v, w))
    return sorted(out)


def verify_product_form(n: int, tau, x_samples: Iterable = (0, 1, 2), prec: int = 256) -> ResidualReport:
    """Compare ``prod(X - x_nu(tau))`` with ``P_n(X, 16 lambda(tau))`` at sample X.

    ``x_nu = u^2 theta3((u tau + 2v)/w)^4 / theta3(tau)^4`` over the triples of
    :func:`enumerate_triples`.  The tolerance is ``2**(-prec/4)``.
    """
    t = TauPoint.of(tau)
    samples = [Fraction(x) for x in x_samples]
    rep = ResidualReport(f"product_form:n={n}", t, prec)
    if not samples:
        return rep
    poly = _lookup("odd", n)
    triples = enumerate_triples(n)
    if len(triples) != psi(n):
        raise AssertionError(f"triple count {len(triples)} != psi({n})")
    base = theta_constants(t, prec)
    den = base.theta3**4
    y0 = 16 * base.theta2**4 / den
    conj = [tr.u * tr.u * _theta3(t.mobius(tr.u, tr.v, tr.w), prec) ** 4 / den for tr in triples]
    for x in samples:
        xb = Ball.exact(x, prec + GUARD_BITS)
        prod = Ball(1, 0.0, xb.ctx)
        for c in conj:
            prod = prod * (xb - c)
        diff = prod - poly_eval(poly, xb, y0)
        rep.residuals.append(Residual(f"X={x}", diff, -prec / 4))
    return rep


# Used by the CLI and the documented acceptance runs.
DEFAULT_TAUS = (
    TauPoint(Fraction(0), Fraction(1)),
    TauPoint(Fraction(3, 10), Fraction(6, 5)),
    TauPoint(Fraction(-1, 4), Fraction(9, 10)),
)


def seeded_tau_points(count: int = 20, seed: int = 20240611) -> list[TauPoint]:
    """Deterministic tau with Re in [-1, 1] and Im in [0.8, 3] (3-decimal grid)."""
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        re = Fraction(rng.randint(-1000, 1000), 1000)
        im = Fraction(rng.randint(800, 3000), 1000)
        out.append(TauPoint(re, im))
    return out
