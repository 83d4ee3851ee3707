"""Criterion polynomial pairs and residue certificates of non-vanishing.

For each supported ``(target, n)`` a pair ``(A, B)`` is built from a modular
polynomial ``P = P_m``.  Algebraic independence of ``theta_j(n tau)`` and
``theta_j(tau)`` follows once ``Res_X(A, B)`` is shown not to vanish
identically; a :class:`ResidueCertificate` records an integer ``y0`` and a
prime ``p`` with ``Res_X(A, B)(y0) != 0 (mod p)``.

In the squared and fourth-power constructions the partial derivatives of ``P`` are
taken first and then evaluated at ``(X**k, Y**k)``, i.e. ``P_X o (X^k, Y^k)``,
not the derivative of the composed polynomial.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .bigpoly import BiPoly, UniPoly, X, Y, partial_derivative, substitute_power
from .modular_tables import NotAvailable, get_poly
from .resultant import SpecializationVanished, resultant_in_X, specialized_resultant

__all__ = [
    "Target",
    "Kind",
    "CriterionSpec",
    "ResidueCertificate",
    "CriterionError",
    "UnsupportedPair",
    "MissingTable",
    "SizeLimitExceeded",
    "NoCertificateFound",
    "classify",
    "build_criterion",
    "criterion_resultant",
    "certify_nonvanishing",
    "verify_certificate",
    "supported_pairs",
    "DEFAULT_Y",
    "DEFAULT_PRIMES",
    "DEFAULT_SIZE_LIMIT",
]

DEFAULT_Y = (1, 2, 3, 5)
DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_SIZE_LIMIT = 40


class Target(str, enum.Enum):
    THETA2 = "theta2"
    THETA3 = "theta3"
    THETA4 = "theta4"

    @classmethod
    def parse(cls, value) -> "Target":
        if isinstance(value, Target):
            return value
        v = str(value).lower().replace("θ", "theta").replace("_", "")
        if v in ("2", "3", "4"):
            v = "theta" + v
        try:
            return cls(v)
        except ValueError:
            raise ValueError(f"unknown theta target {value!r}") from None


class Kind(str, enum.Enum):
    """Which construction of ``(A, B)`` applies."""

    POW2 = "pow2"  # theta3, n = 2^k
    THETA2_2M = "theta2-2m"
    THETA3_2M = "theta3-2m"
    THETA4_2M = "theta4-2m"
    THETA3_4M = "theta3-4m"


class CriterionError(Exception):
    pass


class UnsupportedPair(CriterionError, ValueError):
    pass


class MissingTable(CriterionError, LookupError):
    pass


class SizeLimitExceeded(CriterionError):
    pass


class NoCertificateFound(CriterionError):
    def __init__(self, message: str, zero_points: tuple[int, ...] = ()):
        super().__init__(message)
        self.zero_points = zero_points


@dataclass(frozen=True)
class CriterionSpec:
    target: Target
    n: int
    m: int | None
    kind: Kind
    A: BiPoly = field(repr=False)
    B: BiPoly = field(repr=False)

    @property
    def sylvester_size(self) -> int:
        return self.A.deg_x + self.B.deg_x

    @property
    def key(self) -> str:
        return f"{self.target.value}:n={self.n}:{self.kind.value}"


@dataclass(frozen=True)
class ResidueCertificate:
    target: Target
    n: int
    kind: Kind
    y0: int
    p: int
    residue: int
    degree_dropped: bool
    backend: str
    value: int = field(repr=False, compare=False)

    def as_dict(self) -> dict:
        return {
            "target": self.target.value,
            "n": self.n,
            "kind": self.kind.value,
            "y0": self.y0,
            "p": self.p,
            "residue": self.residue,
            "degree_dropped": self.degree_dropped,
            "backend": self.backend,
            "resultant_at_y0": str(self.value),
        }


def _odd_part(n: int) -> tuple[int, int]:
    k = 0
    while n % 2 == 0:
        n //= 2
        k += 1
    return k, n


def classify(target, n: int) -> tuple[Kind, int | None]:
    """Map ``(target, n)`` to its construction kind and the odd base ``m`` (None for pow2)."""
    t = Target.parse(target)
    if n < 2:
        raise UnsupportedPair(f"n must be even and >= 2, got {n}")
    k, m = _odd_part(n)
    if t is Target.THETA3 and m == 1 and k in (3, 4):
        return Kind.POW2, None
    if m > 1 and k == 1:
        return {Target.THETA2: Kind.THETA2_2M, Target.THETA3: Kind.THETA3_2M, Target.THETA4: Kind.THETA4_2M}[t], m
    if m > 1 and k == 2 and t is Target.THETA3:
        return Kind.THETA3_4M, m
    raise UnsupportedPair(f"no criterion for {t.value} with n={n}")


def _table(family: str, n: int) -> BiPoly:
    try:
        return get_poly(family, n).poly
    except NotAvailable as exc:
        raise MissingTable(str(exc)) from None


def build_criterion(target, n: int) -> CriterionSpec:
    t = Target.parse(target)
    kind, m = classify(t, n)
    if kind is Kind.POW2:
        p = _table("pow2", n)
        return CriterionSpec(t, n, None, kind, p, partial_derivative(p, "Y"))
    p = _table("odd", m)
    px, py = partial_derivative(p, "X"), partial_derivative(p, "Y")
    if kind is Kind.THETA2_2M:
        a, b = p, X * px + 2 * (Y - 16) * py
    elif kind is Kind.THETA4_2M:
        a, b = p, X**2 * px**2 - Y * (Y - 16) * py**2
    elif kind is Kind.THETA3_2M:
        a = substitute_power(p, 2, 2)
        b = X**2 * substitute_power(px, 2, 2) + (Y**2 + 4 * Y) * substitute_power(py, 2, 2)
    else:
        a = substitute_power(p, 4, 4)
        b = X**4 * substitute_power(px, 4, 4) + (Y**4 + 2 * Y**3) * substitute_power(py, 4, 4)
    return CriterionSpec(t, n, m, kind, a, b)


def criterion_resultant(
    spec: CriterionSpec,
    backend: str = "interpolation",
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> UniPoly:
    """Full ``R(Y) = Res_X(A, B)``, refused above ``size_limit`` Sylvester rows."""
    if spec.sylvester_size > size_limit:
        raise SizeLimitExceeded(
            f"{spec.key}: Sylvester dimension {spec.sylvester_size} exceeds limit {size_limit}"
        )
    return resultant_in_X(spec.A, spec.B, backend=backend)


def certify_nonvanishing(
    spec: CriterionSpec,
    y_candidates=DEFAULT_Y,
    primes=DEFAULT_PRIMES,
) -> ResidueCertificate:
    """First ``(y0, p)`` in scan order whose exact specialized resultant is nonzero mod ``p``.

    ``y0`` is the outer loop, ``p`` the inner one, both in the given order.
    A point where both leading X-coefficients vanish is skipped: there the
    full resultant is zero whatever the specialized determinant says.
    """
    ys, ps = list(y_candidates), list(primes)
    if not ys or not ps:
        raise ValueError("candidate lists must be nonempty")
    zeros: list[int] = []
    for y0 in ys:
        try:
            sr = specialized_resultant(spec.A, spec.B, y0)
        except SpecializationVanished:
            zeros.append(y0)
            continue
        if sr.dropped_a and sr.dropped_b:
            zeros.append(y0)
            continue
        if sr.value == 0:
            zeros.append(y0)
            continue
        for p in ps:
            r = sr.value % p
            if r:
                return ResidueCertificate(
                    spec.target, spec.n, spec.kind, y0, p, r, sr.degree_dropped, "bareiss", sr.value
                )
    detail = f"; exact zero at y0 in {zeros}" if zeros else "; every nonzero value divisible by all primes"
    raise NoCertificateFound(f"{spec.key}: no certificate{detail}", tuple(zeros))


def verify_certificate(cert: ResidueCertificate) -> bool:
    """Recompute the specialized resultant and compare residues."""
    spec = build_criterion(cert.target, cert.n)
    sr = specialized_resultant(spec.A, spec.B, cert.y0)
    r = sr.value % cert.p
    return r != 0 and r == cert.residue


def supported_pairs(max_n: int = 44) -> list[tuple[Target, int]]:
    """All ``(target, n)`` with a criterion whose tables are embedded, up to ``max_n``."""
    out = []
    for t in Target:
        for n in range(2, max_n + 1, 2):
            try:
                kind, m = classify(t, n)
            except UnsupportedPair:
                continue
            family, idx = ("pow2", n) if kind is Kind.POW2 else ("odd", m)
            try:
                get_poly(family, idx)
            except NotAvailable:
                continue
            out.append((t, n))
    return out
