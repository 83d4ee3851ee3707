"""Exact polynomials in one and two variables over the integers.

Bivariate polynomials are stored sparsely as a map ``(i, j) -> c`` for the
monomial ``c * X**i * Y**j``.  Coefficients are Python ints, so there is no
overflow and decimal round-tripping is exact.  Evaluation is generic: any
commutative ring whose elements support ``+``, ``*`` and mixing with ``int``
works (ints, :class:`fractions.Fraction`, :class:`Zmod`, complex balls).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

__all__ = [
    "BiPoly",
    "UniPoly",
    "Zmod",
    "X",
    "Y",
    "poly_add",
    "poly_mul",
    "poly_eval",
    "partial_derivative",
    "substitute_power",
    "as_poly_in",
    "from_poly_in",
]


class Zmod:
    """Element of the integers modulo ``m``."""

    __slots__ = ("value", "modulus")

    def __init__(self, value: int, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be positive")
        self.modulus = modulus
        self.value = value % modulus

    def _coerce(self, other):
        if isinstance(other, Zmod):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Zmod(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Zmod(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Zmod(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return Zmod(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return Zmod(-self.value, self.modulus)

    def __pow__(self, k: int):
        return Zmod(pow(self.value, k, self.modulus), self.modulus)

    def __eq__(self, other):
        if isinstance(other, Zmod):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def __repr__(self):
        return f"Zmod({self.value}, {self.modulus})"


@dataclass(frozen=True)
class UniPoly:
    """Dense univariate integer polynomial, lowest degree first.

    Trailing zeros are stripped on construction, so the zero polynomial has
    ``coeffs == ()`` and degree ``-1``.
    """

    coeffs: tuple[int, ...] = ()
    var: str = "Y"

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @classmethod
    def from_roots_form(cls, factors: Iterable[tuple[Sequence[int], int]], scale: int = 1, var: str = "Y") -> "UniPoly":
        """Expand ``scale * prod(f**e)`` where each ``f`` is a coefficient list."""
        out = cls((scale,), var)
        for f, e in factors:
            base = cls(tuple(f), var)
            for _ in range(e):
                out = out * base
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, v in enumerate(b):
            out[k] += v
        return UniPoly(tuple(out), self.var)

    def __neg__(self) -> "UniPoly":
        return UniPoly(tuple(-c for c in self.coeffs), self.var)

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if isinstance(other, int):
            return UniPoly(tuple(c * other for c in self.coeffs), self.var)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly((), self.var)
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return UniPoly(tuple(out), self.var)

    __rmul__ = __mul__

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else (self.var if k == 1 else f"{self.var}^{k}")
                parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _clean(terms: Mapping[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    out = {}
    for (i, j), c in terms.items():
        if i < 0 or j < 0:
            raise ValueError(f"negative exponent in term ({i}, {j})")
        c = int(c)
        if c:
            out[(int(i), int(j))] = c
    return dict(sorted(out.items()))


@dataclass(frozen=True, eq=False)
class BiPoly:
    """Sparse bivariate integer polynomial in X and Y.

    The term map holds no zero coefficients and is kept in lexicographic
    ``(i, j)`` order; equality and hashing go through that canonical form.
    """

    terms: Mapping[tuple[int, int], int] = field(default_factory=dict)
    deg_x: int = field(init=False)
    deg_y: int = field(init=False)
    total_degree: int = field(init=False)

    def __post_init__(self):
        t = _clean(self.terms)
        object.__setattr__(self, "terms", t)
        if t:
            object.__setattr__(self, "deg_x", max(i for i, _ in t))
            object.__setattr__(self, "deg_y", max(j for _, j in t))
            object.__setattr__(self, "total_degree", max(i + j for i, j in t))
        else:
            object.__setattr__(self, "deg_x", -1)
            object.__setattr__(self, "deg_y", -1)
            object.__setattr__(self, "total_degree", -1)

    @classmethod
    def const(cls, c: int) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def from_uni(cls, p: UniPoly) -> "BiPoly":
        """Embed a univariate polynomial, reading its ``var`` as X or Y."""
        if p.var == "X":
            return cls({(k, 0): c for k, c in enumerate(p.coeffs)})
        return cls({(0, k): c for k, c in enumerate(p.coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other):
        return poly_add(self, _lift(other))

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return poly_add(self, -_lift(other))

    def __rsub__(self, other):
        return poly_add(_lift(other), -self)

    def __mul__(self, other):
        return poly_mul(self, _lift(other))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out, base = BiPoly.const(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, x, y):
        return poly_eval(self, x, y)

    def __repr__(self):
        return f"BiPoly({self.terms!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (i, j), c in self.terms.items():
            mono = "*".join(
                s for s in (
                    "" if i == 0 else ("X" if i == 1 else f"X^{i}"),
                    "" if j == 0 else ("Y" if j == 1 else f"Y^{j}"),
                ) if s
            )
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts)


def _lift(p) -> BiPoly:
    if isinstance(p, BiPoly):
        return p
    if isinstance(p, int):
        return BiPoly.const(p)
    if isinstance(p, UniPoly):
        return BiPoly.from_uni(p)
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


X = BiPoly({(1, 0): 1})
Y = BiPoly({(0, 1): 1})


def poly_add(p: BiPoly, q: BiPoly) -> BiPoly:
    out = dict(p.terms)
    for k, c in q.terms.items():
        out[k] = out.get(k, 0) + c
    return BiPoly(out)


def poly_mul(p: BiPoly, q: BiPoly) -> BiPoly:
    out: dict[tuple[int, int], int] = {}
    for (i1, j1), c1 in p.terms.items():
        for (i2, j2), c2 in q.terms.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return BiPoly(out)


def poly_eval(p: BiPoly, x, y):
    """Evaluate ``p`` at ``(x, y)`` by nested Horner (in X, then Y).

    Only ring operations are used, so the result is exact for exact rings
    and a valid enclosure when ``x`` and ``y`` are balls.  The zero
    polynomial evaluates to the int ``0``.
    """
    rows = as_poly_in(p, "Y")
    acc = 0
    for q in reversed(rows):
        inner = 0
        for c in reversed(q.coeffs):
            inner = inner * x + c
        acc = acc * y + inner
    return acc


def partial_derivative(p: BiPoly, var: str) -> BiPoly:
    if var == "X":
        return BiPoly({(i - 1, j): i * c for (i, j), c in p.terms.items() if i})
    if var == "Y":
        return BiPoly({(i, j - 1): j * c for (i, j), c in p.terms.items() if j})
    raise ValueError(f"unknown variable {var!r}")


def substitute_power(p: BiPoly, kx: int, ky: int) -> BiPoly:
    """Return ``p(X**kx, Y**ky)``."""
    if kx < 1 or ky < 1:
        raise ValueError("exponents must be >= 1")
    return BiPoly({(kx * i, ky * j): c for (i, j), c in p.terms.items()})


def as_poly_in(p: BiPoly, var: str) -> list[UniPoly]:
    """Split ``p`` into coefficient polynomials of ascending powers of ``var``.

    With ``var="Y"`` the entries are polynomials in X, so that
    ``p = sum(Q[j](X) * Y**j)``; with ``var="X"`` they are polynomials in Y.
    """
    if var not in ("X", "Y"):
        raise ValueError(f"unknown variable {var!r}")
    if p.is_zero:
        return []
    outer = 0 if var == "X" else 1
    other = "Y" if var == "X" else "X"
    size = p.deg_x if var == "X" else p.deg_y
    rows: list[list[int]] = [[] for _ in range(size + 1)]
    for key, c in p.terms.items():
        e, f = key[outer], key[1 - outer]
        row = rows[e]
        if len(row) <= f:
            row.extend([0] * (f + 1 - len(row)))
        row[f] = c
    return [UniPoly(tuple(r), other) for r in rows]


def from_poly_in(rows: Sequence[UniPoly], var: str) -> BiPoly:
    """Inverse of :func:`as_poly_in`."""
    terms = {}
    for e, q in enumerate(rows):
        for f, c in enumerate(q.coeffs):
            terms[(e, f) if var == "X" else (f, e)] = c
    return BiPoly(terms)
