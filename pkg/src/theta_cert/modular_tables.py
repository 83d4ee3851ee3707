"""Embedded modular polynomials and the ``.mptab`` text format.

An ``.mptab`` file is UTF-8 text::

    family=odd n=5
    # comment lines and trailing comments are ignored
    0 0 25
    1 0 -126
    ...

The header names the family (``odd`` or ``pow2``) and the index ``n``.
Each following line is ``i j c``: the X-exponent, the Y-exponent and the
decimal coefficient.  Terms appear in strictly increasing ``(i, j)`` order.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from .bigpoly import BiPoly, X, partial_derivative, poly_eval

__all__ = [
    "ModularPolyEntry",
    "TableError",
    "NotAvailable",
    "ParseError",
    "DegreeMismatch",
    "psi",
    "get_poly",
    "embedded_entries",
    "load_external",
    "load_file",
    "serialize",
    "validate_tables",
    "validate_entry",
    "TABLE_PATH_ENV",
]

TABLE_PATH_ENV = "THETA_CERT_TABLE_PATH"

EMBEDDED = {"odd": (3, 5, 7, 9, 11), "pow2": (2, 4, 8, 16)}


class TableError(Exception):
    pass


class NotAvailable(TableError, LookupError):
    pass


class ParseError(TableError, ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class DegreeMismatch(TableError, ValueError):
    pass


def psi(n: int) -> int:
    """Dedekind psi function ``n * prod(1 + 1/p)`` over primes ``p | n``."""
    if n < 1:
        raise ValueError("psi is defined for n >= 1")
    out, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            out = out // p * (p + 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out = out // m * (m + 1)
    return out


def _log2_exact(n: int) -> int | None:
    if n >= 1 and n & (n - 1) == 0:
        return n.bit_length() - 1
    return None


@dataclass(frozen=True)
class ModularPolyEntry:
    family: str
    n: int
    poly: BiPoly = field(repr=False)
    expected_degx: int

    @property
    def name(self) -> str:
        return f"P{self.n}"


def _expected_degx(family: str, n: int, poly: BiPoly) -> int:
    if family == "odd":
        return psi(n)
    # Only 2**(m-2) is pinned down for m >= 2; P_2 is linear in X.
    m = _log2_exact(n)
    return 2 ** (m - 2) if m and m >= 2 else poly.deg_x


_HEADER = re.compile(r"^family=(\S+)\s+n=(\S+)$")


def load_external(source: str) -> ModularPolyEntry:
    """Parse ``.mptab`` text into an entry, checking the odd-family degree."""
    header = None
    terms: dict[tuple[int, int], int] = {}
    last = None
    header_line = 0
    for lineno, raw in enumerate(source.split("\n"), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected header 'family=<odd|pow2> n=<int>'", lineno)
            family, n_txt = m.groups()
            if family not in ("odd", "pow2"):
                raise ParseError(f"unknown family {family!r}", lineno)
            try:
                n = int(n_txt)
            except ValueError:
                raise ParseError(f"bad index {n_txt!r}", lineno) from None
            if family == "odd" and (n < 3 or n % 2 == 0):
                raise ParseError(f"odd family needs odd n >= 3, got {n}", lineno)
            if family == "pow2" and _log2_exact(n) in (None, 0):
                raise ParseError(f"pow2 family needs n = 2^m with m >= 1, got {n}", lineno)
            header = (family, n)
            header_line = lineno
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError("expected 'i j c'", lineno)
        try:
            i, j, c = (int(v) for v in parts)
        except ValueError:
            raise ParseError("non-integer field", lineno) from None
        if i < 0 or j < 0:
            raise ParseError("negative exponent", lineno)
        if last is not None and (i, j) <= last:
            raise ParseError("terms must be in strictly increasing (i, j) order", lineno)
        last = (i, j)
        terms[(i, j)] = c
    if header is None:
        raise ParseError("empty table", max(1, source.count("\n")))
    family, n = header
    poly = BiPoly(terms)
    if poly.is_zero:
        raise ParseError("table has no nonzero terms", header_line)
    expected = _expected_degx(family, n, poly)
    if poly.deg_x != expected:
        raise DegreeMismatch(f"{family} n={n}: deg_X = {poly.deg_x}, expected {expected}")
    return ModularPolyEntry(family, n, poly, expected)


def load_file(path: str | os.PathLike) -> ModularPolyEntry:
    return load_external(Path(path).read_text(encoding="utf-8"))


def serialize(entry: ModularPolyEntry) -> str:
    lines = [f"family={entry.family} n={entry.n}"]
    lines += [f"{i} {j} {c}" for (i, j), c in entry.poly.terms.items()]
    return "\n".join(lines) + "\n"


@lru_cache(maxsize=None)
def _embedded(family: str, n: int) -> ModularPolyEntry:
    text = resources.files("theta_cert").joinpath("data").joinpath(f"{family}_{n}.mptab").read_text(encoding="utf-8")
    return load_external(text)


def _external_dirs() -> list[Path]:
    raw = os.environ.get(TABLE_PATH_ENV, "")
    return [Path(p) for p in raw.split(os.pathsep) if p]


def get_poly(family: str, n: int) -> ModularPolyEntry:
    """Look up ``P_n``; embedded entries first, then ``$THETA_CERT_TABLE_PATH``."""
    if n in EMBEDDED.get(family, ()):
        return _embedded(family, n)
    for d in _external_dirs():
        f = d / f"{family}_{n}.mptab"
        if f.is_file():
            entry = load_file(f)
            if (entry.family, entry.n) != (family, n):
                raise TableError(f"{f} declares {entry.family} n={entry.n}")
            return entry
    raise NotAvailable(f"no modular polynomial for family={family} n={n}")


def embedded_entries() -> list[ModularPolyEntry]:
    return [get_poly(f, n) for f in ("odd", "pow2") for n in EMBEDDED[f]]


@dataclass
class Check:
    entry: str
    check: str
    passed: bool
    value: str
    expected: str


@dataclass
class ValidationReport:
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)


def validate_entry(entry: ModularPolyEntry) -> list[Check]:
    name = f"{entry.family}:{entry.n}"
    p = entry.poly
    out = []
    if entry.family == "odd":
        out.append(Check(name, "deg_X = psi(n)", p.deg_x == psi(entry.n), str(p.deg_x), str(psi(entry.n))))
        return out
    m = _log2_exact(entry.n)
    if m >= 2:
        at_zero = BiPoly({(i, 0): c for (i, j), c in p.terms.items() if j == 0})
        target = (2**m * X - 1) ** (2 ** (m - 2))
        out.append(Check(name, "P(X,0) = (2^m X - 1)^(2^(m-2))", at_zero == target, str(at_zero), str(target)))
    if m >= 3:
        dy = poly_eval(partial_derivative(p, "Y"), Fraction(1, 2**m), Fraction(0))
        want = -(2 ** (2 ** (m - 1) - 1))
        out.append(Check(name, "dP/dY(1/2^m, 0) = -2^(2^(m-1)-1)", dy == want, str(dy), str(want)))
    return out


def validate_tables(entries: Iterable[ModularPolyEntry] | None = None) -> ValidationReport:
    if entries is None:
        entries = embedded_entries()
    checks: list[Check] = []
    for e in entries:
        checks += validate_entry(e)
    return ValidationReport(checks)
