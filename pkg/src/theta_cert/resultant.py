"""Resultants with respect to X of bivariate integer polynomials.

Two independent routes compute the full resultant ``Res_X(a, b)`` in Z[Y]:

* ``"interpolation"`` (default): specialize Y at consecutive integers,
  take exact integer Sylvester determinants, and interpolate.
* ``"bareiss"``: fraction-free elimination directly on the Sylvester
  matrix whose entries are polynomials in Y.

Sylvester convention: the first ``deg_X b`` rows hold the coefficients of
``a``, the remaining ``deg_X a`` rows those of ``b``, each ordered from the
highest X-power to the lowest.  The sign of every resultant below follows
from that layout.
"""

from __future__ import annotations

from concurrent.futures import Executor
from fractions import Fraction
from typing import NamedTuple, Sequence

from .bigpoly import BiPoly, UniPoly, as_poly_in

__all__ = [
    "ResultantError",
    "ZeroPolynomial",
    "SpecializationVanished",
    "LeadingCoeffVanishesModP",
    "SpecializedResultant",
    "sylvester_matrix",
    "det_bareiss",
    "det_bareiss_poly",
    "resultant_in_X",
    "resultant_at",
    "specialized_resultant",
    "resultant_mod_p",
    "univariate_resultant",
]


class ResultantError(ArithmeticError):
    pass


class ZeroPolynomial(ResultantError):
    pass


class SpecializationVanished(ResultantError):
    pass


class LeadingCoeffVanishesModP(ResultantError):
    pass


class SpecializedResultant(NamedTuple):
    value: int
    degree_dropped: bool
    dropped_a: bool = False
    dropped_b: bool = False


def sylvester_matrix(a_desc: Sequence, b_desc: Sequence, zero=0) -> list[list]:
    """Sylvester matrix from coefficient lists given highest power first."""
    m, n = len(a_desc) - 1, len(b_desc) - 1
    size = m + n
    rows = []
    for r in range(n):
        rows.append([zero] * r + list(a_desc) + [zero] * (size - m - 1 - r))
    for r in range(m):
        rows.append([zero] * r + list(b_desc) + [zero] * (size - n - 1 - r))
    return rows


def det_bareiss(matrix: Sequence[Sequence[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (piv * rowi[j] - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


# -- univariate integer polynomial kernels (coefficient lists, low first) --


def _pack(coeffs: Sequence[int], bits: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc << bits) + c
    return acc


def _unpack(value: int, bits: int, count: int) -> list[int]:
    out = []
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    for _ in range(count):
        r = value & mask
        if r >= half:
            r -= 1 << bits
        out.append(r)
        value = (value - r) >> bits
    if value != 0:
        raise OverflowError("packing width too small")
    return out


def _maxbits(c: Sequence[int]) -> int:
    return max((abs(v).bit_length() for v in c), default=0)


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < 8:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return _trim(out)
    # Kronecker substitution: one big-int product replaces the double loop.
    bits = _maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 2
    prod = _pack(a, bits) * _pack(b, bits)
    return _trim(_unpack(prod, bits, len(a) + len(b) - 1))


def _psub(a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = [(a[k] if k < len(a) else 0) - (b[k] if k < len(b) else 0) for k in range(n)]
    return _trim(out)


def _pdiv_exact(a: list[int], b: list[int]) -> list[int]:
    """Quotient of ``a`` by ``b`` in Z[Y], which must divide exactly."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    da, db = len(a) - 1, len(b) - 1
    if da < db:
        raise ArithmeticError("inexact polynomial division")
    if db == 0:
        out = []
        for v in a:
            q, r = divmod(v, b[0])
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return out
    # Evaluate at 2**bits, divide as integers, unpack; verified by multiplying back.
    bits = _maxbits(a) + da + 4
    while True:
        num, den = _pack(a, bits), _pack(b, bits)
        q, r = divmod(num, den)
        if r == 0:
            try:
                quot = _trim(_unpack(q, bits, da - db + 1))
            except OverflowError:
                quot = None
            if quot is not None and _pmul(quot, b) == a:
                return quot
        if bits > 64 * (_maxbits(a) + da + 64):
            raise ArithmeticError("inexact polynomial division")
        bits *= 2


def det_bareiss_poly(matrix: Sequence[Sequence[UniPoly]]) -> UniPoly:
    """Determinant of a matrix of polynomials in Y, fraction-free."""
    var = "Y"
    a = []
    for row in matrix:
        r = []
        for e in row:
            if isinstance(e, UniPoly):
                var = e.var
                r.append(list(e.coeffs))
            else:
                r.append(_trim([int(e)]))
        a.append(r)
    n = len(a)
    if n == 0:
        return UniPoly((1,), var)
    sign, prev = 1, [1]
    for k in range(n - 1):
        if not a[k][k]:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly((), var)
        piv = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                t = _psub(_pmul(piv, rowi[j]), _pmul(aik, rowk[j]))
                rowi[j] = _pdiv_exact(t, prev) if prev != [1] else t
            rowi[k] = []
        prev = piv
    res = a[n - 1][n - 1]
    return UniPoly(tuple(v * sign for v in res), var)


def _check_nonzero(a: BiPoly, b: BiPoly) -> None:
    if a.is_zero or b.is_zero:
        raise ZeroPolynomial("resultant of the zero polynomial is undefined")


def _rows_in_y(p: BiPoly) -> list[UniPoly]:
    return as_poly_in(p, "X")


def _specialize(rows: list[UniPoly], y0) -> list[int]:
    return _trim([r(y0) for r in rows])


def univariate_resultant(a: Sequence[int], b: Sequence[int]) -> int:
    """Exact resultant of two integer polynomials (low-first coefficient lists)."""
    a, b = _trim(list(a)), _trim(list(b))
    if not a or not b:
        raise ZeroPolynomial("resultant of the zero polynomial is undefined")
    return det_bareiss(sylvester_matrix(a[::-1], b[::-1]))


def _degree_bound(a: BiPoly, b: BiPoly) -> int:
    return a.deg_x * max(b.deg_y, 0) + b.deg_x * max(a.deg_y, 0)


def _sample(args) -> int:
    ra, rb, y0 = args
    sa = [r(y0) for r in ra]
    sb = [r(y0) for r in rb]
    return det_bareiss(sylvester_matrix(sa[::-1], sb[::-1]))


def _interpolate(points: Sequence[int], values: Sequence[int], var: str) -> UniPoly:
    """Newton interpolation over Q with an integrality check on the result."""
    n = len(points)
    consecutive = all(points[i + 1] - points[i] == 1 for i in range(n - 1))
    if consecutive:
        # Forward differences stay integral; k! divides the k-th one exactly.
        diffs = list(values)
        newton = [diffs[0]]
        fact = 1
        for k in range(1, n):
            diffs = [diffs[i + 1] - diffs[i] for i in range(len(diffs) - 1)]
            fact *= k
            q, r = divmod(diffs[0], fact)
            if r:
                raise ArithmeticError("non-integral interpolation coefficient")
            newton.append(q)
    else:
        table = [Fraction(v) for v in values]
        newton = [table[0]]
        for k in range(1, n):
            table = [
                (table[i + 1] - table[i]) / (points[i + k] - points[i])
                for i in range(len(table) - 1)
            ]
            newton.append(table[0])
    # Expand sum newton[k] * prod_{i<k} (Y - points[i]) from the inside out.
    coeffs: list = [newton[-1]]
    for k in range(n - 2, -1, -1):
        x0 = points[k]
        shifted = [0] + coeffs
        for i in range(len(coeffs)):
            shifted[i] -= x0 * coeffs[i]
        shifted[0] += newton[k]
        coeffs = shifted
    out = []
    for c in coeffs:
        c = Fraction(c)
        if c.denominator != 1:
            raise ArithmeticError("interpolated resultant is not integral")
        out.append(c.numerator)
    return UniPoly(tuple(out), var)


def resultant_in_X(
    a: BiPoly,
    b: BiPoly,
    backend: str = "interpolation",
    executor: Executor | None = None,
) -> UniPoly:
    """Full resultant ``Res_X(a, b)`` as a polynomial in Y.

    ``executor`` may be supplied to evaluate the sample points in parallel;
    the result does not depend on it.
    """
    _check_nonzero(a, b)
    ra, rb = _rows_in_y(a), _rows_in_y(b)
    if backend == "bareiss":
        mat = sylvester_matrix(ra[::-1], rb[::-1], zero=UniPoly((), "Y"))
        return det_bareiss_poly(mat)
    if backend != "interpolation":
        raise ValueError(f"unknown backend {backend!r}")
    needed = _degree_bound(a, b) + 1
    la, lb = ra[-1], rb[-1]
    points: list[int] = []
    y = 0
    while len(points) < needed:
        # Points where a leading coefficient vanishes drop the X-degree; skip them.
        if la(y) != 0 and lb(y) != 0:
            points.append(y)
        y += 1
    jobs = [(ra, rb, y0) for y0 in points]
    if executor is None:
        values = [_sample(j) for j in jobs]
    else:
        values = list(executor.map(_sample, jobs))
    return _interpolate(points, values, "Y")


def specialized_resultant(a: BiPoly, b: BiPoly, y0: int) -> SpecializedResultant:
    """Exact resultant in X of ``a(X, y0)`` and ``b(X, y0)``.

    If either specialization loses X-degree, the determinant is taken at
    the actual degrees and the drop is reported.
    """
    _check_nonzero(a, b)
    ra, rb = _rows_in_y(a), _rows_in_y(b)
    sa, sb = _specialize(ra, y0), _specialize(rb, y0)
    if not sa or not sb:
        raise SpecializationVanished(f"a specialization vanishes identically at Y={y0}")
    da = len(sa) - 1 < a.deg_x
    db = len(sb) - 1 < b.deg_x
    value = det_bareiss(sylvester_matrix(sa[::-1], sb[::-1]))
    return SpecializedResultant(value, da or db, da, db)


def resultant_at(a: BiPoly, b: BiPoly, y0: int) -> int:
    return specialized_resultant(a, b, y0).value


def _poly_mod(c: list[int], p: int) -> list[int]:
    return _trim([v % p for v in c])


def _rem_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        f = a[-1] * inv % p
        shift = len(a) - 1 - db
        for k in range(db + 1):
            a[shift + k] = (a[shift + k] - f * b[k]) % p
        _trim(a)
    return a


def resultant_mod_p(a: BiPoly, b: BiPoly, y0: int, p: int) -> int:
    """Resultant of the specializations at ``y0`` over the field with ``p`` elements.

    Raises :class:`LeadingCoeffVanishesModP` when a leading X-coefficient
    vanishes mod ``p``; reduce :func:`resultant_at` instead in that case.
    """
    _check_nonzero(a, b)
    ra, rb = _rows_in_y(a), _rows_in_y(b)
    sa = [r(y0) % p for r in ra]
    sb = [r(y0) % p for r in rb]
    if sa[-1] == 0 or sb[-1] == 0:
        raise LeadingCoeffVanishesModP(f"leading coefficient vanishes mod {p} at Y={y0}")
    f, g = sa, sb
    acc = 1
    while True:
        m, n = len(f) - 1, len(g) - 1
        if n == 0:
            return acc * pow(g[0], m, p) % p
        r = _rem_mod(f, g, p)
        if not r:
            return 0
        # Res(f, g) = (-1)^(mn) lc(g)^(m - deg r) Res(g, r)
        if (m * n) & 1:
            acc = -acc
        acc = acc * pow(g[-1], m - (len(r) - 1), p) % p
        f, g = g, r
