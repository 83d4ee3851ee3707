from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conftest import PRINTED, eval_printed
from theta_cert.bigpoly import X, Y, partial_derivative, poly_eval
from theta_cert.modular_tables import (
    TABLE_PATH_ENV,
    DegreeMismatch,
    NotAvailable,
    ParseError,
    embedded_entries,
    get_poly,
    load_external,
    load_file,
    psi,
    serialize,
    validate_tables,
)

# P(1, 1) and P(2, 3), evaluated straight from the printed grouped forms.
CHECKSUMS = {
    ("pow2", 2): (0, -6),
    ("pow2", 4): (0, -8),
    ("pow2", 8): (0, -240),
    ("pow2", 16): (0, -1965824),
    ("odd", 3): (15, 71),
    ("odd", 5): (2655, 25951),
    ("odd", 7): (435240, 8526679),
    ("odd", 9): (2606237925, 30099663311),
    ("odd", 11): (296784000, 334715776081),
}

P5_TEXT = """family=odd n=5
# printed quintic-level polynomial, typed term by term
0 0 25
1 0 -126
1 1 832
1 2 -308
1 3 32
1 4 -1
2 0 255
2 1 1920
2 2 -120
3 0 -260
3 1 320
3 2 -20
4 0 135
5 0 -30
6 0 1
"""


@pytest.mark.parametrize("key", sorted(CHECKSUMS))
def test_checksums(key):
    p = get_poly(*key).poly
    assert (poly_eval(p, 1, 1), poly_eval(p, 2, 3)) == CHECKSUMS[key]


@pytest.mark.parametrize("key", sorted(PRINTED))
def test_printed_forms_agree(key):
    p = get_poly(*key).poly
    for x, y in [(1, 1), (2, 3), (-3, 5), (7, -2)]:
        assert poly_eval(p, x, y) == eval_printed(key, x, y)
    assert CHECKSUMS[key] == (eval_printed(key, 1, 1), eval_printed(key, 2, 3))


def test_get_poly_examples(p3):
    assert p3 == 9 - (Y**2 - 16 * Y + 28) * X + 30 * X**2 - 12 * X**3 + X**4
    assert get_poly("pow2", 8).poly == 64 * X**2 - 16 * (1 + Y) ** 2 * X + (1 - Y) ** 4
    with pytest.raises(NotAvailable):
        get_poly("odd", 13)
    with pytest.raises(NotAvailable):
        get_poly("even", 4)


@pytest.mark.parametrize("n,value", [(1, 1), (2, 3), (3, 4), (9, 12), (15, 24), (16, 24), (7, 8), (11, 12), (10**6, 1800000)])
def test_psi_examples(n, value):
    assert psi(n) == value


def test_psi_brute_force():
    # psi(n) counts the index of Gamma_0(n): triples (u, v, w) with gcd 1, uw = n, 0 <= v < w
    for n in range(1, 60):
        count = sum(1 for u in range(1, n + 1) if n % u == 0 for v in range(n // u) if gcd(gcd(u, v), n // u) == 1)
        assert psi(n) == count


@given(st.integers(1, 100), st.integers(1, 100))
def test_psi_multiplicative(a, b):
    if gcd(a, b) == 1:
        assert psi(a * b) == psi(a) * psi(b)


def test_validate_tables_passes():
    report = validate_tables()
    assert report.passed
    degs = {c.entry: int(c.value) for c in report.checks if c.check.startswith("deg_X")}
    assert [degs[f"odd:{n}"] for n in (3, 5, 7, 9, 11)] == [4, 6, 8, 12, 12]


def test_pow2_structure():
    for m in (3, 4):
        n = 2**m
        p = get_poly("pow2", n).poly
        assert poly_eval(p, X, 0) == (n * X - 1) ** (2 ** (m - 2))
        assert poly_eval(partial_derivative(p, "Y"), Fraction(1, n), 0) == -(2 ** (2 ** (m - 1) - 1))


def test_validate_flags_broken_entry():
    bad = load_external(P5_TEXT.replace("0 0 25", "0 0 26"))
    assert validate_tables([bad]).passed  # degree is fine
    import dataclasses

    pow2 = get_poly("pow2", 8)
    broken = dataclasses.replace(pow2, poly=pow2.poly + Y)
    assert not validate_tables([broken]).passed


def test_load_external_p5():
    entry = load_external(P5_TEXT)
    assert entry == get_poly("odd", 5)
    assert entry.poly == get_poly("odd", 5).poly


def test_load_external_errors():
    with pytest.raises(ParseError):
        load_external("")
    with pytest.raises(DegreeMismatch):
        load_external(P5_TEXT.replace("n=5", "n=7"))
    with pytest.raises(ParseError) as exc:
        load_external("family=odd n=3\n0 0 9\n0 0 9\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        load_external("family=odd n=3\n1 0 4\n0 0 9\n")
    assert exc.value.line == 3
    with pytest.raises(ParseError) as exc:
        load_external("family=odd n=3\n0 0 nine\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        load_external("fam=odd n=3\n")


@pytest.mark.parametrize("entry", embedded_entries(), ids=lambda e: f"{e.family}{e.n}")
def test_roundtrip(entry):
    text = serialize(entry)
    assert load_external(text) == entry
    assert load_external(text).poly == entry.poly
    assert text.endswith("\n") and "\r" not in text


def test_external_dir(tmp_path, monkeypatch):
    text = serialize(get_poly("odd", 3)).replace("n=3", "n=13", 1)
    (tmp_path / "odd_13.mptab").write_text(text)
    monkeypatch.setenv(TABLE_PATH_ENV, str(tmp_path))
    # deg 4 != psi(13) = 14, so the bogus file is refused
    with pytest.raises(DegreeMismatch):
        get_poly("odd", 13)
    f = tmp_path / "p5.mptab"
    f.write_text(P5_TEXT)
    assert load_file(f) == get_poly("odd", 5)
