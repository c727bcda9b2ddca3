from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from epbench.scalars import (
    ONE,
    ZERO,
    GaussianRational,
    ScalarSyntaxError,
    format_scalar,
    parse_scalar,
)
from strategies import gaussians, rng_for, random_scalar

G = GaussianRational


def test_rational_sum():
    assert G(Fraction(1, 2)) + G(Fraction(1, 3)) == G(Fraction(5, 6))


def test_i_squared():
    assert G(0, 1) * G(0, 1) == G(-1)


def test_additive_identity_on_random_values():
    rng = rng_for("scalars-identity")
    for _ in range(100):
        x = random_scalar(rng)
        assert x + ZERO == x
        assert x + 0 == x


def test_invert():
    assert G(Fraction(2, 3)).inverse() == G(Fraction(3, 2))
    # (1+i)(1/2 - i/2) = 1/2 - i/2 + i/2 - i^2/2 = 1
    assert G(1, 1).inverse() == G(Fraction(1, 2), Fraction(-1, 2))
    assert G(1, 1) * G(Fraction(1, 2), Fraction(-1, 2)) == ONE


def test_invert_zero():
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conj():
    assert G(1, 2).conj() == G(1, -2)
    assert G(5).conj() == G(5)


def test_conj_is_multiplicative_on_random_pairs():
    rng = rng_for("scalars-conj")
    for _ in range(100):
        a, b = random_scalar(rng), random_scalar(rng)
        assert (a * b).conj() == a.conj() * b.conj()


@pytest.mark.parametrize(
    "text, value",
    [
        ("0", G(0)),
        ("-3/2", G(Fraction(-3, 2))),
        ("1/2+3/4i", G(Fraction(1, 2), Fraction(3, 4))),
        ("-2i", G(0, -2)),
        ("i", G(0, 1)),
        ("-i", G(0, -1)),
        ("3-i", G(3, -1)),
        ("4/6", G(Fraction(2, 3))),
    ],
)
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("text", ["1//2", "", "1 /2", "+3", "1/2+", "2ii", "1/0", "a", "1+2"])
def test_parse_errors(text):
    with pytest.raises((ScalarSyntaxError, ZeroDivisionError)) as info:
        parse_scalar(text)
    if isinstance(info.value, ScalarSyntaxError):
        assert 0 <= info.value.pos <= len(text)


def test_syntax_error_reports_position():
    with pytest.raises(ScalarSyntaxError) as info:
        parse_scalar("1//2")
    assert info.value.pos in (1, 2)


def test_format_canonical():
    assert format_scalar(G(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4i"
    assert format_scalar(G(0, 1)) == "1i"
    assert format_scalar(G(Fraction(-6, 4))) == "-3/2"


def test_immutable():
    x = G(1)
    with pytest.raises(AttributeError):
        x.re = Fraction(2)


@given(gaussians)
def test_format_parse_roundtrip(x):
    assert parse_scalar(format_scalar(x)) == x


@given(gaussians, gaussians)
def test_canonical_form_after_operations(a, b):
    for v in (a + b, a - b, a * b, -a):
        for part in (v.re, v.im):
            assert part.denominator > 0
            from math import gcd

            assert gcd(abs(part.numerator), part.denominator) == 1
        if not v:
            assert v.re == Fraction(0, 1) and v.im == Fraction(0, 1)


@given(gaussians, gaussians, gaussians)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c


@given(gaussians)
def test_inverse_and_norm(x):
    assert x.conj().conj() == x
    p = x * x.conj()
    assert p.im == 0 and p.re >= 0
    if x:
        assert x * x.inverse() == ONE


@given(gaussians)
def test_hash_consistent_with_eq(x):
    y = parse_scalar(format_scalar(x))
    assert hash(x) == hash(y)
    if x.is_real():
        assert x == x.re and hash(x) == hash(x.re)


@given(st.integers(-(10**60), 10**60), st.integers(1, 10**60))
def test_big_integers_do_not_overflow(p, q):
    x = G(Fraction(p, q))
    assert (x * x) / x == x if x else True
