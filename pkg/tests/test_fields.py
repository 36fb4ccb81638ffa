from __future__ import annotations

import random
from fractions import Fraction

import pytest

from grlr.errors import ScalarParseError
from grlr.fields import RATIONALS, Field, field_from_json, parse_field_label, prime_field


def test_rational_parse_and_format_round_trip():
    f = RATIONALS
    for text, want in [("3", Fraction(3)), ("-2", Fraction(-2)), ("4/6", Fraction(2, 3)), ("+1/2", Fraction(1, 2))]:
        x = f.parse(text)
        assert x == want
        assert f.parse(f.format(x)) == x


def test_prime_parse_reduces_mod_p():
    f = prime_field(5)
    assert f.parse("7") == 2
    assert f.parse("-1") == 4
    assert f.parse("1/2") == 3  # 2*3 = 6 = 1
    assert f.format(f.parse("1/2")) == "3"


@pytest.mark.parametrize("bad", ["", "x", "1.5", "1e3", "2/", "/3", "1/0", "2 3"])
def test_scalar_parse_rejections(bad):
    with pytest.raises(ScalarParseError):
        RATIONALS.parse(bad)
    with pytest.raises(ScalarParseError):
        prime_field(7).parse(bad)


def test_prime_parse_rejects_vanishing_denominator():
    with pytest.raises(ScalarParseError):
        prime_field(5).parse("3/10")


def test_nonprime_modulus_rejected():
    for n in (1, 4, 6, 9, 100):
        with pytest.raises(ValueError):
            Field("prime", n)


def test_field_labels():
    assert parse_field_label("q") == RATIONALS
    assert parse_field_label("rationals") == RATIONALS
    assert parse_field_label("gf5") == prime_field(5)
    assert parse_field_label("F3") == prime_field(3)
    with pytest.raises(ScalarParseError):
        parse_field_label("gf4")
    with pytest.raises(ScalarParseError):
        parse_field_label("complex")


def test_field_json_round_trip():
    for f in (RATIONALS, prime_field(2), prime_field(11)):
        assert field_from_json(f.to_json()) == f


def test_check_rejects_foreign_values():
    with pytest.raises(TypeError):
        RATIONALS.check(0.5)
    with pytest.raises(TypeError):
        prime_field(5).check(Fraction(1, 2))
    with pytest.raises(ValueError):
        prime_field(5).check(7)


def test_elements_enumeration():
    assert list(prime_field(7).elements()) == [0, 1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        RATIONALS.elements()


def test_prime_arithmetic_matches_integers_mod_p():
    # seeded scan: field ops agree with plain integer arithmetic mod p
    rng = random.Random(11)
    for p in (2, 3, 5, 13):
        f = prime_field(p)
        for _ in range(200):
            a, b = rng.randrange(p), rng.randrange(p)
            assert f.add(a, b) == (a + b) % p
            assert f.mul(a, b) == (a * b) % p
            assert f.sub(a, b) == (a - b) % p
            if b:
                assert f.mul(f.inv(b), b) == 1
                assert f.mul(f.div(a, b), b) == a


def test_rational_arithmetic_is_exact():
    rng = random.Random(5)
    f = RATIONALS
    for _ in range(100):
        a = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        b = Fraction(rng.randint(-20, 20), rng.randint(1, 9))
        assert f.add(a, b) == a + b
        assert f.mul(a, b) == a * b
        if b:
            assert f.div(a, b) * b == a
    assert f.add(Fraction(1, 3), Fraction(2, 3)) == 1
