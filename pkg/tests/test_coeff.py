import pytest

from src.core.coeff import GroundField, binom_int
from src.core.models import CharacteristicError, ParseError


@pytest.mark.parametrize("p", [-1, 1, 4, 9])
def test_rejects_non_prime_characteristic(p):
    with pytest.raises(CharacteristicError):
        GroundField(p)


def test_rational_fractions(q):
    half = q.fraction(1, 2)
    assert half * q(2) == q.one
    assert q.to_json(half) == "1/2"
    assert q.to_json(q(-3)) == -3


def test_fractions_mod_p(gf5):
    assert gf5("1/2") * gf5(2) == gf5.one
    assert gf5.to_json(gf5(-1)) == 4
    with pytest.raises(CharacteristicError):
        gf5.fraction(1, 5)


def test_parse_errors(q):
    with pytest.raises(ParseError):
        q.parse("uno")


@pytest.mark.parametrize("a, b, p, expected", [
    (5, 2, 0, 10),
    (5, 2, 5, 0),
    (6, 1, 5, 1),
    (7, 3, 5, 0),
    (4, 2, 2, 0),
    (3, 1, 2, 1),
    (2, 3, 0, 0),
])
def test_binomials_follow_lucas(a, b, p, expected):
    assert binom_int(a, b, p) == expected


def test_sign(gf3):
    assert gf3.sign(2) == gf3.one
    assert gf3.sign(1) == -gf3.one
    assert gf3.is_minus_one(gf3(2))
