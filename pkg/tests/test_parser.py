import pytest

from src.core.fields import VField
from src.core.models import ParseError
from src.core.superfunc import DomainSpec, SuperPoly
from src.data.parser import (
    parse_degree_map, parse_field, parse_heights, parse_poly, parse_y_equation,
)


@pytest.fixture
def domain(q):
    return DomainSpec.create(q, ["u1", "u2", "u3"], ["xi"])


def test_ordinary_power_is_scaled_divided_power(domain):
    assert parse_poly(domain, "u1^2") == parse_poly(domain, "u1^(2)").scale(2)
    assert parse_poly(domain, "u1^3") == parse_poly(domain, "u1^(3)").scale(6)


def test_parentheses_and_signs(domain):
    lhs = parse_poly(domain, "-(u1 - u2)*xi")
    rhs = parse_poly(domain, "u2*xi - u1*xi")
    assert lhs == rhs


def test_fractions_reduce_in_finite_fields(gf5):
    domain = DomainSpec.create(gf5, ["t"])
    assert parse_poly(domain, "1/2*t") == parse_poly(domain, "3*t")


@pytest.mark.parametrize("text", ["", "u1 +", "w", "u1 $ u2", "(u1", "u1^"])
def test_bad_polynomials(domain, text):
    with pytest.raises(ParseError):
        parse_poly(domain, text)


def test_parse_field_by_name_and_index(domain):
    X = parse_field(domain, "u1*d_u2 - d3")
    expected = VField.d(domain, "u2", parse_poly(domain, "u1")) + VField.d(domain, 2, SuperPoly.one(domain).scale(-1))
    assert X == expected
    assert parse_field(domain, "du1") == VField.d(domain, "u1", SuperPoly.one(domain))


@pytest.mark.parametrize("text", ["u1*u2", "u1 d_w", "d9"])
def test_bad_fields(domain, text):
    with pytest.raises(ParseError):
        parse_field(domain, text)


def test_y_equation_terms(q):
    eq = parse_y_equation(q, "2*Yp1*Yq1 - Yp2*Yq2 - Y1 = 0")
    assert eq.terms == {("p1", "q1"): q(2), ("p2", "q2"): q(-1), ("1",): q(-1)}


def test_y_equation_powers_and_right_hand_side(q):
    assert parse_y_equation(q, "Yp1^2 = 0").terms == {("p1", "p1"): q(1)}
    eq = parse_y_equation(q, "Yq^2 = Yzeta*Yxi")
    assert eq.terms == {("q", "q"): q(1), ("zeta", "xi"): q(-1)}


def test_y_equation_rejects_plain_factors(q):
    with pytest.raises(ParseError):
        parse_y_equation(q, "p1*Yq1 = 0")


def test_heights():
    assert parse_heights("inf,2") == (None, 2)
    assert parse_heights("1, 1, 2") == (1, 1, 2)
    for bad in ("0", "x", "1,,2"):
        with pytest.raises(ParseError):
            parse_heights(bad)


def test_degree_map():
    assert parse_degree_map("t=2, p=1, xi1=0") == {"t": 2, "p": 1, "xi1": 0}
    assert parse_degree_map("q=-1") == {"q": -1}
    with pytest.raises(ParseError):
        parse_degree_map("t:2")
