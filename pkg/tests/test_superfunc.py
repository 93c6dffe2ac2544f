import pytest

from src.core.models import DomainMismatchError, TruncationError
from src.core.superfunc import (
    DomainSpec, SuperPoly, berezin_top_coefficient, monomials_of_degree, multiply, partial,
)

from .conftest import random_homogeneous


@pytest.fixture
def domain(any_field):
    return DomainSpec.create(any_field, ["u", "v"], ["xi", "eta"], heights=[1, 2])


def var(domain, name, power=1):
    return SuperPoly.var(domain, name, power)


def test_divided_power_product(q):
    D = DomainSpec.create(q, ["u"])
    u = var(D, "u")
    assert u * u == var(D, "u", 2).scale(2)
    assert var(D, "u", 2) * var(D, "u") == var(D, "u", 3).scale(3)


def test_heights_truncate_products(gf3):
    D = DomainSpec.create(gf3, ["u"], heights=[1])
    assert D.caps == (2,)
    assert var(D, "u", 3).is_zero
    assert (var(D, "u", 2) * var(D, "u")).is_zero


def test_odd_indeterminates_anticommute(q):
    D = DomainSpec.create(q, [], ["xi", "eta"])
    xi, eta = var(D, "xi"), var(D, "eta")
    assert xi * eta == -(eta * xi)
    assert (xi * xi).is_zero


def test_left_odd_derivative(q):
    D = DomainSpec.create(q, [], ["xi", "eta"])
    xi_eta = var(D, "xi") * var(D, "eta")
    assert partial("xi", xi_eta) == var(D, "eta")
    assert partial("eta", xi_eta) == -var(D, "xi")


def test_supercommutativity(domain, rng):
    for _ in range(10):
        pf, pg = rng.randint(0, 1), rng.randint(0, 1)
        f = random_homogeneous(domain, rng, pf)
        g = random_homogeneous(domain, rng, pg)
        assert f * g == (g * f).scale(domain.field.sign(pf * pg))


def test_associativity(domain, rng):
    for _ in range(10):
        f, g, h = (random_homogeneous(domain, rng, rng.randint(0, 1)) for _ in range(3))
        assert (f * g) * h == f * (g * h)


def test_super_leibniz(domain, rng):
    for _ in range(10):
        pf = rng.randint(0, 1)
        f = random_homogeneous(domain, rng, pf)
        g = random_homogeneous(domain, rng, rng.randint(0, 1))
        for i in range(domain.size):
            sign = domain.field.sign(domain.parities[i] * pf)
            assert partial(i, f * g) == partial(i, f) * g + (f * partial(i, g)).scale(sign)


def test_monomials_of_degree_respect_weights(q):
    D = DomainSpec.create(q, ["t", "p"], degrees=[2, 1])
    assert monomials_of_degree(D, 2) == [(1, 0), (0, 2)]


def test_nonpositive_weight_needs_height(q):
    D = DomainSpec.create(q, ["t", "p"], degrees=[0, 1])
    with pytest.raises(TruncationError):
        monomials_of_degree(D, 1)


def test_degrees_do_not_change_the_domain(q):
    D = DomainSpec.create(q, ["u"])
    assert D.with_degrees([3]) == D


def test_mixing_domains_fails(q, gf3):
    a = SuperPoly.one(DomainSpec.create(q, ["u"]))
    b = SuperPoly.one(DomainSpec.create(gf3, ["u"], heights=[1]))
    with pytest.raises(DomainMismatchError):
        multiply(a, b)


def test_berezin_top_coefficient(gf3):
    D = DomainSpec.create(gf3, ["u"], ["xi"], heights=[1])
    top = SuperPoly.monomial(D, (2, 1), 2)
    assert berezin_top_coefficient(top + SuperPoly.one(D)) == gf3(2)
    with pytest.raises(TruncationError):
        berezin_top_coefficient(SuperPoly.one(DomainSpec.create(gf3, ["u"])))


def test_degree_and_parity(q):
    D = DomainSpec.create(q, ["u"], ["xi"], degrees=[1, 2])
    f = var(D, "u", 2) + var(D, "xi")
    assert f.degree() == 2
    assert f.parity is None
    assert (var(D, "u") * var(D, "xi")).parity == 1
