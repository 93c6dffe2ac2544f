import pytest

from src.core.fields import (
    Density, Derivation, OneForm, VField, act_on_density, is_integrable, pairing,
)
from src.core.models import CharacteristicError
from src.core.superfunc import DomainSpec, SuperPoly

from .conftest import random_homogeneous


def d(domain, name, coefficient=None):
    return VField.d(domain, name, coefficient)


def test_bracket_of_coordinate_fields(q):
    D = DomainSpec.create(q, ["u"])
    u = SuperPoly.var(D, "u")
    assert d(D, "u").bracket(d(D, "u", u)) == d(D, "u")


def test_odd_fields_anticommute(q):
    D = DomainSpec.create(q, ["t"], ["xi"])
    X = d(D, "xi") + d(D, "t", SuperPoly.var(D, "xi"))
    # [X, X] = 2 X∘X = 2∂_t
    assert X.bracket(X) == d(D, "t").scale(2)


def test_jacobi_on_random_fields(any_field, rng):
    D = DomainSpec.create(any_field, ["u", "v"], ["xi"])

    def random_field(parity):
        comps = {}
        for i, par in enumerate(D.parities):
            comps[i] = random_homogeneous(D, rng, (parity + par) % 2, terms=2)
        return VField(D, comps)

    for _ in range(100):
        parities = [rng.randint(0, 1) for _ in range(3)]
        X, Y, Z = (random_field(p) for p in parities)
        sign = any_field.sign(parities[0] * parities[1])
        lhs = X.bracket(Y.bracket(Z))
        rhs = X.bracket(Y).bracket(Z) + Y.bracket(X.bracket(Z)).scale(sign)
        assert lhs == rhs


def test_divergence(q):
    D = DomainSpec.create(q, ["u", "v"])
    u, v = SuperPoly.var(D, "u"), SuperPoly.var(D, "v")
    X = d(D, "u", u * v) + d(D, "v", v)
    assert X.divergence() == v + SuperPoly.one(D)


def test_p_power_of_euler_field_is_itself(gf3):
    D = DomainSpec.create(gf3, ["u"], heights=[1])
    X = d(D, "u", SuperPoly.var(D, "u"))
    assert X.p_power() == X


def test_p_power_can_leave_special_fields(gf3):
    D = DomainSpec.create(gf3, ["u"], heights=[2])
    power = d(D, "u").p_power()
    assert isinstance(power, Derivation)
    assert not power.is_special()
    assert power.apply(SuperPoly.var(D, "u", 3)) == SuperPoly.one(D)


def test_p_power_needs_positive_characteristic(q):
    D = DomainSpec.create(q, ["u"])
    with pytest.raises(CharacteristicError):
        d(D, "u").p_power()


def test_square_needs_characteristic_two(q):
    D = DomainSpec.create(q, [], ["xi"])
    with pytest.raises(CharacteristicError):
        d(D, "xi").square()


def test_half_density_action(q):
    D = DomainSpec.create(q, ["u"])
    u = SuperPoly.var(D, "u")
    out = act_on_density(d(D, "u", u), Density(u, q.fraction(-1, 2)))
    assert out.f == u.scale(q.fraction(1, 2))


def test_pairing_with_differential(q):
    D = DomainSpec.create(q, ["u", "v"])
    u, v = SuperPoly.var(D, "u"), SuperPoly.var(D, "v")
    f = u * v
    X = d(D, "u") + d(D, "v", u)
    assert pairing(X, OneForm.d(f)) == X.apply(f)


def test_integrability(q):
    D = DomainSpec.create(q, ["t", "p", "q"])
    p, qq = SuperPoly.var(D, "p"), SuperPoly.var(D, "q")
    assert is_integrable([d(D, "p"), d(D, "q")], 2)
    contact = [d(D, "t", p) - d(D, "q"), d(D, "t", qq) + d(D, "p")]
    result = is_integrable(contact, 1)
    assert not result
    assert result.witness == (0, 1)
