import pytest

from src.core.contact import (
    ContactSpec, GenFun, b_ab_member, contact_bracket, contact_form, contact_regrading,
    genfun_basis, pericontact_regrading, poisson_bracket, realize, solve_equation_subspace,
)
from src.core.fields import VField, form_factor, lie_derivative_form, pairing
from src.core.models import CharacteristicError, ExcludedParameterError
from src.core.superfunc import partial
from src.data.parser import parse_poly, parse_y_equation

from .conftest import random_homogeneous, random_poly

SAMPLES = 100


def poly(spec, text):
    return parse_poly(spec.domain, text)


def bracket(spec, a, b):
    return contact_bracket(spec, poly(spec, a), poly(spec, b))


def test_contact_bracket_normalization(k3, k1_2):
    assert bracket(k3, "p1", "q1") == poly(k3, "-1")
    assert bracket(k3, "1", "t") == poly(k3, "2")
    assert bracket(k3, "t", "p1") == poly(k3, "-p1")
    assert bracket(k1_2, "xi1", "eta1") == poly(k1_2, "-1")


def test_theta_squares_to_minus_one(q):
    spec = ContactSpec.contact(q, 0, 1)
    assert bracket(spec, "theta", "theta") == poly(spec, "-1")


def test_contact_field_pairs_to_twice_the_function(k3):
    alpha = contact_form(k3)
    for text in ["1", "t", "p1", "t*p1*q1", "q1^(3)"]:
        f = poly(k3, text)
        assert pairing(realize(k3, f), alpha) == f.scale(2)


@pytest.mark.parametrize("f_text, g_text", [
    ("p1", "q1"), ("t", "p1*q1"), ("t*p1", "q1^(2)"), ("p1^(2)", "t*q1"), ("t^(2)", "p1"),
])
def test_realize_is_a_morphism(k3, f_text, g_text):
    f, g = poly(k3, f_text), poly(k3, g_text)
    lhs = realize(k3, f).bracket(realize(k3, g))
    assert lhs == realize(k3, contact_bracket(k3, f, g))


SPECS = {
    "k(3)": lambda F: ContactSpec.contact(F, 1),
    "k(3|2)": lambda F: ContactSpec.contact(F, 1, 2),
    "k(1|3)": lambda F: ContactSpec.contact(F, 0, 3),
    "m(2)": lambda F: ContactSpec.pericontact(F, 2),
}


@pytest.mark.parametrize("kind", list(SPECS))
def test_realize_is_a_morphism_on_random_functions(any_field, rng, kind):
    spec = SPECS[kind](any_field)
    if any_field.p == 2 and (not spec.is_contact or spec.theta_index is not None):
        pytest.skip("con p = 2 no hay corchete pericontacto ni theta")
    for _ in range(SAMPLES):
        f, g = random_poly(spec.domain, rng, terms=2), random_poly(spec.domain, rng, terms=2)
        lhs = realize(spec, f).bracket(realize(spec, g))
        assert lhs == realize(spec, contact_bracket(spec, f, g))


def test_contact_bracket_jacobi(any_field, rng):
    spec = ContactSpec.contact(any_field, 1, 2)
    for _ in range(SAMPLES):
        parities = [rng.randint(0, 1) for _ in range(3)]
        f, g, h = (random_homogeneous(spec.domain, rng, p, terms=2) for p in parities)
        lhs = contact_bracket(spec, f, contact_bracket(spec, g, h))
        rhs = (contact_bracket(spec, contact_bracket(spec, f, g), h)
               + contact_bracket(spec, g, contact_bracket(spec, f, h)).scale(any_field.sign(parities[0] * parities[1])))
        assert lhs == rhs


def test_odd_generators_close_on_time_derivative(k1_2):
    K_xi = realize(k1_2, poly(k1_2, "xi1"))
    K_eta = realize(k1_2, poly(k1_2, "eta1"))
    assert K_xi.bracket(K_eta) == VField.d(k1_2.domain, "t").scale(-2)
    assert K_xi.bracket(K_eta) == realize(k1_2, bracket(k1_2, "xi1", "eta1"))


@pytest.mark.parametrize("text", ["1", "t", "p1", "t*p1", "q1^(2)", "t^(2)*q1"])
def test_lie_derivative_of_contact_form(k3, text):
    f = poly(k3, text)
    alpha = contact_form(k3)
    L = lie_derivative_form(realize(k3, f), alpha)
    assert form_factor(alpha, L) == partial("t", f).scale(2)



@pytest.mark.parametrize("n, m", [(1, 0), (1, 2)])
def test_lie_derivative_of_contact_form_on_random_functions(any_field, rng, n, m):
    spec = ContactSpec.contact(any_field, n, m)
    alpha = contact_form(spec)
    for _ in range(SAMPLES):
        f = random_poly(spec.domain, rng)
        L = lie_derivative_form(realize(spec, f), alpha)
        assert form_factor(alpha, L) == partial("t", f).scale(2)


@pytest.mark.parametrize("n", [1, 2])
def test_lie_derivative_of_pericontact_form_on_random_functions(any_field, rng, n):
    # L_{M_f} alpha_0 = -(-1)^{p(f)} 2 f_tau alpha_0
    spec = ContactSpec.pericontact(any_field, n)
    alpha = contact_form(spec)
    for _ in range(SAMPLES):
        parity = rng.randint(0, 1)
        f = random_homogeneous(spec.domain, rng, parity)
        L = lie_derivative_form(realize(spec, f), alpha)
        expected = partial("tau", f).scale(2).scale(any_field.sign(parity + 1))
        assert form_factor(alpha, L) == expected


def test_pericontact_factor_sign_for_even_function(q):
    spec = ContactSpec.pericontact(q, 2)
    alpha = contact_form(spec)
    L = lie_derivative_form(realize(spec, poly(spec, "tau*xi1")), alpha)
    assert form_factor(alpha, L) == poly(spec, "-2*xi1")
    assert pairing(realize(spec, poly(spec, "q1")), alpha) == poly(spec, "2*q1")

def test_poisson_bracket_ignores_time(k3):
    assert poisson_bracket(k3, poly(k3, "p1"), poly(k3, "q1")) == poly(k3, "1")
    assert poisson_bracket(k3, poly(k3, "t"), poly(k3, "p1")).is_zero


def test_pericontact_bracket(q):
    spec = ContactSpec.pericontact(q, 2)
    value = contact_bracket(spec, poly(spec, "q1"), poly(spec, "xi1"))
    assert value == poly(spec, "-1")
    assert contact_bracket(spec, poly(spec, "q1"), poly(spec, "xi2")).is_zero


def test_pericontact_bracket_needs_odd_characteristic(gf2):
    spec = ContactSpec.pericontact(gf2, 1, heights=[1])
    with pytest.raises(CharacteristicError):
        contact_bracket(spec, poly(spec, "q1"), poly(spec, "xi1"))


def test_genfun_grading(k3):
    assert [g.degree() for g in genfun_basis(k3, -2)] == [-2]
    assert len(genfun_basis(k3, -1)) == 2
    assert len(genfun_basis(k3, 0)) == 4
    assert len(genfun_basis(k3, 0, t_free=True)) == 3


def test_pericontact_parity_is_shifted(q):
    spec = ContactSpec.pericontact(q, 1)
    assert GenFun(spec, poly(spec, "1")).parity == 1
    assert GenFun(spec, poly(spec, "xi1")).parity == 0


def test_regradings_and_exclusions():
    assert contact_regrading(1, 2, 1) == [2, 1, 1, 2, 0]
    assert pericontact_regrading(3, 3) == [1, 1, 1, 1, 0, 0, 0]
    with pytest.raises(ExcludedParameterError):
        contact_regrading(0, 4, 1)
    with pytest.raises(ExcludedParameterError):
        pericontact_regrading(3, 2)


def test_equation_subspace_of_time_free_functions(k3):
    # Y_1 = ∂_t: el núcleo son las funciones sin t
    equation = parse_y_equation(k3.field, "Y1 = 0")
    solutions = solve_equation_subspace(k3, [equation], 1)
    assert len(solutions) == len(genfun_basis(k3, 1, t_free=True))
    assert all(partial("t", g.f).is_zero for g in solutions)


def test_b_ab_membership(q):
    spec = ContactSpec.pericontact(q, 2)
    assert b_ab_member(spec, 1, 1, poly(spec, "q1*xi2"))
    assert not b_ab_member(spec, 0, 1, poly(spec, "tau"))
