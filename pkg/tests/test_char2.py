import pytest

from src.core.char2 import check_superalgebra_axioms, desuperize, ideal_probe, queerify
from src.core.graded import slice_elements
from src.core.models import CharacteristicError, NotSubalgebraError, SuperDim
from src.core.prolong import VectAmbient
from src.core.superfunc import DomainSpec
from src.core.symbol import (
    add_central_squares, cross_product, grassmann_extension, heisenberg, symbol_jacobi_defects, with_degree_parity,
)
from src.data.realizations import (
    build_depth_one_superization, build_ksle_superization, build_mb38_superization, build_queer, contact_slice, kle_ck,
)


def vect_elements(field, height, top):
    domain = DomainSpec.create(field, ["u1"], heights=[height])
    ambient = VectAmbient(domain)
    return [X for d in range(-1, top + 1) for X in ambient.basis(d)]


def test_queer_vect_one_dimensions_and_axioms(gf2):
    g = build_queer(gf2, 0).slice
    assert g.dims == {-1: SuperDim(1, 1), 0: SuperDim(1, 1)}
    report = check_superalgebra_axioms(g.elements())
    assert report.ok, report.failures
    assert report.checked > 0


def test_queerify_needs_restricted_algebra(gf2):
    with pytest.raises(NotSubalgebraError):
        queerify(vect_elements(gf2, 2, 2))


def test_generalized_queerify_accepts_unrestricted(gf2):
    g = queerify(vect_elements(gf2, 2, 2), generalized=True)
    assert g.is_super
    assert g.sdim(-2) == SuperDim(1, 0)
    assert g.sdim(-1) == SuperDim(1, 1)


def test_queerify_needs_characteristic_two(gf3):
    with pytest.raises(CharacteristicError):
        queerify(vect_elements(gf3, 1, 1))


def test_desuperize_makes_everything_even(gf2):
    g = desuperize(build_queer(gf2, 0).slice)
    assert g.dims == {-1: SuperDim(2, 0), 0: SuperDim(2, 0)}
    assert g.label.startswith("F(")


def test_desuperize_rejects_odd_characteristic(k3):
    with pytest.raises(CharacteristicError):
        desuperize(contact_slice(k3, -2, -1, "k(3)_-"))


def test_depth_one_superization(gf2):
    s = build_depth_one_superization(gf2, -1, d=3).slice
    assert s.dims == {-2: SuperDim(3, 0), -1: SuperDim(0, 3)}


def test_central_squares_extend_the_symbol(gf2):
    alg = heisenberg(gf2, 0, 2)
    created = add_central_squares(alg, ["xi1"])
    assert created == ["s(xi1)"]
    assert alg.degrees[alg.index("s(xi1)")] == -2


def test_central_squares_need_characteristic_two(q):
    with pytest.raises(CharacteristicError):
        add_central_squares(heisenberg(q, 0, 2), ["xi1"])


def test_ideal_probe_finds_the_centre(q):
    alg = heisenberg(q, 1)
    g = slice_elements(alg.basis(), field=q, label=alg.name)
    report = ideal_probe(g)
    assert report.found
    assert report.ideal_dims == {-2: SuperDim(1, 0)}
    assert report.verdict == "IDEAL-FOUND"


def test_grassmann_extension_satisfies_jacobi(any_field):
    alg = kle_ck(any_field)
    assert alg.dim == 6 + 3 + 2 + 6 + 3
    assert symbol_jacobi_defects(alg) == []


def test_grassmann_extension_signs(q):
    alg = grassmann_extension(cross_product(q, contraction=True), [-3])
    x, xz = alg.element("x11"), alg.element("x11*z")
    e = alg.element("e1")
    assert xz.parity == 0
    assert x.bracket(e) == alg.element("w1")
    assert xz.bracket(e).is_zero
    assert x.bracket(alg.element("e1*z")).is_zero
    assert alg.element("x21").bracket(alg.element("x32*z")) == alg.element("e1*z")
    assert alg.element("x21*z").bracket(alg.element("x32")) == alg.element("e1*z", -1)


def test_degree_parity_needs_characteristic_two(q):
    with pytest.raises(CharacteristicError):
        with_degree_parity(kle_ck(q))


@pytest.mark.parametrize("builder", [build_mb38_superization, build_ksle_superization])
def test_depth_six_superizations_have_odd_degree_minus_three(gf2, builder):
    g = builder(gf2, -1).slice
    brackets = [x.bracket(y) for x in g.basis(-1) for y in g.basis(-2)]
    assert any(not b.is_zero for b in brackets)
    assert all(b.parity == 1 for b in brackets if not b.is_zero)
    assert all(x.parity == 1 for x in g.basis(-3))
    assert g.sdim(-6) == SuperDim(2, 0)
    assert all(not x.square().is_zero for x in g.basis(-3))


def test_ksle_superization_dimensions(gf2):
    g = build_ksle_superization(gf2, -1).slice
    assert g.dims == {-6: SuperDim(2, 0), -3: SuperDim(0, 2), -2: SuperDim(6, 0), -1: SuperDim(0, 12)}
