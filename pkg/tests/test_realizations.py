import pytest

from src.core.contact import GenFun
from src.core.distrib import algebraic_growth, flag
from src.core.models import SuperDim
from src.data.parser import parse_poly
from src.data.realizations import (
    BJ45_DEGREES, ME33_EQUATIONS, ME33_OUTSIDE, MELIKYAN_F, adjoint_chain, build_bj17, build_bj45,
    build_contact_series, build_desuperized, build_dy10, build_dy11, build_exceptional, build_frank, build_h,
    build_me_super, build_pericontact_series, build_po, build_sdy10, build_svect, build_tilde_frank,
    equation_slice, me_super_spec, melikyan_spec, regraded,
)


def test_contact_series_dimensions(q):
    real = build_contact_series(q, 1, n=1)
    assert real.slice.dims == {
        -2: SuperDim(1, 0), -1: SuperDim(2, 0), 0: SuperDim(4, 0), 1: SuperDim(6, 0),
    }
    assert str(flag(real.flag_fields)) == "(2,3)C"


def test_pericontact_series_growth(q):
    real = build_pericontact_series(q, -1, n=2)
    assert str(algebraic_growth(real.slice.negative())) == "(2|2, 2|3)C"


def test_po_and_h(q):
    assert build_po(q, 0, 1).slice.dims == {-2: SuperDim(1, 0), -1: SuperDim(2, 0), 0: SuperDim(3, 0)}
    assert build_h(q, 0, 1).slice.dims == {-1: SuperDim(2, 0), 0: SuperDim(3, 0)}


def test_special_vector_fields(q):
    g = build_svect(q, 1, n=2).slice
    assert g.dims == {-1: SuperDim(2, 0), 0: SuperDim(3, 0), 1: SuperDim(4, 0)}


def test_melikyan_adjoint_chain(gf5):
    spec = melikyan_spec(gf5, "p2")
    chain = adjoint_chain(spec, MELIKYAN_F["F_q1"], "p2", 3)

    def fun(text):
        return GenFun(spec, parse_poly(spec.domain, text))

    assert chain[1] == fun("2*p2*q1 - 2*q2^(2)")
    assert chain[2] == fun("2*q2")
    assert chain[3] == fun("-2")


def test_frank_low_degrees(gf3):
    g = build_frank(gf3, 2).slice
    assert g.dims == {
        -2: SuperDim(1, 0), -1: SuperDim(2, 0), 0: SuperDim(4, 0), 1: SuperDim(2, 0), 2: SuperDim(4, 0),
    }


def test_tilde_frank_has_depth_one(gf3):
    g = build_tilde_frank(gf3, 0).slice
    assert g.depth == 1
    assert g.dims == {-1: SuperDim(3, 0), 0: SuperDim(5, 0)}


def test_me33_keeps_p_eta_out_of_the_zero_component(gf3):
    spec = me_super_spec(gf3)
    p_eta = GenFun(spec, parse_poly(spec.domain, ME33_OUTSIDE))
    solutions = equation_slice(spec, ME33_EQUATIONS, 0, "Me(3|3)")
    assert solutions.sdim(0) == SuperDim(4, 3)
    assert solutions.component(0).contains(p_eta)

    g = build_me_super(gf3, 0).slice
    assert g.dims == {-2: SuperDim(1, 0), -1: SuperDim(2, 3), 0: SuperDim(4, 2)}
    assert not g.component(0).contains(p_eta)


def test_me34_lowest_component_is_one_dimensional(gf3):
    g = build_me_super(gf3, -1, "Me(3|4)").slice
    assert g.dims == {-3: SuperDim(0, 1), -2: SuperDim(3, 0), -1: SuperDim(0, 3)}


@pytest.mark.slow
def test_bj45_zero_component_needs_bj17_beyond_degree_one(gf3):
    low = regraded(build_bj17(gf3, 1).slice, BJ45_DEGREES, 0, "Bj(4|5)")
    assert low.sdim(0) == SuperDim(2, 4)
    g = build_bj45(gf3, 0).slice
    assert g.sdim(0) == SuperDim(3, 4)
    assert {d: g.sdim(d) for d in (-3, -2, -1)} == {
        -3: SuperDim(0, 1), -2: SuperDim(2, 2), -1: SuperDim(2, 2),
    }


def test_ck_negative_part(q):
    g = build_exceptional(q, -1, "kle96-CK").slice
    assert g.dims == {-3: SuperDim(0, 2), -2: SuperDim(3, 3), -1: SuperDim(6, 6)}
    assert str(algebraic_growth(g)) == "(6|6, 9|9, 9|11)"
    assert g.closure_defects() == []


def test_desuperized_ck_negative_part(gf2):
    g = build_desuperized(gf2, -1, "kle96-CK").slice
    assert str(algebraic_growth(g)) == "(12,18,20)"


def test_special_dy10_drops_only_h3(gf3):
    full = build_dy10(gf3, 0).slice
    g = build_sdy10(gf3, 0).slice
    assert {d: g.sdim(d).total for d in g.degrees} == {-4: 3, -3: 1, -2: 3, -1: 3, 0: 8}
    assert full.sdim(0).total == 9
    assert all(X.divergence().is_zero for X in g.basis(0))
    h3 = next(X for X in full.basis(0) if not X.divergence().is_zero)
    assert not g.component(0).contains(h3)


@pytest.mark.slow
def test_dy11_zero_component(gf3):
    g = build_dy11(gf3, 0).slice
    assert {d: g.sdim(d).total for d in g.degrees} == {-3: 2, -2: 3, -1: 6, 0: 8}
