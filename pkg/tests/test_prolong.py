import pytest

from src.core.contact import GenFun, genfun_basis
from src.core.graded import GradedSlice
from src.core.linalg import ElementSpace
from src.core.models import ConstraintError, PartialProlongError, SuperDim
from src.core.prolong import (
    ContactAmbient, ProlongSeed, VectAmbient, contained_in, partial_surjective, prolong,
)
from src.core.superfunc import DomainSpec
from src.data.parser import parse_poly
from src.data.realizations import build_bj, build_rem_bj, contact_negative, contact_slice, frank_spec


def test_contact_symbol_prolongs_to_contact_algebra(k3):
    negative = contact_negative(k3)
    realized = GradedSlice(
        k3.field,
        {d: ElementSpace.span([x.realize() for x in negative.basis(d)], k3.field) for d in negative.degrees},
        -1,
        "k(3)_- como campos",
    )
    g = prolong(ProlongSeed(realized, None), VectAmbient(k3.domain), 1)
    assert g.sdim(0) == SuperDim(4, 0)
    assert g.sdim(1) == SuperDim(6, 0)


def test_prolongation_inside_contact_ambient(k3):
    g = prolong(ProlongSeed(contact_negative(k3), None), ContactAmbient(k3), 1)
    assert contained_in(contact_slice(k3, -2, 1, "k(3)"), g)
    assert g.truncated_at == 1


def test_vect_prolongation(q):
    domain = DomainSpec.create(q, ["u1", "u2"])
    ambient = VectAmbient(domain)
    negative = GradedSlice(q, {-1: ElementSpace.span(ambient.basis(-1), q)}, -1, "vect(2)_-")
    g = prolong(ProlongSeed(negative, None), ambient, 1)
    assert g.dims == {-1: SuperDim(2, 0), 0: SuperDim(4, 0), 1: SuperDim(6, 0)}


def test_partial_prolongation_must_lie_in_full_one(gf3):
    spec = frank_spec(gf3)
    outside = GenFun(spec, parse_poly(spec.domain, "t^(2)"))
    seed = ProlongSeed(contact_negative(spec), genfun_basis(spec, 0), [outside])
    with pytest.raises(ConstraintError):
        prolong(seed, ContactAmbient(spec), 1)


def test_non_surjective_partial_prolongation_is_an_error(gf3):
    spec = frank_spec(gf3)
    small = [GenFun(spec, parse_poly(spec.domain, "p^(2)*q"))]
    seed = ProlongSeed(contact_negative(spec), genfun_basis(spec, 0), small)
    assert not partial_surjective(seed.as_slice(), small)
    with pytest.raises(PartialProlongError):
        prolong(seed, ContactAmbient(spec), 1)


def test_non_surjective_partial_prolongation_when_allowed(gf3):
    spec = frank_spec(gf3)
    small = [GenFun(spec, parse_poly(spec.domain, "p^(2)*q"))]
    seed = ProlongSeed(contact_negative(spec), genfun_basis(spec, 0), small, allow_non_surjective=True)
    g = prolong(seed, ContactAmbient(spec), 1)
    assert g.metadata["partial_surjective"] is False
    assert g.sdim(1).total == 1


def test_rem_bj_opts_out_of_surjectivity(gf3):
    g = build_rem_bj(gf3, 1).slice
    assert g.metadata["partial_surjective"] is False
    assert g.sdim(0) == SuperDim(5, 4)


def test_bj_partial_prolongation_is_surjective(gf3):
    assert build_bj(gf3, 1).slice.metadata["partial_surjective"] is True
