import pytest

from src.core.contact import ContactSpec, GenFun, genfun_basis
from src.core.graded import (
    DegreeAssignment, check_transitive, homogeneity_relations, irreducibility,
    slice_elements, solve_degree_constraints, validate_w_grading, weisfeiler,
)
from src.core.linalg import ElementSpace
from src.core.models import (
    ConstraintError, Irreducibility, NotSubalgebraError, SuperDim, TruncationError, WorkbenchConfig,
)
from src.core.superfunc import DomainSpec
from src.data.parser import parse_poly
from src.data.realizations import contact_slice


@pytest.fixture
def k3_slice(k3):
    return contact_slice(k3, -2, 1, "k(3)")


def test_contact_slice_dimensions(k3_slice):
    assert k3_slice.dims == {
        -2: SuperDim(1, 0), -1: SuperDim(2, 0), 0: SuperDim(4, 0), 1: SuperDim(6, 0),
    }
    assert k3_slice.depth == 2
    assert not k3_slice.is_super
    assert k3_slice.closure_defects() == []


def test_restricted_and_negative(k3_slice):
    negative = k3_slice.negative()
    assert negative.degrees == [-2, -1]
    assert negative.truncated_at == -1
    assert k3_slice.restricted(lo=0).degrees == [0, 1]


def test_slice_elements_splits_homogeneous_parts(k3):
    f = GenFun(k3, parse_poly(k3.domain, "1 + p1 + t"))
    g = slice_elements([f], label="mezcla")
    assert g.dims == {-2: SuperDim(1, 0), -1: SuperDim(1, 0), 0: SuperDim(1, 0)}
    assert slice_elements([f], hi=-1).degrees == [-2, -1]


def test_slice_elements_separates_parities(k1_2):
    f = GenFun(k1_2, parse_poly(k1_2.domain, "xi1 + t"))
    g = slice_elements([f])
    assert g.sdim(-1) == SuperDim(0, 1)
    assert g.sdim(0) == SuperDim(1, 0)
    assert g.is_super


def test_closure_defects_detect_missing_component(k3):
    partial_slice = contact_slice(k3, -2, 0, "k(3) sin g_-1")
    g = partial_slice.with_component(-1, ElementSpace.span(genfun_basis(k3, -1)[:1], k3.field))
    assert g.closure_defects()


def test_homogeneity_relations(q):
    domain = DomainSpec.create(q, ["t", "p", "q"])
    f = parse_poly(domain, "t*p + p^(2)*q")
    assert homogeneity_relations([f]) == [({"t": 1, "p": 1}, {"p": 2, "q": 1})]


def test_degree_system_with_pins(q):
    domain = DomainSpec.create(q, ["t", "p", "q"])
    relations = homogeneity_relations([parse_poly(domain, "t*p + p^(2)*q")])
    solution = solve_degree_constraints(domain.names, relations, pins={"t": 2, "p": 1})
    assert solution.is_unique
    assert solution.normalized() == {"t": 2, "p": 1, "q": 1}


def test_degree_system_contradiction():
    with pytest.raises(ConstraintError):
        solve_degree_constraints(["p"], [({"p": 1}, {"p": 2})], pins={"p": 1})


def test_degree_system_unknown_name():
    with pytest.raises(ConstraintError):
        solve_degree_constraints(["p"], [({"x": 1}, {"p": 1})])


def test_nonpositive_degree_needs_finite_height(k3):
    with pytest.raises(TruncationError):
        DegreeAssignment((2, 1, 0)).check(k3.domain)
    with pytest.raises(ConstraintError):
        DegreeAssignment((2, 1)).check(k3.domain)


def test_weisfeiler_recovers_contact_grading(k3_slice):
    L0 = k3_slice.elements([0, 1])
    filtration = weisfeiler(k3_slice, L0)
    assert filtration.depth == 2
    assert filtration.graded_dims() == {
        -2: SuperDim(1, 0), -1: SuperDim(2, 0), 0: SuperDim(4, 0), 1: SuperDim(6, 0),
    }


def test_weisfeiler_rejects_non_subalgebra(k3_slice, k3):
    L0 = genfun_basis(k3, -1)
    with pytest.raises(NotSubalgebraError):
        weisfeiler(k3_slice, L0)


def test_contact_slice_is_transitive(k3_slice):
    assert check_transitive(k3_slice) == (True, [])


def test_w_grading_report(k3_slice):
    report = validate_w_grading(k3_slice, WorkbenchConfig(seed=7))
    assert report.transitive
    assert report.depth == 2
    assert report.generated_by_gm1
    assert report.irreducible_gm1 != Irreducibility.REDUCIBLE
    assert report.is_w_grading


def test_scalar_action_is_reducible(gf5):
    spec = ContactSpec.contact(gf5, 1)
    g = contact_slice(spec, -2, -1, "k(3)_-")
    grading = ElementSpace.span([GenFun(spec, parse_poly(spec.domain, "t"))], gf5)
    g = g.with_component(0, grading)
    verdict, witness = irreducibility(g, WorkbenchConfig(p=5, seed=11))
    assert verdict == Irreducibility.REDUCIBLE
    assert witness.dim == 1


def test_symplectic_action_is_irreducible_over_small_field(gf5):
    spec = ContactSpec.contact(gf5, 1)
    g = contact_slice(spec, -2, 0, "k(3)")
    verdict, witness = irreducibility(g, WorkbenchConfig(p=5, seed=11))
    assert verdict == Irreducibility.IRREDUCIBLE
    assert witness is None
