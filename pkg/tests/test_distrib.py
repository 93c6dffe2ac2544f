import pytest

from src.core.contact import realize
from src.core.distrib import (
    algebraic_growth, equivalence_verdict, fingerprint, flag, growth_formula, is_contact_type,
    symbol_constants,
)
from src.core.graded import slice_elements
from src.core.models import ExcludedParameterError, GrowthVector, Series
from src.core.symbol import anti_heisenberg, heisenberg
from src.data.parser import parse_poly


def symbol_slice(alg):
    return slice_elements(alg.basis(), field=alg.field, label=alg.name)


def test_flag_of_contact_distribution(k3):
    fields = [realize(k3, parse_poly(k3.domain, name)) for name in ("p1", "q1")]
    growth = flag(fields)
    assert str(growth) == "(2,3)C"
    assert growth == growth_formula(Series.K, 1, 0, 0)


def test_flag_of_odd_contact_distribution(k1_2):
    fields = [realize(k1_2, parse_poly(k1_2.domain, name)) for name in ("xi1", "eta1")]
    assert flag(fields) == growth_formula(Series.K, 0, 2, 0)


def test_flag_of_empty_distribution():
    assert flag([]) == GrowthVector(())


@pytest.mark.parametrize("alg_builder, expected", [
    (lambda F: heisenberg(F, 4, 6), "(8|6, 9|6)C"),
    (lambda F: anti_heisenberg(F, 4), "(4|4, 4|5)C"),
    (lambda F: heisenberg(F, 1), "(2,3)C"),
])
def test_algebraic_growth_of_symbols(q, alg_builder, expected):
    growth = algebraic_growth(symbol_slice(alg_builder(q)))
    assert str(growth) == expected


def test_contact_type_needs_nondegenerate_bracket(q):
    assert is_contact_type(symbol_slice(heisenberg(q, 2)))


@pytest.mark.parametrize("series, n, m, r, expected", [
    (Series.K, 1, 0, 0, "(2,3)C"),
    (Series.K, 2, 0, 0, "(4,5)C"),
    (Series.K, 1, 2, 1, "(2|2, 3|3)"),
    (Series.M, 2, 0, 0, "(2|2, 2|3)C"),
    (Series.M, 4, 0, 1, "(6|6, 7|7)"),
])
def test_growth_formula(series, n, m, r, expected):
    assert str(growth_formula(series, n, m, r)) == expected


@pytest.mark.parametrize("series, n, m, r", [
    (Series.K, 0, 4, 1),
    (Series.K, 1, 2, 2),
    (Series.M, 2, 0, 1),
])
def test_growth_formula_excluded(series, n, m, r):
    with pytest.raises(ExcludedParameterError):
        growth_formula(series, n, m, r)


def test_fingerprint_separates_heisenberg_from_anti_heisenberg(q):
    a = fingerprint(symbol_slice(heisenberg(q, 1)))
    b = fingerprint(symbol_slice(anti_heisenberg(q, 1)))
    assert a != b
    assert equivalence_verdict(a, b) == "distinguishable"
    assert equivalence_verdict(a, a) == "indistinguishable at this invariant level"


def test_symbol_constants_of_heisenberg(q):
    constants = symbol_constants(symbol_slice(heisenberg(q, 1)))
    assert constants.nonzero == 2
    assert constants.degrees == [-1, -1, -2]
    doc = constants.to_dict()
    assert len(doc["basis"]) == 3
    assert len(doc["constants"]) == 2
