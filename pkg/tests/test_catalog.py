import json

import pytest

from src.core.graded import check_transitive
from src.core.models import (
    ParseError, SuperDim, UnknownEntryError, UnsupportedEntryError, VerifyStatus, WorkbenchConfig,
)
from src.data import catalog
from src.data.catalog import (
    CATALOG, CatalogEntry, _matches_filter, construct, fixture_names, get_entry, load_fixture, verify, verify_all,
)

CURATED = [
    "kle96", "mb45", "kas", "vle43-1", "F-kle96", "q-vect1", "fr", "tilde-fr", "er", "me", "3me",
    "Me33", "Me34", "Bj33", "tilde-Bj", "Bj45", "kle96-CK", "F-kle96-CK", "s-F-ksle9-11", "s-F-mb38",
]


def test_unknown_entry():
    with pytest.raises(UnknownEntryError) as info:
        get_entry("no-existe")
    assert info.value.exit_code == 2


def test_wrong_characteristic_is_unsupported():
    with pytest.raises(UnsupportedEntryError) as info:
        construct("me", p=3)
    assert info.value.exit_code == 3


def test_reference_only_entries_do_not_construct(monkeypatch):
    monkeypatch.setitem(CATALOG, "sin-realizar", CatalogEntry("sin-realizar", "excepcional", None))
    assert CATALOG["sin-realizar"].reference_only
    with pytest.raises(UnsupportedEntryError):
        construct("sin-realizar")


def test_every_catalog_entry_has_a_builder():
    assert [name for name, entry in CATALOG.items() if entry.reference_only] == []


def test_unknown_parameters_are_rejected():
    with pytest.raises(ParseError):
        construct("k", 0, 1, foo=1)


def test_series_with_parameters():
    real = construct("k", 0, 0, n=2)
    assert real.slice.dims == {-2: SuperDim(1, 0), -1: SuperDim(4, 0), 0: SuperDim(11, 0)}


def test_every_fixture_names_a_catalog_entry():
    names = fixture_names()
    assert "me" in names
    for name in names:
        assert load_fixture(name)["name"] == name
        assert name in CATALOG


def test_series_have_no_fixture():
    with pytest.raises(UnsupportedEntryError):
        load_fixture("k")


@pytest.mark.parametrize("text, expected", [
    (None, True),
    ("p=3", True),
    ("p=5", False),
    ("family=frank", True),
    ("name=er", False),
    ("p=3,family=frank", True),
])
def test_filters(text, expected):
    assert _matches_filter(load_fixture("fr"), text) is expected


def _write_fixture(directory, doc):
    (directory / f"{doc['name']}.json").write_text(json.dumps(doc), encoding="utf-8")


def test_reference_fixture_is_checked_but_never_ok(tmp_path, monkeypatch):
    monkeypatch.setattr(catalog, "FIXTURE_DIR", tmp_path)
    _write_fixture(tmp_path, {
        "name": "fila-publicada", "status": "reference",
        "dims": {"-2": "1|1", "-1": "2|2"}, "growth": "(2|2, 3|3)",
    })
    report = verify("fila-publicada")
    assert report.status == VerifyStatus.REFERENCE
    assert report.diffs == []
    assert not report.ok


def test_inconsistent_reference_fixture_fails(tmp_path, monkeypatch):
    monkeypatch.setattr(catalog, "FIXTURE_DIR", tmp_path)
    _write_fixture(tmp_path, {
        "name": "fila-publicada", "status": "reference",
        "dims": {"-2": "1|0", "-1": "2|2"}, "growth": "(2|2, 3|3)",
    })
    assert verify("fila-publicada").status == VerifyStatus.FAIL


def test_documented_deviation_is_not_ok(tmp_path, monkeypatch):
    monkeypatch.setattr(catalog, "FIXTURE_DIR", tmp_path)
    _write_fixture(tmp_path, {
        "name": "kle96", "params": {"p": 0}, "truncation": -1,
        "growth": "(8|6, 10|6)C", "known_deviation": {"growth": "(8|6, 9|6)C", "reason": "prueba"},
    })
    report = verify("kle96")
    assert report.status == VerifyStatus.DEVIATION
    assert not report.ok


@pytest.mark.parametrize("printed, status", [
    ("(14,15)", VerifyStatus.PASS),
    ("(8|6, 9|7)", VerifyStatus.FAIL),
])
def test_printed_growth_is_compared_by_totals(tmp_path, monkeypatch, printed, status):
    monkeypatch.setattr(catalog, "FIXTURE_DIR", tmp_path)
    _write_fixture(tmp_path, {
        "name": "kle96", "params": {"p": 0}, "truncation": -1,
        "growth": "(8|6, 9|6)C", "printed_growth": printed,
    })
    assert verify("kle96").status == status


@pytest.mark.slow
def test_regraded_bj_inherits_the_contact_flag():
    report = verify("Bj33")
    assert report.status == VerifyStatus.PASS, report.diffs
    assert report.computed["growth"] == "(2|2, 3|3)C"


def test_verify_all_with_name_filter():
    reports = verify_all("name=q-vect1", WorkbenchConfig(seed=3))
    assert [r.name for r in reports] == ["q-vect1"]
    assert reports[0].status == VerifyStatus.PASS


@pytest.mark.slow
@pytest.mark.parametrize("name", CURATED)
def test_curated_entries_reproduce(name):
    report = verify(name, config=WorkbenchConfig(seed=20240601))
    assert report.ok, report.diffs


@pytest.mark.slow
@pytest.mark.parametrize("name", fixture_names())
def test_every_fixture_entry_is_closed_and_transitive(name):
    fixture = load_fixture(name)
    params = dict(fixture.get("params", {}))
    p = params.pop("p", None)
    g = construct(name, p, fixture.get("truncation"), **params).slice
    assert g.closure_defects() == []
    transitive, failing = check_transitive(g)
    assert transitive, failing
