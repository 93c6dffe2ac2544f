import json
from io import BytesIO

import pandas as pd

from src.core.models import GrowthVector, SuperDim, VerifyReport, VerifyStatus
from src.data.realizations import contact_slice
from src.services.report import (
    SCHEMA_VERSION, basis_table, dims_table, export_to_excel, slice_document, slice_text, to_json,
    verify_document, verify_table,
)


def reports():
    return [
        VerifyReport("fr", VerifyStatus.PASS, computed={"growth": "(2,3)C"}),
        VerifyReport("mb45-K", VerifyStatus.DEVIATION, notes=["desviación documentada"]),
        VerifyReport("x", VerifyStatus.FAIL, diffs=["dim g_0: esperado 4, calculado 3"]),
    ]


def test_dims_and_basis_tables(k3):
    g = contact_slice(k3, -2, 0, "k(3)")
    dims = dims_table(g)
    assert list(dims["Grado"]) == [-2, -1, 0]
    assert list(dims["Total"]) == [1, 2, 4]
    assert len(basis_table(g)) == 7
    assert len(basis_table(g, limit=1)) == 3


def test_excel_export_round_trip():
    df = verify_table(reports())
    data = export_to_excel({"Verificación": df})
    assert data[:2] == b"PK"
    back = pd.read_excel(BytesIO(data), sheet_name="Verificación")
    assert list(back["Entrada"]) == ["fr", "mb45-K", "x"]
    assert list(back["Estado"]) == ["PASS", "DEVIATION", "FAIL"]


def test_verify_document_summary():
    doc = verify_document(reports())
    assert doc["schema_version"] == SCHEMA_VERSION
    assert doc["summary"] == {"pass": 1, "deviation": 1, "fail": 1}
    assert [r["name"] for r in doc["reports"]] == ["fr", "mb45-K", "x"]


def test_slice_document_is_stable(k3):
    g = contact_slice(k3, -2, -1, "k(3)_-")
    growth = GrowthVector((SuperDim(2, 0), SuperDim(3, 0)), contact=True, is_super=False)
    first = to_json(slice_document(g, growth, ["nota"]))
    second = to_json(slice_document(contact_slice(k3, -2, -1, "k(3)_-"), growth, ["nota"]))
    assert first == second
    doc = json.loads(first)
    assert doc["growth"] == "(2,3)C"
    assert doc["slice"]["depth"] == 2
    assert doc["slice"]["dims"] == {"-2": str(SuperDim(1, 0)), "-1": str(SuperDim(2, 0))}
    assert doc["notes"] == ["nota"]


def test_slice_text(k3):
    text = slice_text(contact_slice(k3, -2, -1, "k(3)_-"))
    assert text.splitlines()[0] == "k(3)_- (truncación -1, profundidad 2)"
