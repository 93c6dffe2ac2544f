"""Tablas pandas, exportación a Excel (openpyxl) y JSON estable de porciones y verificaciones."""

import json
import logging
from io import BytesIO
from typing import Dict, Iterable, List, Optional

import pandas as pd

from ..core.graded import GradedSlice
from ..core.models import GrowthVector, VerifyReport

logger = logging.getLogger(__name__)

SCHEMA_VERSION = "1"


# =============================================
# TABLAS
# =============================================

def dims_table(g: GradedSlice) -> pd.DataFrame:
    """Una fila por grado con la superdimensión de la componente."""
    rows = []
    for d, sdim in g.dims.items():
        rows.append({"Grado": d, "Par": sdim.even, "Impar": sdim.odd, "Total": sdim.total})
    return pd.DataFrame(rows, columns=["Grado", "Par", "Impar", "Total"])


def basis_table(g: GradedSlice, limit: Optional[int] = None) -> pd.DataFrame:
    rows = []
    for d in g.degrees:
        for i, x in enumerate(g.basis(d)):
            if limit is not None and i >= limit:
                break
            rows.append({"Grado": d, "Paridad": x.parity, "Elemento": str(x)})
    return pd.DataFrame(rows, columns=["Grado", "Paridad", "Elemento"])


def verify_table(reports: Iterable[VerifyReport]) -> pd.DataFrame:
    rows = []
    for r in reports:
        rows.append({
            "Entrada": r.name,
            "Estado": r.status.value.upper(),
            "Crecimiento": r.computed.get("growth", ""),
            "Diferencias": "; ".join(r.diffs),
            "Notas": "; ".join(r.notes),
            "Cita": r.citation,
        })
    return pd.DataFrame(rows, columns=["Entrada", "Estado", "Crecimiento", "Diferencias", "Notas", "Cita"])


def catalog_table(entries) -> pd.DataFrame:
    rows = [{
        "Entrada": e.name,
        "Familia": e.family,
        "p": "cualquiera" if e.p is None else e.p,
        "Truncación": e.truncation,
        "Descripción": e.description,
        "Experimental": e.experimental,
        "Sólo referencia": e.reference_only,
    } for e in entries]
    return pd.DataFrame(rows)


# =============================================
# EXPORTACIÓN
# =============================================

def export_to_excel(sheets: Dict[str, pd.DataFrame]) -> bytes:
    """Exporta varias tablas a un libro Excel, una hoja por tabla."""
    output = BytesIO()
    with pd.ExcelWriter(output, engine="openpyxl") as writer:
        for name, df in sheets.items():
            df.to_excel(writer, index=False, sheet_name=name[:31])
    logger.info(f"Libro Excel con {len(sheets)} hojas")
    return output.getvalue()


def slice_document(g: GradedSlice, growth: Optional[GrowthVector] = None, notes: Optional[List[str]] = None) -> dict:
    doc = {"schema_version": SCHEMA_VERSION, "slice": g.to_dict()}
    if growth is not None:
        doc["growth"] = str(growth)
    if notes:
        doc["notes"] = list(notes)
    return doc


def verify_document(reports: Iterable[VerifyReport]) -> dict:
    reports = list(reports)
    summary: Dict[str, int] = {}
    for r in reports:
        summary[r.status.value] = summary.get(r.status.value, 0) + 1
    return {
        "schema_version": SCHEMA_VERSION,
        "summary": summary,
        "reports": [r.to_dict() for r in reports],
    }


def to_json(doc: dict) -> str:
    """JSON con claves ordenadas: la salida es estable byte a byte entre ejecuciones."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False, default=str)


def slice_text(g: GradedSlice) -> str:
    lines = [f"{g.label} (truncación {g.truncated_at}, profundidad {g.depth})"]
    for d, sdim in g.dims.items():
        lines.append(f"  g_{d}: {sdim}")
        for x in g.basis(d):
            lines.append(f"      {x}")
    return "\n".join(lines)
