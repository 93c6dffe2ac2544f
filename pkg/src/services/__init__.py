"""Servicios de salida: tablas, Excel y JSON."""

from .report import (
    dims_table,
    basis_table,
    verify_table,
    catalog_table,
    export_to_excel,
    slice_document,
    verify_document,
    to_json,
    slice_text,
)

__all__ = [
    'dims_table',
    'basis_table',
    'verify_table',
    'catalog_table',
    'export_to_excel',
    'slice_document',
    'verify_document',
    'to_json',
    'slice_text',
]
