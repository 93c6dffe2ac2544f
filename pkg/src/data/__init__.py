"""Parser de textos, realizaciones explícitas y catálogo con fixtures."""

from .parser import (
    parse_poly,
    parse_field,
    parse_fields,
    parse_y_equation,
    parse_heights,
    parse_degree_map,
)

from .catalog import (
    CATALOG,
    CatalogEntry,
    get_entry,
    construct,
    fixture_names,
    load_fixture,
    cross_engine,
    verify,
    verify_all,
)

__all__ = [
    'parse_poly',
    'parse_field',
    'parse_fields',
    'parse_y_equation',
    'parse_heights',
    'parse_degree_map',
    'CATALOG',
    'CatalogEntry',
    'get_entry',
    'construct',
    'fixture_names',
    'load_fixture',
    'cross_engine',
    'verify',
    'verify_all',
]
