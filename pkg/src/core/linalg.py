"""Álgebra lineal exacta y dispersa sobre el cuerpo base (escalonado y núcleos con SDM de sympy).

Los vectores son diccionarios clave -> coeficiente sin ceros almacenados; las
claves son tuplas comparables y su orden fija los pivotes.
"""

import logging
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.matrices.sdm import SDM

from .coeff import Coefficient, GroundField

logger = logging.getLogger(__name__)

Vector = Dict[Hashable, Coefficient]


def add_scaled(target: Vector, source: Vector, c: Coefficient) -> Vector:
    """target += c·source (en el sitio)."""
    if not c:
        return target
    for key, value in source.items():
        new = target.get(key)
        new = c * value if new is None else new + c * value
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def scaled(v: Vector, c: Coefficient) -> Vector:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def combine(field: GroundField, coefficients: Sequence[Coefficient], vectors: Sequence[Vector]) -> Vector:
    out: Vector = {}
    for c, v in zip(coefficients, vectors):
        add_scaled(out, v, c)
    return out


def _index(vectors: Iterable[Vector]) -> List[Hashable]:
    keys = set()
    for v in vectors:
        keys.update(v)
    return sorted(keys)


class Subspace:
    """Subespacio dado por filas en forma escalonada reducida (pivote normalizado a 1)."""

    def __init__(self, field: GroundField, rows: Sequence[Vector] = (), pivots: Sequence[Hashable] = ()):
        self.field = field
        self.rows: List[Vector] = list(rows)
        self.pivots: List[Hashable] = list(pivots)

    @classmethod
    def span(cls, field: GroundField, vectors: Iterable[Vector]) -> "Subspace":
        vectors = [v for v in vectors if v]
        if not vectors:
            return cls(field)
        keys = _index(vectors)
        position = {k: i for i, k in enumerate(keys)}
        data = {}
        for r, v in enumerate(vectors):
            data[r] = {position[k]: c for k, c in v.items()}
        matrix = SDM(data, (len(vectors), len(keys)), field.domain)
        reduced, pivot_columns = matrix.rref()
        rows = []
        for i in range(len(pivot_columns)):
            rows.append({keys[j]: c for j, c in reduced[i].items() if c})
        logger.debug(f"Escalonado {len(vectors)}x{len(keys)} -> rango {len(rows)}")
        return cls(field, rows, [keys[j] for j in pivot_columns])

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return self.dim

    def reduce(self, v: Vector) -> Vector:
        """Residuo de v módulo el subespacio."""
        residual = dict(v)
        for pivot, row in zip(self.pivots, self.rows):
            c = residual.get(pivot)
            if c:
                add_scaled(residual, row, -c)
        return residual

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def coordinates(self, v: Vector) -> Optional[List[Coefficient]]:
        """Coordenadas de v en la base escalonada, o None si v no está en el subespacio."""
        if self.reduce(v):
            return None
        zero = self.field.zero
        return [v.get(pivot, zero) for pivot in self.pivots]

    def extend(self, vectors: Iterable[Vector]) -> "Subspace":
        return Subspace.span(self.field, list(self.rows) + list(vectors))

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.rows)

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and self.contains_subspace(other)


def rank(field: GroundField, vectors: Iterable[Vector]) -> int:
    return Subspace.span(field, vectors).dim


def nullspace(field: GroundField, columns: Sequence[Vector]) -> List[List[Coefficient]]:
    """Base de las soluciones c de sum_a c_a·columns[a] = 0."""
    n = len(columns)
    if n == 0:
        return []
    equations = _index(columns)
    if not equations:
        return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]
    position = {k: i for i, k in enumerate(equations)}
    data: Dict[int, Dict[int, Coefficient]] = {}
    for a, column in enumerate(columns):
        for key, c in column.items():
            data.setdefault(position[key], {})[a] = c
    matrix = SDM(data, (len(equations), n), field.domain)
    kernel, _nonpivots = matrix.nullspace()
    basis = []
    for i in sorted(kernel):
        row = kernel[i]
        basis.append([row.get(j, field.zero) for j in range(n)])
    logger.debug(f"Núcleo de sistema {len(equations)}x{n}: dimensión {len(basis)}")
    return basis


# =============================================
# ELEMENTOS DE ÁLGEBRA
# =============================================

class AlgebraElement:
    """Protocolo común de los elementos de un álgebra (campos, funciones generatrices, símbolos...).

    Las subclases definen ``coordinates``, ``rebuild``, ``bracket``, ``parity``
    y ``degree``; la aritmética lineal sale de las coordenadas.
    """

    field: GroundField

    def coordinates(self) -> Vector:
        raise NotImplementedError

    def rebuild(self, coords: Vector) -> "AlgebraElement":
        raise NotImplementedError

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        raise NotImplementedError

    @property
    def parity(self) -> Optional[int]:
        raise NotImplementedError

    def degree(self) -> Optional[int]:
        raise NotImplementedError

    def square(self) -> "AlgebraElement":
        raise NotImplementedError(f"{type(self).__name__} no define cuadrados")

    def homogeneous_parts(self) -> Dict[int, "AlgebraElement"]:
        parts: Dict[int, Vector] = {}
        for key, c in self.coordinates().items():
            d = self.rebuild({key: c}).degree()
            parts.setdefault(d, {})[key] = c
        return {d: self.rebuild(v) for d, v in parts.items()}

    def parity_parts(self) -> Tuple["AlgebraElement", "AlgebraElement"]:
        even: Vector = {}
        odd: Vector = {}
        for key, c in self.coordinates().items():
            (odd if self.rebuild({key: c}).parity else even)[key] = c
        return self.rebuild(even), self.rebuild(odd)

    @property
    def is_zero(self) -> bool:
        return not self.coordinates()

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.rebuild(add_scaled(dict(self.coordinates()), other.coordinates(), self.field.one))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self.rebuild(add_scaled(dict(self.coordinates()), other.coordinates(), -self.field.one))

    def __neg__(self) -> "AlgebraElement":
        return self.scale(-self.field.one)

    def scale(self, c) -> "AlgebraElement":
        if isinstance(c, int):
            c = self.field(c)
        return self.rebuild(scaled(self.coordinates(), c))

    def __eq__(self, other) -> bool:
        if isinstance(other, AlgebraElement):
            return type(self) is type(other) and self.coordinates() == other.coordinates()
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.coordinates().items()))


class ElementSpace:
    """Subespacio de elementos del mismo tipo; conserva una plantilla para reconstruirlos."""

    def __init__(self, template: Optional[AlgebraElement], subspace: Subspace):
        self.template = template
        self.subspace = subspace

    @classmethod
    def span(cls, elements: Iterable[AlgebraElement], field: Optional[GroundField] = None) -> "ElementSpace":
        elements = list(elements)
        template = elements[0] if elements else None
        field = field or (template.field if template is not None else GroundField(0))
        return cls(template, Subspace.span(field, [e.coordinates() for e in elements]))

    @property
    def field(self) -> GroundField:
        return self.subspace.field

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def __len__(self) -> int:
        return self.dim

    @property
    def basis(self) -> List[AlgebraElement]:
        if self.template is None:
            return []
        return [self.template.rebuild(row) for row in self.subspace.rows]

    def contains(self, element: AlgebraElement) -> bool:
        return self.subspace.contains(element.coordinates())

    def reduce(self, element: AlgebraElement) -> AlgebraElement:
        return element.rebuild(self.subspace.reduce(element.coordinates()))

    def extend(self, elements: Iterable[AlgebraElement]) -> "ElementSpace":
        elements = list(elements)
        template = self.template if self.template is not None else (elements[0] if elements else None)
        return ElementSpace(template, self.subspace.extend(e.coordinates() for e in elements))

    def contains_space(self, other: "ElementSpace") -> bool:
        return self.subspace.contains_subspace(other.subspace)

    def same_as(self, other: "ElementSpace") -> bool:
        return self.subspace.same_as(other.subspace)
