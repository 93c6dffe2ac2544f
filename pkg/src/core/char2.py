"""Construcciones en característica 2: desuperización F, queerificación q(g) y q~(g),
superización s(g, gr), búsqueda de ideales y batería de axiomas de superálgebra.
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Callable, Dict, List, Optional, Sequence

from .fields import Derivation, VField
from .graded import GradedSlice, slice_elements
from .linalg import AlgebraElement, ElementSpace, Subspace, Vector
from .models import (
    CharacteristicError, IdealReport, NotSubalgebraError, ParityError, SuperDim, TruncationError,
    WorkbenchConfig,
)

logger = logging.getLogger(__name__)

Marking = Callable[[int], int]


def _require_p2(field) -> None:
    if field.p != 2:
        raise CharacteristicError(f"La construcción necesita p = 2 (recibido p = {field.p})")


def restricted_square(x: AlgebraElement) -> AlgebraElement:
    """x^[2]: la aplicación [2] del elemento si la tiene; si no, el cuadrado de un impar."""
    method = getattr(x, "restricted_square", None)
    if method is not None:
        return method()
    if x.parity == 1:
        return x.square()
    raise ParityError(f"{type(x).__name__} no define la aplicación [2] en elementos pares")


def _normalize(x: AlgebraElement) -> AlgebraElement:
    """Los campos pasan a derivaciones para que campos y cuadrados compartan coordenadas."""
    if isinstance(x, VField):
        try:
            return x.as_derivation()
        except TruncationError:
            return x
    return x


# =============================================
# ELEMENTOS MARCADOS
# =============================================

class MarkedElement(AlgebraElement):
    """Elemento con la paridad redefinida: todo par (F) o dada por el grado (s(g, gr))."""

    __slots__ = ("inner", "marking")

    def __init__(self, inner: AlgebraElement, marking: Optional[Marking] = None):
        self.inner = inner
        self.marking = marking

    @property
    def field(self):
        return self.inner.field

    def coordinates(self) -> Vector:
        return self.inner.coordinates()

    def rebuild(self, coords: Vector) -> "MarkedElement":
        return MarkedElement(self.inner.rebuild(coords), self.marking)

    @property
    def parity(self) -> Optional[int]:
        if self.marking is None:
            return 0
        d = self.degree()
        return None if d is None else self.marking(d) % 2

    def degree(self) -> Optional[int]:
        return self.inner.degree()

    def bracket(self, other: AlgebraElement) -> "MarkedElement":
        inner = other.inner if isinstance(other, MarkedElement) else other
        return MarkedElement(_normalize(self.inner.bracket(inner)), self.marking)

    def square(self) -> "MarkedElement":
        if self.marking is None:
            raise ParityError("La desuperización olvida los cuadrados")
        if self.parity != 1:
            raise ParityError("square requiere un elemento impar")
        return MarkedElement(_normalize(restricted_square(self.inner)), self.marking)

    def __str__(self) -> str:
        return str(self.inner)

    def __repr__(self) -> str:
        return f"MarkedElement({self.inner})"


def desuperize(g: GradedSlice) -> GradedSlice:
    """F(g): mismos elementos y corchetes, todas las paridades pares y sin cuadrados."""
    _require_p2(g.field)
    comps = {
        d: ElementSpace.span([MarkedElement(x) for x in space.basis], g.field)
        for d, space in g.components.items() if space.dim
    }
    out = GradedSlice(g.field, comps, g.truncated_at, f"F({g.label})", dict(g.metadata))
    logger.info(f"Desuperización {out.label}: {', '.join(f'{d}:{v.total}' for d, v in out.dims.items())}")
    return out


def degree_marking(d: int) -> int:
    return d % 2


def _check_marking(g: GradedSlice, marking: Marking) -> None:
    for i in g.degrees:
        for j in g.degrees:
            if j < i or (marking(i) + marking(j) - marking(i + j)) % 2 == 0:
                continue
            if any(not x.bracket(y).is_zero for x in g.basis(i) for y in g.basis(j)):
                raise ParityError(f"La marca Z/2 no es compatible con [g_{i}, g_{j}]")


def superize(g: GradedSlice, marking: Optional[Marking] = None) -> GradedSlice:
    """s(g, gr): impares los grados marcados; los pares se amplían con los cuadrados de los impares negativos."""
    _require_p2(g.field)
    marking = marking or degree_marking
    _check_marking(g, marking)
    buckets: Dict[int, List[MarkedElement]] = {}
    for d in g.degrees:
        buckets[d] = [MarkedElement(_normalize(x), marking) for x in g.basis(d)]
    for d in [d for d in g.degrees if d < 0 and marking(d) % 2]:
        squares = [x.square() for x in buckets[d]]
        squares = [s for s in squares if not s.is_zero]
        if squares:
            buckets.setdefault(2 * d, []).extend(squares)
    comps = {d: ElementSpace.span(items, g.field) for d, items in buckets.items() if items}
    out = GradedSlice(g.field, comps, g.truncated_at, f"s({g.label})", dict(g.metadata))
    logger.info(f"Superización {out.label}: {', '.join(f'{d}:{v}' for d, v in out.dims.items())}")
    return out


# =============================================
# QUEERIFICACIÓN
# =============================================

class QueerElement(AlgebraElement):
    """x + Π(y) en q(g): [Πx, Πy] = [x, y], [x, Πy] = Π[x, y], (Πy)² = y^[2]."""

    __slots__ = ("even", "odd")

    def __init__(self, even: AlgebraElement, odd: AlgebraElement):
        self.even = even
        self.odd = odd

    @property
    def field(self):
        return self.even.field

    def coordinates(self) -> Vector:
        out: Vector = {(0, key): c for key, c in self.even.coordinates().items()}
        out.update({(1, key): c for key, c in self.odd.coordinates().items()})
        return out

    def rebuild(self, coords: Vector) -> "QueerElement":
        even = {key: c for (half, key), c in coords.items() if half == 0}
        odd = {key: c for (half, key), c in coords.items() if half == 1}
        return QueerElement(self.even.rebuild(even), self.odd.rebuild(odd))

    @property
    def parity(self) -> Optional[int]:
        if self.odd.is_zero:
            return 0
        return 1 if self.even.is_zero else None

    def degree(self) -> Optional[int]:
        values = {x.degree() for x in (self.even, self.odd) if not x.is_zero}
        if len(values) > 1 or None in values:
            return None
        return values.pop() if values else 0

    def _wrap(self, even: AlgebraElement, odd: AlgebraElement) -> "QueerElement":
        return QueerElement(_normalize(even), _normalize(odd))

    def bracket(self, other: AlgebraElement) -> "QueerElement":
        even = self.even.bracket(other.even) + self.odd.bracket(other.odd)
        odd = self.even.bracket(other.odd) + self.odd.bracket(other.even)
        return self._wrap(even, odd)

    def square(self) -> "QueerElement":
        if self.parity != 1:
            raise ParityError("square requiere un elemento impar")
        return self._wrap(restricted_square(self.odd), self.odd.scale(0))

    def __str__(self) -> str:
        parts = [str(self.even)] if not self.even.is_zero else []
        if not self.odd.is_zero:
            parts.append(f"Π({self.odd})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"QueerElement({self})"


def restricted_closure(elements: Sequence[AlgebraElement]) -> ElementSpace:
    """g^<1> = g + Span(x^[2] | x ∈ g): cierre restringido en un paso."""
    basis = ElementSpace.span([_normalize(x) for x in elements]).basis
    squares = [_normalize(restricted_square(x)) for x in basis]
    return ElementSpace.span(basis + [s for s in squares if not s.is_zero])


def queerify(elements: Sequence[AlgebraElement], generalized: bool = False, label: str = "") -> GradedSlice:
    """q(g) (g restringida) o q~(g) con parte par g^<1>."""
    elements = [_normalize(x) for x in elements if not x.is_zero]
    if not elements:
        raise NotSubalgebraError("queerify necesita un álgebra no nula")
    _require_p2(elements[0].field)
    space = ElementSpace.span(elements)
    basis = space.basis
    for a, b in combinations(basis, 2):
        if not space.contains(_normalize(a.bracket(b))):
            raise NotSubalgebraError(f"g no es cerrada: [{a}, {b}]")
    closure = restricted_closure(basis)
    if not generalized and closure.dim != space.dim:
        raise NotSubalgebraError("g no es restringida; use generalized=True para q~(g)")
    zero = basis[0].scale(0)
    items = [QueerElement(x, zero) for x in closure.basis] + [QueerElement(zero, y) for y in basis]
    out = slice_elements(items, label=label or ("q~(g)" if generalized else "q(g)"))
    logger.info(f"Queerificación {out.label}: {', '.join(f'{d}:{v}' for d, v in out.dims.items())}")
    return out


# =============================================
# IDEALES
# =============================================

def _truncated(x: AlgebraElement, top: int) -> List[AlgebraElement]:
    out = []
    for d, part in x.homogeneous_parts().items():
        if d > top:
            continue
        for half in part.parity_parts():
            if not half.is_zero:
                out.append(half)
    return out


def ideal_closure(g: GradedSlice, seeds: Sequence[AlgebraElement]) -> ElementSpace:
    """Menor ideal graduado y homogéneo en paridad que contiene ``seeds`` (dentro de la truncación)."""
    top = g.truncated_at
    actors = g.elements()
    parts = [h for s in seeds for h in _truncated(s, top)]
    space = ElementSpace.span(parts, g.field)
    frontier = list(parts)
    while frontier:
        new = []
        candidates = [a.bracket(v) for a in actors for v in frontier]
        if g.field.p == 2:
            candidates += [v.square() for v in frontier if v.parity == 1]
        for c in candidates:
            for h in _truncated(c, top):
                r = space.reduce(h)
                if not r.is_zero:
                    space = space.extend([r])
                    new.append(h)
        frontier = new
    return space


def _space_dims(space: ElementSpace) -> Dict[int, SuperDim]:
    out: Dict[int, SuperDim] = {}
    for x in space.basis:
        d = x.degree()
        out[d] = out.get(d, SuperDim()) + (SuperDim(0, 1) if x.parity else SuperDim(1, 0))
    return out


def ideal_probe(g: GradedSlice, config: Optional[WorkbenchConfig] = None, random_seeds: int = 4) -> IdealReport:
    """Busca ideales graduados propios cerrando vectores de la base y vectores aleatorios."""
    config = config or WorkbenchConfig(p=g.field.p)
    everything = ElementSpace.span(g.elements(), g.field)
    dims = g.dims
    if everything.dim <= 1:
        return IdealReport(True, g.truncated_at, dims, dims, reason="dim <= 1")
    seeds = [[x] for x in g.elements()]
    rng = random.Random(config.seed)
    for _ in range(random_seeds):
        d = rng.choice(g.degrees)
        basis = g.basis(d)
        combo: Vector = {}
        for x in basis:
            c = g.field(rng.randrange(g.field.p) if g.field.p else rng.randint(-2, 2))
            if c:
                for key, v in x.coordinates().items():
                    combo[key] = combo.get(key, g.field.zero) + c * v
        combo = {k: v for k, v in combo.items() if v}
        if combo:
            seeds.append([basis[0].rebuild(combo)])
    best: Optional[ElementSpace] = None
    for seed in seeds:
        ideal = ideal_closure(g, seed)
        if 0 < ideal.dim < everything.dim and (best is None or ideal.dim < best.dim):
            best = ideal
    if best is None:
        logger.info(f"Sin ideales propios hasta el grado {g.truncated_at}")
        return IdealReport(False, g.truncated_at, {}, dims)
    logger.info(f"Ideal propio de dimensión {best.dim} encontrado")
    return IdealReport(True, g.truncated_at, _space_dims(best), dims, reason="closure of a seed vector")


# =============================================
# AXIOMAS
# =============================================

@dataclass
class AxiomReport:
    """Resultado de la batería de axiomas sobre una base."""
    checked: int = 0
    failures: List[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_superalgebra_axioms(elements: Sequence[AlgebraElement], limit: int = 12) -> AxiomReport:
    """Supersimetría, super-Jacobi, [x,[x,x]] = 0 (p = 3) y axiomas del cuadrado (p = 2) en una base."""
    basis = [x for x in elements if not x.is_zero][:limit]
    report = AxiomReport()
    if not basis:
        return report
    field = basis[0].field
    p = field.p

    def fail(text: str) -> None:
        report.failures.append(text)

    for x in basis:
        for y in basis:
            px, py = x.parity, y.parity
            report.checked += 1
            if not (x.bracket(y) + y.bracket(x).scale(field.sign(px * py))).is_zero:
                fail(f"supersimetría: [{x}, {y}]")
            for z in basis:
                report.checked += 1
                lhs = x.bracket(y.bracket(z))
                rhs = x.bracket(y).bracket(z) + y.bracket(x.bracket(z)).scale(field.sign(px * py))
                if not (lhs - rhs).is_zero:
                    fail(f"Jacobi: ({x}, {y}, {z})")
        if p == 3 and x.parity == 1:
            report.checked += 1
            if not x.bracket(x.bracket(x)).is_zero:
                fail(f"[x,[x,x]] = 0: {x}")
        if p == 2:
            report.checked += 1
            if not x.bracket(x).is_zero:
                fail(f"[x, x] = 0: {x}")
    if p == 2:
        odd = [x for x in basis if x.parity == 1]
        for x in odd:
            sq = x.square()
            for y in basis:
                report.checked += 1
                if not (sq.bracket(y) - x.bracket(x.bracket(y))).is_zero:
                    fail(f"[x^2, y] = [x, [x, y]]: ({x}, {y})")
        for x, y in combinations(odd, 2):
            report.checked += 1
            if not ((x + y).square() - x.square() - y.square() - x.bracket(y)).is_zero:
                fail(f"(x+y)^2 = x^2 + y^2 + [x, y]: ({x}, {y})")
    logger.info(f"Axiomas: {report.checked} comprobaciones, {len(report.failures)} fallos")
    return report
