"""Componentes graduadas, regraduaciones, sistema de grados, filtración de Weisfeiler
y validación de W-graduaciones.
"""

import logging
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from sympy import igcd, ilcm

from .coeff import GroundField
from .linalg import AlgebraElement, ElementSpace, Subspace, Vector, add_scaled, nullspace
from .models import (
    ConstraintError, Irreducibility, NotSubalgebraError,
    SuperDim, TruncationError, WGradingReport, WorkbenchConfig,
)
from .superfunc import DomainSpec, SuperPoly

logger = logging.getLogger(__name__)


# =============================================
# COMPONENTES GRADUADAS
# =============================================

@dataclass
class GradedSlice:
    """Componentes g_d (bases escalonadas) de un álgebra graduada hasta el grado ``truncated_at``."""
    field: GroundField
    components: Dict[int, ElementSpace] = dc_field(default_factory=dict)
    truncated_at: int = 0
    label: str = ""
    metadata: dict = dc_field(default_factory=dict)

    @property
    def degrees(self) -> List[int]:
        return sorted(d for d, space in self.components.items() if space.dim)

    @property
    def depth(self) -> int:
        negative = [d for d in self.degrees if d < 0]
        return -min(negative) if negative else 0

    def component(self, d: int) -> ElementSpace:
        space = self.components.get(d)
        return space if space is not None else ElementSpace(None, Subspace(self.field))

    def basis(self, d: int) -> List[AlgebraElement]:
        return self.component(d).basis

    def elements(self, degrees: Optional[Iterable[int]] = None) -> List[AlgebraElement]:
        chosen = self.degrees if degrees is None else degrees
        return [x for d in chosen for x in self.basis(d)]

    def sdim(self, d: int) -> SuperDim:
        even = odd = 0
        for x in self.basis(d):
            if x.parity:
                odd += 1
            else:
                even += 1
        return SuperDim(even, odd)

    @property
    def dims(self) -> Dict[int, SuperDim]:
        return {d: self.sdim(d) for d in self.degrees}

    @property
    def is_super(self) -> bool:
        return any(v.odd for v in self.dims.values())

    def negative(self) -> "GradedSlice":
        return self.restricted(hi=-1)

    def restricted(self, lo: Optional[int] = None, hi: Optional[int] = None) -> "GradedSlice":
        comps = {d: s for d, s in self.components.items()
                 if (lo is None or d >= lo) and (hi is None or d <= hi)}
        top = self.truncated_at if hi is None else min(hi, self.truncated_at)
        return GradedSlice(self.field, comps, top, self.label, dict(self.metadata))

    def with_component(self, d: int, space: ElementSpace) -> "GradedSlice":
        comps = dict(self.components)
        comps[d] = space
        return GradedSlice(self.field, comps, max(self.truncated_at, d), self.label, dict(self.metadata))

    def closure_defects(self) -> List[Tuple[int, int]]:
        """Pares (i, j) con [g_i, g_j] fuera de g_{i+j} dentro de la truncación."""
        defects = []
        for i in self.degrees:
            for j in self.degrees:
                if j < i or i + j > self.truncated_at:
                    continue
                target = self.component(i + j)
                for x in self.basis(i):
                    if any(not target.contains(x.bracket(y)) for y in self.basis(j)):
                        defects.append((i, j))
                        break
        return defects

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "p": self.field.p,
            "truncated_at": self.truncated_at,
            "depth": self.depth,
            "dims": {str(d): str(v) for d, v in self.dims.items()},
            "basis": {str(d): [str(x) for x in self.basis(d)] for d in self.degrees},
            "metadata": {k: v for k, v in self.metadata.items() if isinstance(v, (str, int, bool, float))},
        }


def _split(element: AlgebraElement) -> List[Tuple[int, AlgebraElement]]:
    out = []
    for d, part in element.homogeneous_parts().items():
        for half in part.parity_parts():
            if not half.is_zero:
                out.append((d, half))
    return out


def slice_elements(
    elements: Iterable[AlgebraElement],
    degrees: Optional[Sequence[int]] = None,
    lo: Optional[int] = None,
    hi: Optional[int] = None,
    label: str = "",
    field: Optional[GroundField] = None,
) -> GradedSlice:
    """Separa los elementos en partes homogéneas (grado y paridad) y escalona cada componente."""
    elements = list(elements)
    if degrees is not None:
        elements = regrade(elements, degrees)
    if field is None:
        field = elements[0].field if elements else GroundField(0)
    buckets: Dict[int, List[AlgebraElement]] = {}
    for x in elements:
        for d, part in _split(x):
            if (lo is None or d >= lo) and (hi is None or d <= hi):
                buckets.setdefault(d, []).append(part)
    comps = {d: ElementSpace.span(parts, field) for d, parts in buckets.items()}
    top = hi if hi is not None else (max(comps) if comps else 0)
    result = GradedSlice(field, comps, top, label)
    logger.debug(f"Slice {label or '(sin nombre)'}: {', '.join(f'{d}:{v}' for d, v in result.dims.items())}")
    return result


def regrade(elements: Iterable[AlgebraElement], degrees: Sequence[int]) -> List[AlgebraElement]:
    """Reinterpreta los elementos con otro vector de grados de las indeterminadas."""
    out = []
    for x in elements:
        rebase = getattr(x, "with_degrees", None)
        if rebase is None:
            raise ConstraintError(f"{type(x).__name__} no admite regraduación por grados de indeterminadas")
        out.append(rebase(degrees))
    return out


# =============================================
# VECTORES DE GRADOS
# =============================================

@dataclass(frozen=True)
class DegreeAssignment:
    """Grado de cada indeterminada; las de grado <= 0 necesitan altura finita."""
    degrees: Tuple[int, ...]

    @classmethod
    def standard(cls, domain: DomainSpec) -> "DegreeAssignment":
        return cls(tuple(1 for _ in domain.names))

    @classmethod
    def from_mapping(cls, domain: DomainSpec, values: Mapping[str, int], default: int = 1) -> "DegreeAssignment":
        unknown = set(values) - set(domain.names)
        if unknown:
            raise ConstraintError(f"Indeterminadas desconocidas: {sorted(unknown)}")
        return cls(tuple(values.get(name, default) for name in domain.names))

    def check(self, domain: DomainSpec) -> None:
        if len(self.degrees) != domain.size:
            raise ConstraintError("El vector de grados no tiene la longitud del dominio")
        for name, d, h, par in zip(domain.names, self.degrees, domain.heights, domain.parities):
            if d <= 0 and not par and h is None:
                raise TruncationError(f"{name} tiene altura no acotada y no puede tener grado {d}")

    def apply(self, domain: DomainSpec) -> DomainSpec:
        self.check(domain)
        return domain.with_degrees(self.degrees)


@dataclass
class DegreeSolution:
    """Conjunto afín de soluciones: particular + combinaciones de direcciones libres."""
    names: List[str]
    particular: Dict[str, Fraction]
    directions: List[Dict[str, Fraction]]

    @property
    def is_unique(self) -> bool:
        return not self.directions

    def normalized(self) -> Dict[str, int]:
        """Solución entera única; con una sola dirección libre y parte particular nula, la primitiva positiva."""
        if not self.directions:
            vector = [self.particular[n] for n in self.names]
        elif len(self.directions) == 1 and not any(self.particular.values()):
            vector = [self.directions[0][n] for n in self.names]
            lcm = 1
            for x in vector:
                lcm = ilcm(lcm, x.denominator)
            ints = [int(x * lcm) for x in vector]
            g = 0
            for x in ints:
                g = igcd(g, abs(x))
            ints = [x // g for x in ints]
            if sum(ints) < 0:
                ints = [-x for x in ints]
            return dict(zip(self.names, ints))
        else:
            raise ConstraintError(f"Sistema indeterminado: {len(self.directions)} direcciones libres")
        if any(x.denominator != 1 for x in vector):
            raise ConstraintError("La solución única no es entera")
        return {n: int(x) for n, x in zip(self.names, vector)}


def _as_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def homogeneity_relations(functions: Iterable[SuperPoly]) -> List[Tuple[Dict[str, int], Dict[str, int]]]:
    """Igualdades deg(m_0) = deg(m_j) entre los monomios de cada función (deg u^(k) = k·deg u)."""
    relations = []
    for f in functions:
        terms = [r for r, _c in f.sorted_terms()]
        names = f.domain.names
        for r in terms[1:]:
            lhs = {names[i]: e for i, e in enumerate(terms[0]) if e}
            rhs = {names[i]: e for i, e in enumerate(r) if e}
            relations.append((lhs, rhs))
    return relations


def solve_degree_constraints(
    names: Sequence[str],
    relations: Sequence[Tuple[Mapping[str, int], Mapping[str, int]]],
    pins: Optional[Mapping[str, int]] = None,
) -> DegreeSolution:
    """Resuelve Σ lhs·d = Σ rhs·d para cada relación con los grados fijados en ``pins``."""
    names = list(names)
    pins = dict(pins or {})
    unknown = (set(pins) | {k for rel in relations for side in rel for k in side}) - set(names)
    if unknown:
        raise ConstraintError(f"Indeterminadas desconocidas en el sistema: {sorted(unknown)}")
    field = GroundField(0)
    one = "__one__"
    columns: Dict[str, Vector] = {n: {} for n in names + [one]}
    row = 0
    for lhs, rhs in relations:
        for n, e in lhs.items():
            add_scaled(columns[n], {row: field(e)}, field.one)
        for n, e in rhs.items():
            add_scaled(columns[n], {row: field(e)}, -field.one)
        row += 1
    for n, value in pins.items():
        add_scaled(columns[n], {row: field.one}, field.one)
        add_scaled(columns[one], {row: field(value)}, -field.one)
        row += 1
    order = names + [one]
    kernel = nullspace(field, [columns[n] for n in order])
    with_one = [v for v in kernel if v[-1]]
    if not with_one:
        raise ConstraintError("Sistema de grados contradictorio")
    base = with_one[0]
    scale = 1 / base[-1]
    particular_vec = [c * scale for c in base]
    directions = []
    for v in kernel:
        if v is base:
            continue
        w = [a - v[-1] * b for a, b in zip(v, particular_vec)]
        if any(w[:-1]):
            directions.append({n: _as_fraction(c) for n, c in zip(names, w[:-1])})
    particular = {n: _as_fraction(c) for n, c in zip(names, particular_vec[:-1])}
    logger.debug(f"Sistema de grados: {row} ecuaciones, {len(directions)} direcciones libres")
    return DegreeSolution(names, particular, directions)


# =============================================
# FILTRACIÓN DE WEISFEILER
# =============================================

@dataclass
class Filtration:
    """L_{-d} ⊃ ... ⊃ L_{-1} ⊃ L_0 ⊃ L_1 ⊃ ... dentro de la truncación."""
    levels: Dict[int, ElementSpace]
    truncation: int

    @property
    def depth(self) -> int:
        return -min(self.levels)

    def graded_dims(self) -> Dict[int, SuperDim]:
        out = {}
        for i in sorted(self.levels):
            upper = self.levels.get(i + 1)
            here = _sdim_space(self.levels[i])
            below = _sdim_space(upper) if upper is not None else SuperDim()
            diff = here - below
            if diff.total:
                out[i] = diff
        return out


def _sdim_space(space: ElementSpace) -> SuperDim:
    even = sum(1 for x in space.basis if not x.parity)
    return SuperDim(even, space.dim - even)


def _truncate(x: AlgebraElement, top: int) -> AlgebraElement:
    parts = x.homogeneous_parts()
    kept: Vector = {}
    for d, part in parts.items():
        if d <= top:
            kept.update(part.coordinates())
    return x.rebuild(kept)


def _close_under(space: ElementSpace, actors: Sequence[AlgebraElement], top: int) -> ElementSpace:
    frontier = list(space.basis)
    while frontier:
        new = []
        for a in actors:
            for v in frontier:
                w = space.reduce(_truncate(a.bracket(v), top))
                if not w.is_zero:
                    space = space.extend([w])
                    new.append(w)
        frontier = new
    return space


def weisfeiler(
    algebra: GradedSlice,
    L0: Sequence[AlgebraElement],
    L_minus1: Optional[Sequence[AlgebraElement]] = None,
) -> Filtration:
    """Filtración de Weisfeiler de ``algebra`` (tomada hasta su truncación) respecto de L0."""
    top = algebra.truncated_at
    everything = ElementSpace.span(algebra.elements(), algebra.field)
    zero = ElementSpace.span(L0, algebra.field)
    basis0 = zero.basis
    for a in basis0:
        for b in basis0:
            if not zero.contains(_truncate(a.bracket(b), top)):
                raise NotSubalgebraError(f"L0 no es subálgebra: [{a}, {b}] fuera de L0")
    if L_minus1 is None:
        best = None
        for v in everything.basis:
            if zero.contains(v):
                continue
            candidate = _close_under(zero.extend([v]), basis0, top)
            if best is None or candidate.dim < best.dim:
                best = candidate
        if best is None:
            raise NotSubalgebraError("L0 coincide con toda el álgebra")
        minus1 = best
    else:
        minus1 = zero.extend(L_minus1)
    levels = {0: zero, -1: minus1}
    generators = [x for x in minus1.basis if not zero.contains(x)]
    current, i = minus1, -1
    while not current.same_as(everything):
        extra = [_truncate(g.bracket(x), top) for g in generators for x in current.basis]
        if algebra.field.p == 2:
            extra += [g.square() for g in generators if g.parity == 1]
        nxt = current.extend(extra)
        if nxt.dim == current.dim:
            logger.warning(f"La filtración se estabiliza en dimensión {nxt.dim} < {everything.dim}")
            break
        i -= 1
        levels[i] = current = nxt
    k = 0
    current = zero
    while current.dim:
        basis = current.basis
        columns = []
        for x in basis:
            column: Vector = {}
            for j, g in enumerate(generators):
                residual = current.subspace.reduce(_truncate(x.bracket(g), top).coordinates())
                for key, c in residual.items():
                    column[(j, key)] = c
            columns.append(column)
        keep = []
        for coefficients in nullspace(algebra.field, columns):
            combo: Vector = {}
            for c, x in zip(coefficients, basis):
                add_scaled(combo, x.coordinates(), c)
            keep.append(basis[0].rebuild(combo))
        nxt = ElementSpace.span(keep, algebra.field) if keep else ElementSpace(None, Subspace(algebra.field))
        if nxt.dim == current.dim:
            break
        k += 1
        levels[k] = current = nxt
    result = Filtration(levels, top)
    logger.info(f"Filtración de Weisfeiler: profundidad {result.depth}, dims {result.graded_dims()}")
    return result


# =============================================
# GENERACIÓN E IRREDUCIBILIDAD
# =============================================

def generated_components(negative: GradedSlice, max_degree: Optional[int] = None) -> Dict[int, ElementSpace]:
    """Componentes G_{-k} generadas por g_-1 (más cuadrados de impares con p = 2)."""
    field = negative.field
    gm1 = negative.basis(-1)
    if not gm1:
        return {}
    bound = max_degree or 2 * max(negative.depth, 1)
    generated: Dict[int, ElementSpace] = {-1: ElementSpace.span(gm1, field)}
    for k in range(2, bound + 1):
        items = [g.bracket(x) for g in gm1 for x in generated.get(-(k - 1), ElementSpace(None, Subspace(field))).basis]
        if field.p == 2 and k % 2 == 0 and -(k // 2) in generated:
            half = generated[-(k // 2)].basis
            odd = [x for x in half if x.parity == 1]
            items += [x.square() for x in odd]
            items += [a.bracket(b) for i, a in enumerate(odd) for b in odd[i + 1:]]
        items = [x for x in items if not x.is_zero]
        if items:
            generated[-k] = ElementSpace.span(items, field)
    return {d: s for d, s in generated.items() if s.dim}


def is_generated_by_minus_one(negative: GradedSlice) -> bool:
    generated = generated_components(negative)
    for d in negative.negative().degrees:
        if not generated.get(d) or not generated[d].same_as(negative.component(d)):
            return False
    return all(d in negative.components for d in generated)


def check_transitive(g: GradedSlice) -> Tuple[bool, List[int]]:
    """Grados d >= 0 en los que algún elemento no nulo anula g_-."""
    negatives = g.negative().elements()
    failing = []
    for d in g.degrees:
        if d < 0:
            continue
        basis = g.basis(d)
        columns = []
        for x in basis:
            column: Vector = {}
            for j, y in enumerate(negatives):
                for key, c in x.bracket(y).coordinates().items():
                    column[(j, key)] = c
            columns.append(column)
        if nullspace(g.field, columns):
            failing.append(d)
    return not failing, failing


Matrix = List[Vector]  # columnas: imagen de cada vector de la base


def action_matrices(g: GradedSlice, module_degree: int = -1, acting_degree: int = 0) -> List[Matrix]:
    """Matrices de ad(a) sobre g_{module_degree} para a en la base de g_{acting_degree}."""
    module = g.component(module_degree)
    basis = module.basis
    pivots = module.subspace.pivots
    matrices = []
    for a in g.basis(acting_degree):
        columns = []
        for y in basis:
            image = a.bracket(y).coordinates()
            coords = module.subspace.coordinates(image)
            if coords is None:
                raise NotSubalgebraError(f"g_{acting_degree} no preserva g_{module_degree}")
            columns.append({i: c for i, c in enumerate(coords) if c})
        matrices.append(columns)
    return matrices


def _apply(M: Matrix, v: Vector) -> Vector:
    out: Vector = {}
    for j, c in v.items():
        add_scaled(out, M[j], c)
    return out


def _compose(A: Matrix, B: Matrix) -> Matrix:
    return [_apply(A, col) for col in B]


def _transpose(M: Matrix, n: int) -> Matrix:
    out: Matrix = [{} for _ in range(n)]
    for j, col in enumerate(M):
        for i, c in col.items():
            out[i][j] = c
    return out


def spin(field: GroundField, generators: Sequence[Matrix], v: Vector) -> Subspace:
    """Menor subespacio invariante que contiene v."""
    space = Subspace.span(field, [v])
    frontier = [v]
    while frontier:
        new = []
        for M in generators:
            for w in frontier:
                image = space.reduce(_apply(M, w))
                if image:
                    space = space.extend([image])
                    new.append(image)
        frontier = new
    return space


def _projective_points(field: GroundField, basis: Sequence[Vector], limit: int = 64) -> Optional[List[Vector]]:
    """Todos los vectores del núcleo salvo escalar (sólo en cuerpos finitos pequeños)."""
    p, k = field.p, len(basis)
    if not p or (p ** k - 1) // (p - 1) > limit:
        return None
    points = []
    for coeffs in product(range(p), repeat=k):
        nonzero = [c for c in coeffs if c]
        if not nonzero or nonzero[0] != 1:
            continue
        v: Vector = {}
        for c, b in zip(coeffs, basis):
            add_scaled(v, b, field(c))
        points.append(v)
    return points


def irreducibility(
    g: GradedSlice,
    config: Optional[WorkbenchConfig] = None,
    module_degree: int = -1,
) -> Tuple[Irreducibility, Optional[Subspace]]:
    """Test de Norton para g_{module_degree} como g_0-módulo graduado; devuelve un testigo si es reducible."""
    config = config or WorkbenchConfig(p=g.field.p)
    field = g.field
    module = g.basis(module_degree)
    n = len(module)
    if n <= 1:
        return (Irreducibility.IRREDUCIBLE if n == 1 else Irreducibility.UNKNOWN), None
    gens = action_matrices(g, module_degree)
    parity = [{j: field.one} if x.parity == 0 else {} for j, x in enumerate(module)]
    if any(parity) and not all(parity):
        gens = gens + [parity]
    if not gens:
        return Irreducibility.REDUCIBLE, Subspace.span(field, [{0: field.one}])
    transposed = [_transpose(M, n) for M in gens]
    rng = random.Random(config.seed)
    identity = [{j: field.one} for j in range(n)]

    def coefficient():
        return field(rng.randrange(field.p) if field.p else rng.randint(-3, 3))

    def random_element() -> Matrix:
        words = [identity] + gens + [_compose(a, b) for a in gens for b in gens]
        total: Matrix = [{} for _ in range(n)]
        for w in rng.sample(words, min(len(words), 4)):
            c = coefficient()
            for j in range(n):
                add_scaled(total[j], w[j], c)
        return total

    def proper(space: Subspace) -> bool:
        return 0 < space.dim < n

    for attempt in range(config.irreducibility_attempts):
        theta = random_element()
        kernel = nullspace(field, theta)
        if not kernel:
            continue
        ker = [{j: c for j, c in enumerate(v) if c} for v in kernel]
        kernel_t = [{j: c for j, c in enumerate(v) if c} for v in nullspace(field, _transpose(theta, n))]
        points = _projective_points(field, ker)
        points_t = _projective_points(field, kernel_t)
        for v in (points or ker):
            witness = spin(field, gens, v)
            if proper(witness):
                logger.info(f"g_{module_degree} reducible: submódulo de dimensión {witness.dim}")
                return Irreducibility.REDUCIBLE, witness
        for w in (points_t or kernel_t):
            dual = spin(field, transposed, w)
            if proper(dual):
                logger.info(f"g_{module_degree} reducible: submódulo dual de dimensión {dual.dim}")
                return Irreducibility.REDUCIBLE, dual
        if points is not None and points_t is not None:
            logger.debug(f"Irreducible por Norton en el intento {attempt + 1}")
            return Irreducibility.IRREDUCIBLE, None
    return Irreducibility.UNKNOWN, None


def validate_w_grading(g: GradedSlice, config: Optional[WorkbenchConfig] = None) -> WGradingReport:
    """Transitividad, profundidad, irreducibilidad de g_-1 y generación de g_- por g_-1."""
    config = config or WorkbenchConfig(p=g.field.p)
    notes = []
    transitive, failing = check_transitive(g)
    if failing:
        notes.append(f"no transitiva en grados {failing}")
    if 0 not in g.degrees:
        notes.append("sin componente g_0")
    verdict, witness = irreducibility(g, config)
    if witness is not None:
        notes.append(f"submódulo invariante de dimensión {witness.dim} en g_-1")
    report = WGradingReport(
        transitive=transitive,
        depth=g.depth,
        irreducible_gm1=verdict,
        generated_by_gm1=is_generated_by_minus_one(g.negative()),
        truncation=g.truncated_at,
        dims=g.dims,
        notes=notes,
    )
    logger.info(f"W-graduación {g.label}: {'sí' if report.is_w_grading else 'no'} ({verdict.value})")
    return report
