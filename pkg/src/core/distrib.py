"""Distribuciones: bandera derivada, vector de crecimiento, constantes de estructura del
álgebra símbolo, fórmulas cerradas de las series k y m y huella de equivalencia.
"""

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import Coefficient, GroundField
from .fields import VField
from .graded import GradedSlice, generated_components
from .linalg import ElementSpace, Subspace, Vector, nullspace
from .models import (
    EPS_ONE, ExcludedParameterError, Fingerprint, GrowthVector, NotSubalgebraError, Series, SuperDim,
)
from .symbol import SymbolAlgebra

logger = logging.getLogger(__name__)


# =============================================
# BANDERA EN UN PUNTO
# =============================================

def _value_sdim(fields: Sequence[VField], values: Subspace) -> SuperDim:
    parities = fields[0].domain.parities
    odd = sum(1 for i in values.pivots if parities[i])
    return SuperDim(values.dim - odd, odd)


def _contact_form_rank(first: Sequence[VField], level1: Subspace, level2: Subspace) -> Optional[int]:
    """Rango de la forma ω(X, Y) = [X, Y](0) mod D_-1(0) cuando D_-2/D_-1 tiene dimensión 1."""
    extra = [p for p in level2.pivots if p not in level1.pivots]
    if len(extra) != 1:
        return None
    pivot = extra[0]
    n = len(first)
    columns = []
    for Y in first:
        column: Vector = {}
        for a, X in enumerate(first):
            residual = level1.reduce(X.bracket(Y).value_at_origin())
            c = residual.get(pivot)
            if c:
                column[a] = c
        columns.append(column)
    return n - len(nullspace(level1.field, columns))


def flag(fields: Sequence[VField], depth_bound: int = 8) -> GrowthVector:
    """Dimensiones de D_-1 ⊂ D_-2 ⊂ ... en el origen hasta estabilizar."""
    fields = [X for X in fields if not X.is_zero]
    if not fields:
        return GrowthVector(())
    field = fields[0].field
    first = ElementSpace.span(fields, field)
    generators = first.basis
    current, newest = first, generators
    values = Subspace.span(field, [X.value_at_origin() for X in generators])
    levels = [values]
    entries = [_value_sdim(generators, values)]
    for _ in range(depth_bound - 1):
        brackets = [X.bracket(Y) for X in generators for Y in newest]
        brackets = [current.reduce(B) for B in brackets]
        brackets = [B for B in brackets if not B.is_zero]
        if not brackets:
            break
        current = current.extend(brackets)
        newest = brackets
        values = values.extend(B.value_at_origin() for B in brackets)
        if values.dim == levels[-1].dim:
            continue
        levels.append(values)
        entries.append(_value_sdim(generators, values))
    else:
        logger.warning(f"La bandera no se estabiliza en {depth_bound} pasos")
    total = fields[0].domain.size
    if entries[-1].total == total:
        logger.debug("Distribución completa: la bandera alcanza todo el espacio tangente")
    contact = False
    if len(levels) == 2 and (entries[1] - entries[0]).total == 1:
        contact = _contact_form_rank(generators, levels[0], levels[1]) == entries[0].total
    return GrowthVector(tuple(entries), contact=contact, is_super=any(e.odd for e in entries))


# =============================================
# CRECIMIENTO ALGEBRAICO
# =============================================

def bracket_radical(negative: GradedSlice) -> int:
    """Dimensión de {x ∈ g_-1 : [x, g_-1] = 0}."""
    basis = negative.basis(-1)
    columns = []
    for x in basis:
        column: Vector = {}
        for j, y in enumerate(basis):
            for key, c in x.bracket(y).coordinates().items():
                column[(j, key)] = c
        columns.append(column)
    return len(nullspace(negative.field, columns))


def is_contact_type(negative: GradedSlice) -> bool:
    """Profundidad 2, g_-2 de dimensión total 1 y forma del corchete en g_-1 sin radical."""
    generated = generated_components(negative)
    if sorted(generated) != [-2, -1] or generated[-2].dim != 1:
        return False
    return bracket_radical(negative) == 0


def algebraic_growth(negative: GradedSlice) -> GrowthVector:
    """Vector de crecimiento de la parte negativa generada por g_-1 (con cuadrados si p = 2)."""
    generated = generated_components(negative)
    entries: List[SuperDim] = []
    total = SuperDim()
    for d in sorted(generated, reverse=True):
        space = generated[d]
        odd = sum(1 for x in space.basis if x.parity)
        total = total + SuperDim(space.dim - odd, odd)
        entries.append(total)
    contact = is_contact_type(negative)
    return GrowthVector(tuple(entries), contact=contact, is_super=any(e.odd for e in entries))


# =============================================
# FÓRMULAS CERRADAS
# =============================================

def growth_formula(series: Series, n: int, m: int, r: int) -> GrowthVector:
    """Vectores de k(2n+1|m; r) y de m(k; r) (para M, ``n`` es k y ``m`` se ignora)."""
    if series == Series.K:
        k = m // 2
        if not 0 <= r <= k:
            raise ExcludedParameterError(f"k({2 * n + 1}|{m}; {r}): r fuera de rango")
        if n == 0 and m % 2 == 0 and r == k - 1 and r > 0:
            raise ExcludedParameterError(f"k(1|{m}; {r}) no corresponde a una W-graduación")
        if r == 0:
            first = SuperDim(2 * n, m)
            return GrowthVector((first, first + SuperDim(1, 0)), contact=True, is_super=m > 0)
        factor = EPS_ONE * 2 ** (r - 1)
        D = SuperDim(2 * n, m - 2 * r) * factor
        return GrowthVector((D, D + factor))
    k = n
    if r == 0:
        return GrowthVector((SuperDim(k, k), SuperDim(k, k + 1)), contact=True)
    if not 1 <= r < k - 1:
        raise ExcludedParameterError(f"m({k}; {r}): la fórmula sólo cubre 1 <= r < {k - 1}")
    factor = EPS_ONE * 2 ** (r - 1)
    D = SuperDim(k - r, k - r) * factor
    return GrowthVector((D, D + factor))


# =============================================
# HUELLA Y CONSTANTES DE ESTRUCTURA
# =============================================

def fingerprint(negative: GradedSlice) -> Fingerprint:
    """Crecimiento, dimensión de [(g_-1)_odd, (g_-1)_odd] y rangos de los corchetes [g_i, g_j]."""
    field = negative.field
    odd = [x for x in negative.basis(-1) if x.parity == 1]
    odd_brackets = [x.bracket(y) for x, y in combinations_with_replacement(odd, 2)]
    odd_space = ElementSpace.span([b for b in odd_brackets if not b.is_zero], field)
    odd_count = sum(1 for x in odd_space.basis if x.parity)
    ranks = []
    degrees = [d for d in negative.degrees if d < 0]
    for a, i in enumerate(degrees):
        for j in degrees[a:]:
            brackets = [x.bracket(y) for x in negative.basis(i) for y in negative.basis(j)]
            space = ElementSpace.span([b for b in brackets if not b.is_zero], field)
            ranks.append((i, j, space.dim))
    return Fingerprint(
        growth=algebraic_growth(negative),
        odd_odd_bracket=SuperDim(odd_space.dim - odd_count, odd_count),
        bracket_ranks=tuple(ranks),
    )


def equivalence_verdict(a: Fingerprint, b: Fingerprint) -> str:
    return "distinguishable" if a.distinguishes(b) else "indistinguishable at this invariant level"


@dataclass
class StructureConstants:
    """[X_a, X_b] = Σ c^k_ab X_k en la base escalonada de la parte negativa."""
    field: GroundField
    labels: List[str]
    degrees: List[int]
    parities: List[int]
    table: Dict[Tuple[int, int], Dict[int, Coefficient]] = dc_field(default_factory=dict)

    @property
    def nonzero(self) -> int:
        return sum(len(v) for v in self.table.values())

    def to_symbol_algebra(self, name: str = "symbol") -> SymbolAlgebra:
        alg = SymbolAlgebra(self.field, name, list(self.labels), list(self.degrees), list(self.parities))
        for (a, b), value in self.table.items():
            alg.table[(a, b)] = dict(value)
        return alg

    def to_dict(self) -> dict:
        return {
            "basis": [
                {"label": lab, "degree": d, "parity": par}
                for lab, d, par in zip(self.labels, self.degrees, self.parities)
            ],
            "constants": [
                {"i": a, "j": b, "k": c, "value": self.field.to_json(v)}
                for (a, b), value in sorted(self.table.items()) for c, v in sorted(value.items())
            ],
        }


def symbol_constants(negative: GradedSlice) -> StructureConstants:
    """Constantes c^k_ab de la parte negativa; falla si no es cerrada por el corchete."""
    field = negative.field
    degrees = sorted((d for d in negative.degrees if d < 0), reverse=True)
    basis, offsets = [], {}
    for d in degrees:
        offsets[d] = len(basis)
        basis.extend((d, x) for x in negative.basis(d))
    labels = [f"X{i + 1}" for i in range(len(basis))]
    out = StructureConstants(field, labels, [d for d, _x in basis], [x.parity or 0 for _d, x in basis])
    for a, (i, x) in enumerate(basis):
        for b, (j, y) in enumerate(basis):
            value = x.bracket(y)
            if value.is_zero:
                continue
            target = negative.component(i + j)
            coords = target.subspace.coordinates(value.coordinates())
            if coords is None:
                raise NotSubalgebraError(f"[{labels[a]}, {labels[b]}] sale de la parte negativa")
            row = {offsets[i + j] + k: c for k, c in enumerate(coords) if c}
            if row:
                out.table[(a, b)] = row
    logger.info(f"Constantes de estructura: {len(basis)} elementos, {out.nonzero} constantes no nulas")
    return out
