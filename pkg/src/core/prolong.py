"""Prolongación de Cartan completa y parcial.

g_k = {D ∈ A_k : [D, g_i] ⊂ g_{k+i} para todo i < 0}, con A el álgebra ambiente
(campos vectoriales, funciones generatrices u otra dada por un ``Ambient``).
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Protocol, Sequence

from .contact import ContactSpec, genfun_basis
from .fields import VField
from .graded import GradedSlice
from .linalg import AlgebraElement, ElementSpace, Subspace, Vector, add_scaled, nullspace
from .models import ConstraintError, PartialProlongError
from .superfunc import DomainSpec, SuperPoly, monomials_of_degree

logger = logging.getLogger(__name__)


class Ambient(Protocol):
    """Álgebra ambiente graduada: sabe enumerar una base de cada componente."""

    def basis(self, degree: int) -> List[AlgebraElement]:
        ...


@dataclass(frozen=True)
class VectAmbient:
    """vect(m;N|n) con la graduación del dominio."""
    domain: DomainSpec

    def basis(self, degree: int) -> List[VField]:
        out = []
        for i, w in enumerate(self.domain.degrees):
            target = degree + w
            for r in monomials_of_degree(self.domain, target):
                out.append(VField.d(self.domain, i, SuperPoly.monomial(self.domain, r)))
        return out


@dataclass(frozen=True)
class ContactAmbient:
    """k(2n+1|m) o m(n) por funciones generatrices."""
    spec: ContactSpec

    def basis(self, degree: int):
        return genfun_basis(self.spec, degree)


@dataclass
class ProlongSeed:
    """g_- ⊕ g_0 y, opcionalmente, el g~_1 de una prolongación parcial.

    Con ``zero=None`` g_0 se calcula como la prolongación completa en grado 0.
    ``allow_non_surjective`` acepta un g~_1 con [g_-1, g~_1] != g_0 (sólo lo anota en los metadatos).
    """
    negative: GradedSlice
    zero: Optional[Sequence[AlgebraElement]]
    partial_g1: Optional[Sequence[AlgebraElement]] = None
    allow_non_surjective: bool = False

    def as_slice(self) -> GradedSlice:
        out = self.negative.restricted(hi=-1)
        if self.zero:
            out = out.with_component(0, ElementSpace.span(self.zero, self.negative.field))
        out.truncated_at = 0
        return out


def _combine(basis: Sequence[AlgebraElement], coefficients) -> AlgebraElement:
    coords: Vector = {}
    for c, x in zip(coefficients, basis):
        if c:
            add_scaled(coords, x.coordinates(), c)
    return basis[0].rebuild(coords)


def prolong_step(computed: GradedSlice, ambient: Ambient, k: int) -> ElementSpace:
    """Componente g_k: núcleo del sistema lineal [D, X] ≡ 0 módulo g_{k+i} para X ∈ g_i, i < 0."""
    candidates = ambient.basis(k)
    field = computed.field
    empty = ElementSpace(None, Subspace(field))
    if not candidates:
        return empty
    constraints = [(d, x) for d in computed.degrees if d < 0 for x in computed.basis(d)]
    columns: List[Vector] = []
    for D in candidates:
        column: Vector = {}
        for j, (d, x) in enumerate(constraints):
            target = computed.component(k + d)
            residual = target.subspace.reduce(D.bracket(x).coordinates())
            for key, c in residual.items():
                column[(j, key)] = c
        columns.append(column)
    kernel = nullspace(field, columns)
    logger.debug(f"Prolongación en grado {k}: {len(candidates)} candidatos, {len(constraints)} restricciones")
    if not kernel:
        return empty
    return ElementSpace.span([_combine(candidates, v) for v in kernel], field)


def partial_surjective(slice_: GradedSlice, g1: Sequence[AlgebraElement]) -> bool:
    """[g_-1, g~_1] = g_0."""
    brackets = [y.bracket(x) for y in slice_.basis(-1) for x in g1]
    image = ElementSpace.span([b for b in brackets if not b.is_zero], slice_.field)
    return image.same_as(slice_.component(0))


def prolong(
    seed: ProlongSeed,
    ambient: Ambient,
    up_to: int,
    label: str = "",
) -> GradedSlice:
    """Prolongación hasta el grado ``up_to``; con ``partial_g1`` el grado 1 se sustituye por g~_1."""
    result = seed.as_slice()
    result.label = label or seed.negative.label
    start = 0 if seed.zero is None else 1
    for k in range(start, up_to + 1):
        if k == 1 and seed.partial_g1 is not None:
            full = prolong_step(result, ambient, 1)
            outside = [x for x in seed.partial_g1 if not full.contains(x)]
            if outside:
                raise ConstraintError(f"g~_1 no está contenido en la prolongación completa: {outside[0]}")
            space = ElementSpace.span(seed.partial_g1, result.field)
            surjective = partial_surjective(result, space.basis)
            result.metadata["partial_surjective"] = surjective
            if not surjective:
                message = "[g_-1, g~_1] no coincide con g_0"
                if not seed.allow_non_surjective:
                    raise PartialProlongError(message)
                logger.warning(message)
        else:
            space = prolong_step(result, ambient, k)
        result = result.with_component(k, space)
        result.truncated_at = k
        logger.info(f"Prolongación {result.label}: dim g_{k} = {result.sdim(k)}")
    return result


def contained_in(smaller: GradedSlice, larger: GradedSlice) -> bool:
    """Inclusión componente a componente (prolongación parcial dentro de la completa)."""
    return all(larger.component(d).contains_space(smaller.component(d)) for d in smaller.degrees)
