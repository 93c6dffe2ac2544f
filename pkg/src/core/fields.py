"""Campos vectoriales (superderivaciones) sobre O(m;N|n).

Corchete, cuadrado en característica 2, potencia p-ésima, divergencia, acción
sobre densidades, 1-formas con derivada de Lie y el test de Frobenius.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import Coefficient
from .linalg import AlgebraElement, ElementSpace, Vector
from .models import CharacteristicError, DomainMismatchError, ParityError, TruncationError, WorkbenchError
from .superfunc import DomainSpec, SuperPoly, monomials_of_degree, partial

logger = logging.getLogger(__name__)


def _check_domains(a: DomainSpec, b: DomainSpec) -> None:
    if a != b:
        raise DomainMismatchError("Operandos sobre dominios distintos")


# =============================================
# CAMPOS VECTORIALES
# =============================================

class VField(AlgebraElement):
    """Campo Σ f_i ∂_i con ∂_i la derivada distinguida (izquierda en las impares)."""

    __slots__ = ("domain", "components")

    def __init__(self, domain: DomainSpec, components):
        self.domain = domain
        if isinstance(components, dict):
            comps = [SuperPoly.zero(domain) for _ in range(domain.size)]
            for i, f in components.items():
                comps[i] = f
            components = comps
        components = tuple(components)
        if len(components) != domain.size:
            raise DomainMismatchError("Número de componentes distinto del número de indeterminadas")
        self.components: Tuple[SuperPoly, ...] = components

    @classmethod
    def zero(cls, domain: DomainSpec) -> "VField":
        return cls(domain, {})

    @classmethod
    def d(cls, domain: DomainSpec, i, coefficient: Optional[SuperPoly] = None) -> "VField":
        """coefficient·∂_i (por defecto ∂_i)."""
        if isinstance(i, str):
            i = domain.index(i)
        return cls(domain, {i: coefficient if coefficient is not None else SuperPoly.one(domain)})

    @property
    def field(self):
        return self.domain.field

    # --- protocolo de elemento ---
    def coordinates(self) -> Vector:
        out: Vector = {}
        for i, f in enumerate(self.components):
            for r, c in f.terms.items():
                out[(i, r)] = c
        return out

    def rebuild(self, coords: Vector) -> "VField":
        buckets: Dict[int, dict] = {}
        for (i, r), c in coords.items():
            buckets.setdefault(i, {})[r] = c
        return VField(self.domain, {i: SuperPoly(self.domain, t) for i, t in buckets.items()})

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero for f in self.components)

    def __add__(self, other: "VField") -> "VField":
        if not isinstance(other, VField):
            return NotImplemented
        _check_domains(self.domain, other.domain)
        return VField(self.domain, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VField") -> "VField":
        if not isinstance(other, VField):
            return NotImplemented
        _check_domains(self.domain, other.domain)
        return VField(self.domain, [a - b for a, b in zip(self.components, other.components)])

    def scale(self, c) -> "VField":
        return VField(self.domain, [f.scale(c) for f in self.components])

    def multiply_left(self, f: SuperPoly) -> "VField":
        """f·X."""
        return VField(self.domain, [f * g for g in self.components])

    @property
    def parity(self) -> Optional[int]:
        parities = set()
        for i, f in enumerate(self.components):
            for r in f.terms:
                parities.add((self.domain.monomial_parity(r) + self.domain.parities[i]) % 2)
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def degree(self, degrees: Optional[Sequence[int]] = None) -> Optional[int]:
        weights = degrees or self.domain.degrees
        values = set()
        for i, f in enumerate(self.components):
            for r in f.terms:
                values.add(self.domain.monomial_degree(r, weights) - weights[i])
        if len(values) > 1:
            return None
        return values.pop() if values else 0

    def homogeneous_parts(self, degrees: Optional[Sequence[int]] = None) -> Dict[int, "VField"]:
        weights = degrees or self.domain.degrees
        buckets: Dict[int, Dict[int, dict]] = {}
        for i, f in enumerate(self.components):
            for r, c in f.terms.items():
                d = self.domain.monomial_degree(r, weights) - weights[i]
                buckets.setdefault(d, {}).setdefault(i, {})[r] = c
        return {
            d: VField(self.domain, {i: SuperPoly(self.domain, t) for i, t in comps.items()})
            for d, comps in buckets.items()
        }

    def parity_parts(self) -> Tuple["VField", "VField"]:
        even: Dict[int, dict] = {}
        odd: Dict[int, dict] = {}
        for i, f in enumerate(self.components):
            for r, c in f.terms.items():
                target = odd if (self.domain.monomial_parity(r) + self.domain.parities[i]) % 2 else even
                target.setdefault(i, {})[r] = c
        build = lambda parts: VField(self.domain, {i: SuperPoly(self.domain, t) for i, t in parts.items()})
        return build(even), build(odd)

    # --- acción y corchete ---
    def apply(self, f: SuperPoly) -> SuperPoly:
        """X(f) = Σ X_i·∂_i f."""
        _check_domains(self.domain, f.domain)
        out = SuperPoly.zero(self.domain)
        for i, coef in enumerate(self.components):
            if coef.is_zero:
                continue
            df = partial(i, f)
            if not df.is_zero:
                out = out + coef * df
        return out

    __call__ = apply

    def bracket(self, other: "AlgebraElement") -> "AlgebraElement":
        if isinstance(other, Derivation):
            return self.as_derivation(other.levels).bracket(other)
        _check_domains(self.domain, other.domain)
        px, py = self.parity, other.parity
        if px is None or py is None:
            total = VField.zero(self.domain)
            for a in self.parity_parts():
                for b in other.parity_parts():
                    if not a.is_zero and not b.is_zero:
                        total = total + a.bracket(b)
            return total
        sign = self.field.sign(px * py)
        comps = []
        for x_j, y_j in zip(self.components, other.components):
            comps.append(self.apply(y_j) - other.apply(x_j).scale(sign))
        return VField(self.domain, comps)

    def square(self) -> "VField":
        """X∘X para X impar en característica 2."""
        if self.field.p != 2:
            raise CharacteristicError("El cuadrado de un campo impar sólo está definido con p = 2")
        if self.parity != 1:
            raise ParityError("square requiere un campo impar homogéneo")
        return VField(self.domain, [self.apply(x_j) for x_j in self.components])

    def p_power(self, levels: Optional[Sequence[int]] = None) -> "AlgebraElement":
        """X^p como derivación; devuelve VField si es especial y Derivation si no.

        ``levels`` fija cuántos generadores u_i^(p^k) se usan en las pares de altura no acotada.
        """
        p = self.field.p
        if p == 0:
            raise CharacteristicError("La potencia p-ésima necesita p > 0")
        parity = self.parity
        if parity is None:
            raise ParityError("p_power requiere un campo homogéneo en paridad")
        if parity == 1:
            if p != 2:
                raise ParityError("La potencia p-ésima de un campo impar sólo existe con p = 2")
            return self.square()
        return self.as_derivation(levels).p_power().simplify()

    def divergence(self) -> SuperPoly:
        """Div X = Σ (-1)^{p(f_i)p(∂_i)} ∂_i f_i (componentes separadas por paridad)."""
        out = SuperPoly.zero(self.domain)
        for i, f in enumerate(self.components):
            if f.is_zero:
                continue
            if self.domain.parities[i]:
                even, odd = f.parity_parts()
                out = out + partial(i, even) - partial(i, odd)
            else:
                out = out + partial(i, f)
        return out

    def value_at_origin(self) -> Vector:
        """Vector tangente en 0: constantes de cada componente."""
        out: Vector = {}
        for i, f in enumerate(self.components):
            c = f.constant_term()
            if c:
                out[i] = c
        return out

    def truncate(self, max_degree: int) -> "VField":
        ones = tuple(1 for _ in self.domain.names)
        return VField(self.domain, [f.truncate(max_degree, ones) for f in self.components])

    def with_degrees(self, degrees: Sequence[int]) -> "VField":
        domain = self.domain.with_degrees(degrees)
        return VField(domain, [SuperPoly(domain, f.terms) for f in self.components])

    def restricted_square(self, levels: Optional[Sequence[int]] = None) -> AlgebraElement:
        """X∘X con p = 2 para cualquier paridad (la aplicación [2])."""
        if self.field.p != 2:
            raise CharacteristicError("La aplicación [2] sólo está definida con p = 2")
        if self.parity == 1:
            return self.square()
        return self.as_derivation(levels)._power(2).simplify()

    def as_derivation(self, levels: Optional[Sequence[int]] = None) -> "Derivation":
        levels = Derivation.resolve_levels(self.domain, levels)
        values = {}
        for (i, k) in Derivation.generator_keys(self.domain, levels):
            gen = Derivation.generator(self.domain, i, k)
            value = self.apply(gen)
            if not value.is_zero:
                values[(i, k)] = value
        return Derivation(self.domain, values, levels)

    def format(self) -> str:
        parts = []
        for i, f in enumerate(self.components):
            if f.is_zero:
                continue
            text = str(f)
            if len(f.terms) > 1:
                text = f"({text})"
            parts.append(f"{text} d_{self.domain.names[i]}")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"VField({self})"


# =============================================
# DERIVACIONES GENERALES
# =============================================

class Derivation(AlgebraElement):
    """Derivación de O(m;N|n) dada por sus valores en los generadores u_i^(p^k) y xi_j.

    Las potencias p-ésimas de campos especiales no son especiales en general;
    este tipo las representa sin perder información.
    """

    __slots__ = ("domain", "values", "levels")

    def __init__(self, domain: DomainSpec, values: Dict[Tuple[int, int], SuperPoly], levels: Sequence[int]):
        self.domain = domain
        self.values = {key: f for key, f in values.items() if not f.is_zero}
        self.levels = tuple(levels)

    @staticmethod
    def resolve_levels(domain: DomainSpec, levels: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        if domain.p == 0:
            raise CharacteristicError("Las derivaciones por generadores necesitan p > 0")
        out = []
        for i, (par, h) in enumerate(zip(domain.parities, domain.heights)):
            if par:
                out.append(1)
            elif h is not None:
                out.append(h)
            elif levels is not None and levels[i] is not None:
                out.append(levels[i])
            else:
                raise TruncationError(
                    f"La indeterminada {domain.names[i]} no tiene altura; indique los niveles de generadores"
                )
        return tuple(out)

    @staticmethod
    def generator_keys(domain: DomainSpec, levels: Sequence[int]) -> List[Tuple[int, int]]:
        return [(i, k) for i in range(domain.size) for k in range(levels[i])]

    @staticmethod
    def generator(domain: DomainSpec, i: int, k: int) -> SuperPoly:
        power = 1 if domain.parities[i] else domain.p ** k
        return SuperPoly.var(domain, i, power)

    @property
    def field(self):
        return self.domain.field

    def generator_degree(self, i: int, k: int, degrees: Optional[Sequence[int]] = None) -> int:
        weights = degrees or self.domain.degrees
        return weights[i] * (1 if self.domain.parities[i] else self.domain.p ** k)

    def coordinates(self) -> Vector:
        out: Vector = {}
        for (i, k), f in self.values.items():
            for r, c in f.terms.items():
                out[(i, k, r)] = c
        return out

    def rebuild(self, coords: Vector) -> "Derivation":
        buckets: Dict[Tuple[int, int], dict] = {}
        for (i, k, r), c in coords.items():
            buckets.setdefault((i, k), {})[r] = c
        return Derivation(self.domain, {key: SuperPoly(self.domain, t) for key, t in buckets.items()}, self.levels)

    @property
    def parity(self) -> Optional[int]:
        parities = set()
        for (i, _k), f in self.values.items():
            for r in f.terms:
                parities.add((self.domain.monomial_parity(r) + self.domain.parities[i]) % 2)
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def degree(self, degrees: Optional[Sequence[int]] = None) -> Optional[int]:
        values = set()
        for (i, k), f in self.values.items():
            for r in f.terms:
                values.add(self.domain.monomial_degree(r, degrees) - self.generator_degree(i, k, degrees))
        if len(values) > 1:
            return None
        return values.pop() if values else 0

    def partial_generator(self, i: int, k: int, f: SuperPoly) -> SuperPoly:
        """∂f/∂(u_i^(p^k)): baja en p^k el exponente cuando su dígito k es no nulo."""
        if self.domain.parities[i]:
            return partial(i, f)
        p = self.domain.p
        step = p ** k
        terms = {}
        for r, c in f.terms.items():
            if (r[i] // step) % p == 0:
                continue
            t = list(r)
            t[i] -= step
            terms[tuple(t)] = c
        return SuperPoly(self.domain, terms)

    def apply(self, f: SuperPoly) -> SuperPoly:
        _check_domains(self.domain, f.domain)
        out = SuperPoly.zero(self.domain)
        for (i, k), value in self.values.items():
            df = self.partial_generator(i, k, f)
            if not df.is_zero:
                out = out + value * df
        return out

    __call__ = apply

    def _coerce(self, other: AlgebraElement) -> "Derivation":
        if isinstance(other, VField):
            return other.as_derivation(self.levels)
        if isinstance(other, Derivation):
            _check_domains(self.domain, other.domain)
            return other
        raise DomainMismatchError(f"No se puede operar una derivación con {type(other).__name__}")

    def __add__(self, other):
        return super().__add__(self._coerce(other))

    def __sub__(self, other):
        return super().__sub__(self._coerce(other))

    def bracket(self, other: AlgebraElement) -> "Derivation":
        other = self._coerce(other)
        px, py = self.parity, other.parity
        if px is None or py is None:
            total = Derivation(self.domain, {}, self.levels)
            for a in self.parity_parts():
                for b in other.parity_parts():
                    if not a.is_zero and not b.is_zero:
                        total = total + a.bracket(b)
            return total
        sign = self.field.sign(px * py)
        values = {}
        for (i, k) in self.generator_keys(self.domain, self.levels):
            gen = self.generator(self.domain, i, k)
            value = self.apply(other.apply(gen)) - other.apply(self.apply(gen)).scale(sign)
            if not value.is_zero:
                values[(i, k)] = value
        return Derivation(self.domain, values, self.levels)

    def _power(self, times: int) -> "Derivation":
        values = {}
        for (i, k) in self.generator_keys(self.domain, self.levels):
            value = self.generator(self.domain, i, k)
            for _ in range(times):
                value = self.apply(value)
                if value.is_zero:
                    break
            if not value.is_zero:
                values[(i, k)] = value
        return Derivation(self.domain, values, self.levels)

    def square(self) -> "Derivation":
        if self.field.p != 2:
            raise CharacteristicError("El cuadrado de una derivación impar sólo está definido con p = 2")
        if self.parity != 1:
            raise ParityError("square requiere una derivación impar homogénea")
        return self._power(2)

    def p_power(self) -> "Derivation":
        parity = self.parity
        if parity is None:
            raise ParityError("p_power requiere una derivación homogénea en paridad")
        if parity == 1:
            return self.square()
        return self._power(self.domain.p)

    def with_degrees(self, degrees: Sequence[int]) -> "Derivation":
        domain = self.domain.with_degrees(degrees)
        return Derivation(domain, {key: SuperPoly(domain, f.terms) for key, f in self.values.items()}, self.levels)

    def restricted_square(self) -> AlgebraElement:
        if self.field.p != 2:
            raise CharacteristicError("La aplicación [2] sólo está definida con p = 2")
        return self._power(2).simplify()

    def special_part(self) -> VField:
        return VField(self.domain, {i: f for (i, k), f in self.values.items() if k == 0})

    def is_special(self) -> bool:
        return self.special_part().as_derivation(self.levels) == self

    def simplify(self) -> AlgebraElement:
        """VField si la derivación es especial; si no, ella misma."""
        field = self.special_part()
        return field if field.as_derivation(self.levels) == self else self

    def format(self) -> str:
        parts = []
        for (i, k), f in sorted(self.values.items()):
            name = self.domain.names[i]
            gen = name if (k == 0 or self.domain.parities[i]) else f"{name}^({self.domain.p ** k})"
            text = str(f)
            if len(f.terms) > 1:
                text = f"({text})"
            parts.append(f"{text} D[{gen}]")
        return " + ".join(parts) if parts else "0"

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"Derivation({self})"


# =============================================
# DENSIDADES Y 1-FORMAS
# =============================================

@dataclass(frozen=True)
class Density:
    """f·vol^λ."""
    f: SuperPoly
    weight: Coefficient


def act_on_density(X: VField, density: Density) -> Density:
    """(X(f) + λ(-1)^{p(f)p(X)} f·Div X)·vol^λ; λ = -1/2 da la acción sobre semidensidades."""
    _check_domains(X.domain, density.f.domain)
    px = X.parity
    if px is None:
        even, odd = X.parity_parts()
        a = act_on_density(even, density)
        b = act_on_density(odd, density)
        return Density(a.f + b.f, density.weight)
    div = X.divergence()
    out = X.apply(density.f)
    for part in density.f.parity_parts():
        if part.is_zero:
            continue
        sign = X.field.sign(px * (part.parity or 0))
        out = out + (part * div).scale(sign * density.weight)
    return Density(out, density.weight)


class OneForm:
    """1-forma Σ dx_j·g_j (coeficientes a la derecha)."""

    __slots__ = ("domain", "components")

    def __init__(self, domain: DomainSpec, components):
        self.domain = domain
        if isinstance(components, dict):
            comps = [SuperPoly.zero(domain) for _ in range(domain.size)]
            for i, g in components.items():
                comps[i] = g
            components = comps
        self.components: Tuple[SuperPoly, ...] = tuple(components)

    @classmethod
    def from_left_products(cls, domain: DomainSpec, terms: Sequence[Tuple[SuperPoly, int]]) -> "OneForm":
        """Construye Σ c·dx_j pasando cada coeficiente a la derecha: c·dx_j = dx_j·((-1)^{p(c)p(x_j)} c)."""
        comps = [SuperPoly.zero(domain) for _ in range(domain.size)]
        for c, j in terms:
            if isinstance(j, str):
                j = domain.index(j)
            even, odd = c.parity_parts()
            moved = even + (odd.scale(-1) if domain.parities[j] else odd)
            comps[j] = comps[j] + moved
        return cls(domain, comps)

    @classmethod
    def d(cls, f: SuperPoly) -> "OneForm":
        """df = Σ dx_j·∂_j f."""
        return cls(f.domain, [partial(j, f) for j in range(f.domain.size)])

    @property
    def field(self):
        return self.domain.field

    def __eq__(self, other) -> bool:
        return isinstance(other, OneForm) and self.domain == other.domain and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __add__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.domain, [a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "OneForm") -> "OneForm":
        return OneForm(self.domain, [a - b for a, b in zip(self.components, other.components)])

    def multiply_right(self, f: SuperPoly) -> "OneForm":
        """α·f."""
        return OneForm(self.domain, [g * f for g in self.components])

    def multiply_left(self, f: SuperPoly) -> "OneForm":
        """f·α = Σ dx_j·((-1)^{p(f)p(x_j)} f·g_j)."""
        even, odd = f.parity_parts()
        comps = []
        for j, g in enumerate(self.components):
            moved = even + (odd.scale(-1) if self.domain.parities[j] else odd)
            comps.append(moved * g)
        return OneForm(self.domain, comps)

    @property
    def is_zero(self) -> bool:
        return all(g.is_zero for g in self.components)

    def __str__(self) -> str:
        parts = [
            f"d{self.domain.names[j]}·({g})" for j, g in enumerate(self.components) if not g.is_zero
        ]
        return " + ".join(parts) if parts else "0"


def pairing(X: VField, alpha: OneForm) -> SuperPoly:
    """⟨Σ f_i ∂_i, Σ dx_j·g_j⟩ = Σ f_i g_i."""
    _check_domains(X.domain, alpha.domain)
    out = SuperPoly.zero(X.domain)
    for f, g in zip(X.components, alpha.components):
        if not f.is_zero and not g.is_zero:
            out = out + f * g
    return out


def interior(X: VField, alpha: OneForm) -> SuperPoly:
    """ι_X(α) = (-1)^{p(X)}⟨X, α⟩."""
    px = X.parity
    if px is None:
        raise ParityError("interior requiere un campo homogéneo")
    return pairing(X, alpha).scale(X.field.sign(px))


def lie_derivative_form(X: VField, alpha: OneForm) -> OneForm:
    """L_X α determinada por X⟨Y,α⟩ = ⟨[X,Y],α⟩ + (-1)^{p(X)p(Y)}⟨Y, L_X α⟩ con Y = ∂_i.

    Componente i: (-1)^{p(X)p(x_i)} X(α_i) + Σ_j ∂_i(X_j)·α_j.
    """
    _check_domains(X.domain, alpha.domain)
    px = X.parity
    if px is None:
        even, odd = X.parity_parts()
        return lie_derivative_form(even, alpha) + lie_derivative_form(odd, alpha)
    comps = []
    for i in range(X.domain.size):
        sign = X.field.sign(px * X.domain.parities[i])
        value = X.apply(alpha.components[i]).scale(sign)
        for j, (x_j, a_j) in enumerate(zip(X.components, alpha.components)):
            if x_j.is_zero or a_j.is_zero:
                continue
            value = value + partial(i, x_j) * a_j
        comps.append(value)
    return OneForm(X.domain, comps)


def form_factor(alpha: OneForm, beta: OneForm) -> Optional[SuperPoly]:
    """F tal que beta = F·alpha (factor a la izquierda) cuando alpha tiene una componente constante; None si no existe."""
    for j, g in enumerate(alpha.components):
        c = g.constant_term()
        if c and len(g.terms) == 1:
            even, odd = beta.components[j].scale(alpha.field.one / c).parity_parts()
            factor = even + (odd.scale(-1) if alpha.domain.parities[j] else odd)
            return factor if alpha.multiply_left(factor) == beta else None
    raise WorkbenchError("La forma no tiene una componente constante para normalizar")


# =============================================
# INTEGRABILIDAD
# =============================================

@dataclass
class IntegrabilityResult:
    """Veredicto del criterio de Frobenius hasta un grado de jet."""
    integrable: bool
    truncation: int
    witness: Optional[Tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.integrable

    def __str__(self) -> str:
        if self.integrable:
            return f"true up to degree {self.truncation}"
        return f"false (corchete {self.witness} fuera del módulo)"


def is_integrable(fields: Sequence[VField], truncation_degree: int) -> IntegrabilityResult:
    """Frobenius: todo corchete [X_a, X_b] en el O-módulo generado por los campos, hasta el jet dado."""
    fields = list(fields)
    if not fields:
        raise WorkbenchError("is_integrable necesita al menos un campo")
    domain = fields[0].domain
    ones = tuple(1 for _ in domain.names)
    multipliers: List[SuperPoly] = []
    for d in range(truncation_degree + 1):
        multipliers.extend(SuperPoly.monomial(domain, r) for r in monomials_of_degree(domain, d, ones))
    generators = []
    for X in fields:
        for h in multipliers:
            Y = X.multiply_left(h).truncate(truncation_degree)
            if not Y.is_zero:
                generators.append(Y)
    module = ElementSpace.span(generators, domain.field)
    logger.debug(f"Módulo de Frobenius: {len(generators)} generadores, dimensión {module.dim}")
    for a in range(len(fields)):
        for b in range(a, len(fields)):
            Z = fields[a].bracket(fields[b]).truncate(truncation_degree)
            if not Z.is_zero and not module.contains(Z):
                return IntegrabilityResult(False, truncation_degree, (a, b))
    return IntegrabilityResult(True, truncation_degree)
