"""Álgebra supercommutativa de potencias divididas O(m;N|n).

Monomios u^(r) = prod u_i^(r_i) · xi^s con la multiplicación de potencias
divididas, derivadas parciales distinguidas (izquierdas en las impares) y
contabilidad de grados respecto a un vector de grados arbitrario.
"""

import logging
from dataclasses import dataclass, field as dc_field, replace
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .coeff import Coefficient, GroundField
from .models import DomainMismatchError, TruncationError

logger = logging.getLogger(__name__)

Monomial = Tuple[int, ...]


# =============================================
# DOMINIO
# =============================================

@dataclass(frozen=True)
class DomainSpec:
    """Indeterminadas (pares primero), alturas y grados de O(m;N|n).

    ``heights[i]`` es N_i (None = no acotada); sólo cuenta en las pares.
    Los grados no forman parte de la igualdad: regraduar no cambia el álgebra.
    """
    field: GroundField
    names: Tuple[str, ...]
    parities: Tuple[int, ...]
    heights: Tuple[Optional[int], ...]
    degrees: Tuple[int, ...] = dc_field(default=(), compare=False)

    def __post_init__(self):
        size = len(self.names)
        if len(self.parities) != size or len(self.heights) != size:
            raise DomainMismatchError("names, parities y heights deben tener la misma longitud")
        if list(self.parities) != sorted(self.parities):
            raise DomainMismatchError("Las indeterminadas pares deben ir antes que las impares")
        if len(set(self.names)) != size:
            raise DomainMismatchError(f"Nombres repetidos en {self.names}")
        if not self.degrees:
            object.__setattr__(self, "degrees", tuple(1 for _ in self.names))
        elif len(self.degrees) != size:
            raise DomainMismatchError("El vector de grados no coincide con el número de indeterminadas")

    @classmethod
    def create(
        cls,
        field: GroundField,
        even: Sequence[str] = (),
        odd: Sequence[str] = (),
        heights: Optional[Sequence[Optional[int]]] = None,
        degrees: Optional[Sequence[int]] = None,
    ) -> "DomainSpec":
        """Construye el dominio; ``heights`` se da sólo para las pares (None: todas no acotadas)."""
        even, odd = tuple(even), tuple(odd)
        if heights is None or field.p == 0:
            if heights is not None and any(h is not None for h in heights):
                logger.debug("Alturas ignoradas en característica 0")
            even_heights = tuple(None for _ in even)
        else:
            even_heights = tuple(heights)
            if len(even_heights) != len(even):
                raise DomainMismatchError("Se necesita una altura por indeterminada par")
        return cls(
            field=field,
            names=even + odd,
            parities=tuple(0 for _ in even) + tuple(1 for _ in odd),
            heights=even_heights + tuple(1 for _ in odd),
            degrees=tuple(degrees) if degrees else (),
        )

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def size(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return self.parities.count(0)

    @property
    def n(self) -> int:
        return self.parities.count(1)

    @property
    def caps(self) -> Tuple[Optional[int], ...]:
        """Exponente máximo por indeterminada (None = sin tope)."""
        out = []
        for par, h in zip(self.parities, self.heights):
            if par:
                out.append(1)
            elif h is None or self.p == 0:
                out.append(None)
            else:
                out.append(self.p ** h - 1)
        return tuple(out)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as e:
            raise DomainMismatchError(f"Indeterminada desconocida: {name}") from e

    def with_degrees(self, degrees: Sequence[int]) -> "DomainSpec":
        return replace(self, degrees=tuple(degrees))

    def compatible(self, other: "DomainSpec") -> bool:
        return self == other

    def monomial_parity(self, r: Monomial) -> int:
        return sum(e for e, par in zip(r, self.parities) if par) % 2

    def monomial_degree(self, r: Monomial, degrees: Optional[Sequence[int]] = None) -> int:
        weights = degrees or self.degrees
        return sum(e * w for e, w in zip(r, weights))

    def unit(self, i: int) -> Monomial:
        return tuple(1 if j == i else 0 for j in range(self.size))

    def zero_monomial(self) -> Monomial:
        return tuple(0 for _ in range(self.size))

    def format_monomial(self, r: Monomial) -> str:
        parts = []
        for e, name, par in zip(r, self.names, self.parities):
            if e == 0:
                continue
            parts.append(name if (e == 1 or par) else f"{name}^({e})")
        return "*".join(parts) if parts else "1"


def monomials_of_degree(
    domain: DomainSpec, degree: int, degrees: Optional[Sequence[int]] = None
) -> List[Monomial]:
    """Todos los monomios de grado ponderado ``degree`` que respetan las alturas."""
    weights = list(degrees or domain.degrees)
    caps = domain.caps
    size = domain.size
    for w, cap, name in zip(weights, caps, domain.names):
        if cap is None and w <= 0:
            raise TruncationError(
                f"La indeterminada {name} tiene grado {w} <= 0 y altura no acotada"
            )
    # cotas del grado alcanzable por los sufijos
    low = [0] * (size + 1)
    high: List[Optional[int]] = [0] * (size + 1)
    for i in range(size - 1, -1, -1):
        w, cap = weights[i], caps[i]
        if cap is None:
            low[i] = low[i + 1]
            high[i] = None
        else:
            low[i] = low[i + 1] + min(0, w * cap)
            high[i] = None if high[i + 1] is None else high[i + 1] + max(0, w * cap)

    out: List[Monomial] = []
    current = [0] * size

    def walk(i: int, remaining: int) -> None:
        if i == size:
            if remaining == 0:
                out.append(tuple(current))
            return
        w, cap = weights[i], caps[i]
        e = 0
        while cap is None or e <= cap:
            rest = remaining - e * w
            if w > 0 and rest < low[i + 1]:
                break
            if rest >= low[i + 1] and (high[i + 1] is None or rest <= high[i + 1]):
                current[i] = e
                walk(i + 1, rest)
            e += 1
        current[i] = 0

    walk(0, degree)
    return sorted(out, key=lambda r: (sum(r), r))


# =============================================
# POLINOMIOS
# =============================================

class SuperPoly:
    """Polinomio disperso de potencias divididas; inmutable por convención."""

    __slots__ = ("domain", "terms")

    def __init__(self, domain: DomainSpec, terms: Optional[Dict[Monomial, Coefficient]] = None):
        self.domain = domain
        self.terms: Dict[Monomial, Coefficient] = {r: c for r, c in (terms or {}).items() if c}

    # --- constructores ---
    @classmethod
    def zero(cls, domain: DomainSpec) -> "SuperPoly":
        return cls(domain)

    @classmethod
    def one(cls, domain: DomainSpec) -> "SuperPoly":
        return cls(domain, {domain.zero_monomial(): domain.field.one})

    @classmethod
    def constant(cls, domain: DomainSpec, c) -> "SuperPoly":
        return cls(domain, {domain.zero_monomial(): domain.field(c) if isinstance(c, int) else c})

    @classmethod
    def monomial(cls, domain: DomainSpec, r: Sequence[int], c=1) -> "SuperPoly":
        r = tuple(r)
        caps = domain.caps
        if any(cap is not None and e > cap for e, cap in zip(r, caps)):
            return cls(domain)
        return cls(domain, {r: domain.field(c) if isinstance(c, int) else c})

    @classmethod
    def var(cls, domain: DomainSpec, name, power: int = 1) -> "SuperPoly":
        i = name if isinstance(name, int) else domain.index(name)
        r = [0] * domain.size
        r[i] = power
        return cls.monomial(domain, r)

    # --- protocolo ---
    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if isinstance(other, SuperPoly):
            return self.domain == other.domain and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def _check(self, other: "SuperPoly") -> None:
        if self.domain != other.domain:
            raise DomainMismatchError("Polinomios sobre dominios distintos")

    def __add__(self, other: "SuperPoly") -> "SuperPoly":
        self._check(other)
        terms = dict(self.terms)
        for r, c in other.terms.items():
            new = terms.get(r)
            terms[r] = c if new is None else new + c
        return SuperPoly(self.domain, terms)

    def __neg__(self) -> "SuperPoly":
        return SuperPoly(self.domain, {r: -c for r, c in self.terms.items()})

    def __sub__(self, other: "SuperPoly") -> "SuperPoly":
        return self + (-other)

    def scale(self, c) -> "SuperPoly":
        if isinstance(c, int):
            c = self.domain.field(c)
        if not c:
            return SuperPoly(self.domain)
        return SuperPoly(self.domain, {r: c * x for r, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperPoly):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    # --- consultas ---
    def coefficient(self, r: Sequence[int]) -> Coefficient:
        return self.terms.get(tuple(r), self.domain.field.zero)

    def constant_term(self) -> Coefficient:
        return self.coefficient(self.domain.zero_monomial())

    @property
    def parity(self) -> Optional[int]:
        """Paridad común de los términos; None si es mixto (el cero cuenta como par)."""
        parities = {self.domain.monomial_parity(r) for r in self.terms}
        if len(parities) > 1:
            return None
        return parities.pop() if parities else 0

    def has_parity(self, parity: int) -> bool:
        return all(self.domain.monomial_parity(r) == parity for r in self.terms)

    def degree(self, degrees: Optional[Sequence[int]] = None) -> Optional[int]:
        return degree_of(self, degrees)

    def homogeneous_parts(self, degrees: Optional[Sequence[int]] = None) -> Dict[int, "SuperPoly"]:
        parts: Dict[int, Dict[Monomial, Coefficient]] = {}
        for r, c in self.terms.items():
            parts.setdefault(self.domain.monomial_degree(r, degrees), {})[r] = c
        return {d: SuperPoly(self.domain, t) for d, t in parts.items()}

    def parity_parts(self) -> Tuple["SuperPoly", "SuperPoly"]:
        even, odd = {}, {}
        for r, c in self.terms.items():
            (odd if self.domain.monomial_parity(r) else even)[r] = c
        return SuperPoly(self.domain, even), SuperPoly(self.domain, odd)

    def truncate(self, max_degree: int, degrees: Optional[Sequence[int]] = None) -> "SuperPoly":
        return SuperPoly(self.domain, {
            r: c for r, c in self.terms.items()
            if self.domain.monomial_degree(r, degrees) <= max_degree
        })

    def partial(self, i) -> "SuperPoly":
        return partial(i, self)

    def max_exponents(self) -> Tuple[int, ...]:
        out = [0] * self.domain.size
        for r in self.terms:
            out = [max(a, b) for a, b in zip(out, r)]
        return tuple(out)

    def sorted_terms(self) -> List[Tuple[Monomial, Coefficient]]:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), item[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        field = self.domain.field
        out = []
        for r, c in self.sorted_terms():
            mono = self.domain.format_monomial(r)
            text = field.format(c)
            negative = field.p == 0 and text.startswith("-")
            if negative:
                text = text[1:]
            if mono == "1":
                piece = text
            elif text == "1":
                piece = mono
            else:
                piece = f"{text}*{mono}"
            if not out:
                out.append(f"-{piece}" if negative else piece)
            else:
                out.append(f" - {piece}" if negative else f" + {piece}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"SuperPoly({self})"


# =============================================
# OPERACIONES
# =============================================

def _monomial_product(domain: DomainSpec, r: Monomial, s: Monomial) -> Tuple[Optional[Coefficient], Monomial]:
    field = domain.field
    coef = field.one
    out = []
    caps = domain.caps
    for i, (ri, si) in enumerate(zip(r, s)):
        t = ri + si
        if domain.parities[i]:
            if ri and si:
                return None, ()
        else:
            cap = caps[i]
            if cap is not None and t > cap:
                return None, ()
            if ri and si:
                b = field.binom(t, ri)
                if not b:
                    return None, ()
                coef = coef * b
        out.append(t)
    # signo (-1)^{sum_{i<j impares} r_j s_i}
    swaps = 0
    seen = 0
    for i, par in enumerate(domain.parities):
        if not par:
            continue
        if r[i]:
            swaps += seen
        if s[i]:
            seen += 1
    if swaps % 2:
        coef = -coef
    return coef, tuple(out)


def multiply(f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """Producto de potencias divididas con signo de Koszul; lo que supera la altura es cero."""
    f._check(g)
    domain = f.domain
    terms: Dict[Monomial, Coefficient] = {}
    for r, a in f.terms.items():
        for s, b in g.terms.items():
            coef, t = _monomial_product(domain, r, s)
            if coef is None:
                continue
            value = terms.get(t)
            term = coef * a * b
            terms[t] = term if value is None else value + term
    return SuperPoly(domain, terms)


def partial(i, f: SuperPoly) -> SuperPoly:
    """Derivada distinguida ∂_i; en las impares es la derivada izquierda."""
    domain = f.domain
    if isinstance(i, str):
        i = domain.index(i)
    if not 0 <= i < domain.size:
        raise DomainMismatchError(f"Índice de indeterminada fuera de rango: {i}")
    odd = domain.parities[i]
    terms: Dict[Monomial, Coefficient] = {}
    for r, c in f.terms.items():
        if not r[i]:
            continue
        t = list(r)
        t[i] -= 1
        if odd:
            before = sum(r[k] for k in range(i) if domain.parities[k])
            c = -c if before % 2 else c
        terms[tuple(t)] = c
    return SuperPoly(domain, terms)


def degree_of(f: SuperPoly, degrees: Optional[Sequence[int]] = None) -> Optional[int]:
    """Grado ponderado común de los términos; None si f no es homogéneo; 0 para f = 0."""
    values = {f.domain.monomial_degree(r, degrees) for r in f.terms}
    if not values:
        return 0
    if len(values) > 1:
        return None
    return values.pop()


def berezin_top_coefficient(f: SuperPoly) -> Coefficient:
    """Coeficiente del monomio superior u^(p^N - 1)·xi_1···xi_n."""
    caps = f.domain.caps
    if any(cap is None for cap in caps):
        raise TruncationError("La integral de Berezin necesita todas las alturas finitas")
    return f.coefficient(caps)


def evaluate_at_origin(f: SuperPoly) -> Coefficient:
    return f.constant_term()
