"""Modelos de datos del workbench: superdimensiones, vectores de crecimiento, informes y configuración."""

import os
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple


# =============================================
# ERRORES
# =============================================

class WorkbenchError(ValueError):
    """Error base del workbench."""
    exit_code = 1


class CharacteristicError(WorkbenchError):
    """Característica no válida o no soportada por la operación."""
    exit_code = 2


class DomainMismatchError(WorkbenchError):
    """Operandos definidos sobre dominios distintos."""
    exit_code = 2


class ParityError(WorkbenchError):
    """Se esperaba un elemento homogéneo en paridad."""
    exit_code = 2


class TruncationError(WorkbenchError):
    """Alturas no acotadas donde se necesita una truncación finita."""
    exit_code = 2


class ParseError(WorkbenchError):
    """Sintaxis de texto incorrecta."""
    exit_code = 2


class ConstraintError(WorkbenchError):
    """Sistema de grados contradictorio o sin solución."""
    exit_code = 2


class NotSubalgebraError(WorkbenchError):
    """El subespacio dado no es cerrado por el corchete."""
    exit_code = 2


class ExcludedParameterError(WorkbenchError):
    """Parámetro que no corresponde a una graduación de Weisfeiler."""
    exit_code = 2


class UnsupportedEntryError(WorkbenchError):
    """Entrada de catálogo desconocida o combinación (p, nombre) no soportada."""
    exit_code = 3


class UnknownEntryError(UnsupportedEntryError):
    """Nombre que no está en el catálogo."""
    exit_code = 2


class PartialProlongError(WorkbenchError):
    """La prolongación parcial no cumple [g_-1, g~_1] = g_0."""
    exit_code = 1


# =============================================
# ENUMS
# =============================================

class ContactKind(Enum):
    """Tipo de estructura de contacto."""
    CONTACT = "contact"           # k(2n+1|m), forma alpha_1
    PERICONTACT = "pericontact"   # m(n), forma alpha_0


class Series(Enum):
    """Series con fórmula cerrada del vector de crecimiento."""
    K = "K"
    M = "M"


class Irreducibility(Enum):
    """Veredicto del test de irreducibilidad de g_-1 como g_0-módulo."""
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"
    UNKNOWN = "unknown"


class VerifyStatus(Enum):
    """Resultado de verificar una entrada del catálogo."""
    PASS = "pass"
    FAIL = "fail"
    DEVIATION = "deviation"   # coincide con la desviación documentada
    REFERENCE = "reference"   # sólo datos de referencia, no calculado


# =============================================
# SUPERDIMENSIONES Y CRECIMIENTO
# =============================================

@dataclass(frozen=True, order=True)
class SuperDim:
    """Superdimensión a|b, es decir a + b·eps con eps² = 1."""
    even: int = 0
    odd: int = 0

    @property
    def total(self) -> int:
        return self.even + self.odd

    def __add__(self, other: "SuperDim") -> "SuperDim":
        return SuperDim(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other: "SuperDim") -> "SuperDim":
        return SuperDim(self.even - other.even, self.odd - other.odd)

    def __mul__(self, other) -> "SuperDim":
        if isinstance(other, int):
            return SuperDim(self.even * other, self.odd * other)
        return SuperDim(
            self.even * other.even + self.odd * other.odd,
            self.even * other.odd + self.odd * other.even,
        )

    __rmul__ = __mul__

    def format(self, is_super: bool = True) -> str:
        if not is_super:
            return str(self.total)
        return f"{self.even}|{self.odd}"

    def __str__(self) -> str:
        return self.format()

    @classmethod
    def parse(cls, text: str) -> "SuperDim":
        text = text.strip()
        if "|" in text:
            a, b = text.split("|")
            return cls(int(a), int(b))
        return cls(int(text), 0)


EPS_ONE = SuperDim(1, 1)  # 1 + eps


@dataclass(frozen=True)
class GrowthVector:
    """Vector de crecimiento de una distribución; ``contact`` es la marca C."""
    entries: Tuple[SuperDim, ...]
    contact: bool = False
    is_super: bool = True

    @property
    def depth(self) -> int:
        return len(self.entries)

    def totals(self) -> Tuple[int, ...]:
        return tuple(e.total for e in self.entries)

    def __str__(self) -> str:
        sep = ", " if self.is_super else ","
        body = sep.join(e.format(self.is_super) for e in self.entries)
        return f"({body}){'C' if self.contact else ''}"

    @classmethod
    def parse(cls, text: str) -> "GrowthVector":
        """Lee '(2,3,5)' o '(8|6, 9|6)C'."""
        text = text.strip()
        match = re.fullmatch(r"\((.*)\)\s*(C?)", text)
        if not match:
            raise ParseError(f"Vector de crecimiento ilegible: {text!r}")
        parts = [s for s in match.group(1).split(",") if s.strip()]
        entries = tuple(SuperDim.parse(s) for s in parts)
        return cls(entries, contact=bool(match.group(2)), is_super="|" in text)


@dataclass(frozen=True)
class Fingerprint:
    """Invariante necesario de isomorfismo de la parte negativa."""
    growth: GrowthVector
    odd_odd_bracket: SuperDim
    bracket_ranks: Tuple[Tuple[int, int, int], ...]  # (i, j, rango de [g_i, g_j])

    def distinguishes(self, other: "Fingerprint") -> bool:
        return self != other


# =============================================
# INFORMES
# =============================================

@dataclass
class WGradingReport:
    """Informe de validación de una graduación de Weisfeiler."""
    transitive: bool
    depth: int
    irreducible_gm1: Irreducibility
    generated_by_gm1: bool
    truncation: int
    dims: Dict[int, SuperDim] = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def is_w_grading(self) -> bool:
        return (self.transitive and self.generated_by_gm1
                and self.irreducible_gm1 != Irreducibility.REDUCIBLE)

    def to_dict(self) -> dict:
        return {
            "transitive": self.transitive,
            "depth": self.depth,
            "irreducible_gm1": self.irreducible_gm1.value,
            "generated_by_gm1": self.generated_by_gm1,
            "truncation": self.truncation,
            "dims": {str(k): str(v) for k, v in sorted(self.dims.items())},
            "notes": list(self.notes),
        }


@dataclass
class IdealReport:
    """Resultado de la búsqueda acotada de ideales graduados propios."""
    found: bool
    truncation: int
    ideal_dims: Dict[int, SuperDim] = field(default_factory=dict)
    algebra_dims: Dict[int, SuperDim] = field(default_factory=dict)
    reason: str = ""

    @property
    def verdict(self) -> str:
        return "IDEAL-FOUND" if self.found else f"NONE-FOUND-UP-TO-{self.truncation}"


@dataclass
class VerifyReport:
    """Comparación de una entrada construida con su fixture."""
    name: str
    status: VerifyStatus
    citation: str = ""
    diffs: List[str] = field(default_factory=list)
    computed: dict = field(default_factory=dict)
    expected: dict = field(default_factory=dict)
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == VerifyStatus.PASS

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "citation": self.citation,
            "diffs": list(self.diffs),
            "computed": self.computed,
            "expected": self.expected,
            "notes": list(self.notes),
        }


# =============================================
# CONFIGURACIÓN
# =============================================

@dataclass(frozen=True)
class WorkbenchConfig:
    """Configuración compartida por la CLI, la app y las llamadas de librería."""
    p: int = 0
    truncation: int = 2
    seed: int = 20240601
    irreducibility_attempts: int = 40
    output_format: str = "json"

    @classmethod
    def from_env(cls, **overrides) -> "WorkbenchConfig":
        """Lee LIEWB_P, LIEWB_TRUNCATION y LIEWB_SEED; ``overrides`` tiene prioridad."""
        values = {}
        for key, env in (("p", "LIEWB_P"), ("truncation", "LIEWB_TRUNCATION"), ("seed", "LIEWB_SEED")):
            if os.environ.get(env):
                values[key] = int(os.environ[env])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
