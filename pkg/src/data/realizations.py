"""
Realizaciones explícitas de las familias del catálogo.

Cada constructor devuelve una ``Realization``: la porción graduada calculada
hasta la truncación pedida más los datos auxiliares (campos para la bandera,
ambiente para la prolongación y comprobaciones extra).

Las bases de grado <= 0 salen de las tablas de la fuente escritas en la
sintaxis de texto de ``parser``; los grados positivos se calculan siempre
(prolongación o sistema de ecuaciones en Y-vectores).
"""

import logging
from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, List, Optional, Sequence

from ..core import symbol
from ..core.char2 import desuperize, queerify, superize
from ..core.coeff import GroundField
from ..core.contact import (
    ContactSpec, GenFun, b_ab_residual, contact_regrading, genfun_basis, le_field,
    pericontact_regrading, solve_equation_subspace,
)
from ..core.fields import VField
from ..core.graded import GradedSlice, generated_components, slice_elements
from ..core.linalg import AlgebraElement, ElementSpace, Vector, add_scaled, nullspace
from ..core.models import CharacteristicError, DomainMismatchError, TruncationError, WorkbenchConfig
from ..core.prolong import Ambient, ContactAmbient, ProlongSeed, VectAmbient, prolong
from ..core.superfunc import DomainSpec, SuperPoly, monomials_of_degree, partial
from .parser import parse_fields, parse_poly, parse_y_equation

logger = logging.getLogger(__name__)


@dataclass
class Realization:
    """Porción calculada de una entrada y lo necesario para verificarla."""
    name: str
    slice: GradedSlice
    flag_fields: List[VField] = dc_field(default_factory=list)
    ambient: Optional[Ambient] = None
    checks: Dict[str, object] = dc_field(default_factory=dict)
    notes: List[str] = dc_field(default_factory=list)

    @property
    def field(self) -> GroundField:
        return self.slice.field


# =============================================
# AUXILIARES
# =============================================

def require_p(field: GroundField, p: int, name: str) -> None:
    if field.p != p:
        raise CharacteristicError(f"{name} necesita p = {p} (recibido p = {field.p})")


def functions(spec: ContactSpec, texts: Sequence[str]) -> List[GenFun]:
    return [GenFun(spec, parse_poly(spec.domain, text)) for text in texts]


def lowest_degree(spec: ContactSpec) -> int:
    """gr mínimo de una función generatriz con las alturas y grados de la especificación."""
    low = 0
    for name, w, cap in zip(spec.domain.names, spec.domain.degrees, spec.domain.caps):
        if w < 0:
            if cap is None:
                raise TruncationError(f"{name} tiene grado {w} y altura no acotada")
            low += w * cap
    return low - spec.shift


def contact_slice(spec: ContactSpec, lo: int, hi: int, label: str, t_free: bool = False) -> GradedSlice:
    """Componentes completas de k (o m, o po con ``t_free``) entre ``lo`` y ``hi``."""
    comps = {}
    for d in range(lo, hi + 1):
        basis = genfun_basis(spec, d, t_free=t_free)
        if basis:
            comps[d] = ElementSpace.span(basis, spec.field)
    return GradedSlice(spec.field, comps, hi, label)


def contact_negative(spec: ContactSpec, label: str = "") -> GradedSlice:
    return contact_slice(spec, lowest_degree(spec), -1, label or spec.label())


def equation_slice(spec: ContactSpec, texts: Sequence[str], hi: int, label: str) -> GradedSlice:
    """Subálgebra de k cortada por ecuaciones en Y-vectores, grado a grado."""
    equations = [parse_y_equation(spec.field, text) for text in texts]
    comps = {}
    for d in range(lowest_degree(spec), hi + 1):
        basis = solve_equation_subspace(spec, equations, d)
        if basis:
            comps[d] = ElementSpace.span(basis, spec.field)
    result = GradedSlice(spec.field, comps, hi, label)
    logger.info(f"{label}: {', '.join(f'{d}:{v}' for d, v in result.dims.items())}")
    return result


def without_monomial(g: GradedSlice, spec: ContactSpec, text: str) -> GradedSlice:
    """Deja en cada componente sólo los elementos sin el monomio ``text``."""
    key = next(iter(parse_poly(spec.domain, text).terms))

    def coefficient(x: AlgebraElement) -> Vector:
        c = x.coordinates().get(key)
        return {key: c} if c else {}

    comps = {}
    for d, space in g.components.items():
        basis = space.basis
        if any(coefficient(x) for x in basis):
            basis = linear_kernel(g.field, basis, coefficient)
            logger.debug(f"{g.label}: grado {d} sin la dirección {text}")
        comps[d] = ElementSpace.span(basis, g.field)
    return GradedSlice(g.field, comps, g.truncated_at, g.label, dict(g.metadata))


def generated_negative(gm1: Sequence[AlgebraElement], depth_bound: int, label: str) -> GradedSlice:
    """Parte negativa generada por g_-1."""
    field = gm1[0].field
    seed = GradedSlice(field, {-1: ElementSpace.span(gm1, field)}, -1, label)
    comps = generated_components(seed, max_degree=depth_bound)
    return GradedSlice(field, comps, -1, label)


def regraded(source: GradedSlice, degrees: Sequence[int], hi: int, label: str) -> GradedSlice:
    """Porción de ``source`` releída con otro vector de grados de las indeterminadas."""
    return slice_elements(source.elements(), degrees=degrees, hi=hi, label=label, field=source.field)


def linear_kernel(
    field: GroundField,
    candidates: Sequence[AlgebraElement],
    residual: Callable[[AlgebraElement], Vector],
) -> List[AlgebraElement]:
    """Combinaciones de ``candidates`` que anulan una condición lineal."""
    if not candidates:
        return []
    kernel = nullspace(field, [residual(x) for x in candidates])
    out = []
    for coefficients in kernel:
        combo: Vector = {}
        for c, x in zip(coefficients, candidates):
            if c:
                add_scaled(combo, x.coordinates(), c)
        out.append(candidates[0].rebuild(combo))
    return out


def _slice_from(components: Dict[int, List[AlgebraElement]], field: GroundField, hi: int, label: str) -> GradedSlice:
    comps = {d: ElementSpace.span(items, field) for d, items in components.items() if items}
    return GradedSlice(field, comps, hi, label)


# =============================================
# SERIES
# =============================================

def build_contact_series(
    field: GroundField, truncation: int, n: int = 1, m: int = 0, r: int = 0,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """k(2n+1|m; r) completo hasta la truncación."""
    spec = ContactSpec.contact(field, n, m, heights=heights, degrees=contact_regrading(n, m, r))
    label = f"k({2 * n + 1}|{m}; {r})" if r else spec.label()
    g = contact_slice(spec, lowest_degree(spec), truncation, label)
    flag_fields = [x.realize() for x in g.basis(-1)] if not r else []
    return Realization(label, g, flag_fields=flag_fields, ambient=ContactAmbient(spec))


def build_pericontact_series(
    field: GroundField, truncation: int, n: int = 2, r: int = 0,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """m(n; r) completo hasta la truncación."""
    spec = ContactSpec.pericontact(field, n, heights=heights, degrees=pericontact_regrading(n, r))
    label = f"m({n}; {r})" if r else spec.label()
    g = contact_slice(spec, lowest_degree(spec), truncation, label)
    return Realization(label, g, ambient=ContactAmbient(spec))


def build_po(
    field: GroundField, truncation: int, n: int = 1, m: int = 0,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
    quotient: bool = False,
) -> Realization:
    """po(2n|m): funciones independientes de t; h = po/centro con ``quotient``."""
    spec = ContactSpec.contact(field, n, m, heights=heights)
    g = contact_slice(spec, -2, truncation, f"po({2 * n}|{m})", t_free=True)
    if quotient:
        g = g.restricted(lo=-1)
        g.label = f"h({2 * n}|{m})"
    return Realization(g.label, g)


def build_h(
    field: GroundField, truncation: int, n: int = 1, m: int = 0,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    return build_po(field, truncation, n, m, heights=heights, config=config, quotient=True)


def build_svect(
    field: GroundField, truncation: int, n: int = 2,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """svect(n): núcleo de la divergencia en cada componente de vect(n)."""
    domain = DomainSpec.create(field, [f"u{i}" for i in range(1, n + 1)], heights=heights)
    ambient = VectAmbient(domain)
    comps = {}
    for d in range(-1, truncation + 1):
        comps[d] = linear_kernel(field, ambient.basis(d), lambda X: dict(X.divergence().terms))
    return Realization(f"svect({n})", _slice_from(comps, field, truncation, f"svect({n})"), ambient=ambient)


def build_le(
    field: GroundField, truncation: int, n: int = 2,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """le(n) = {Le_f}: f sin tau, grado de Le_f = deg f - 2."""
    spec = ContactSpec.pericontact(field, n, heights=heights)
    tau = spec.time_index
    comps: Dict[int, List[AlgebraElement]] = {}
    for d in range(-1, truncation + 1):
        items = []
        for r in monomials_of_degree(spec.domain, d + 2):
            if r[tau]:
                continue
            X = le_field(spec, SuperPoly.monomial(spec.domain, r))
            if not X.is_zero:
                items.append(X)
        comps[d] = items
    return Realization(f"le({n})", _slice_from(comps, field, truncation, f"le({n})"))


def build_b_ab(
    field: GroundField, truncation: int, n: int = 2, a: int = 1, b: int = 1,
    heights: Optional[Sequence[Optional[int]]] = None,
    config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """b_{a,b}(n) como filtro lineal dentro de m(n)."""
    spec = ContactSpec.pericontact(field, n, heights=heights)
    comps = {}
    for d in range(lowest_degree(spec), truncation + 1):
        comps[d] = linear_kernel(
            field, genfun_basis(spec, d), lambda g: dict(b_ab_residual(spec, a, b, g.f).terms)
        )
    label = f"b_{{{a},{b}}}({n})"
    return Realization(label, _slice_from(comps, field, truncation, label), ambient=ContactAmbient(spec))


# =============================================
# SUPERÁLGEBRAS EXCEPCIONALES (PARTES NEGATIVAS)
# =============================================

def _symbol_realization(alg: symbol.SymbolAlgebra, name: str) -> Realization:
    g = slice_elements(alg.basis(), label=name, field=alg.field)
    return Realization(name, g)


def _kas_one_xi(field: GroundField) -> Realization:
    spec = ContactSpec.contact(field, 0, 6, degrees=[2, 0, 1, 1, 2, 1, 1])
    g = contact_negative(spec, "kas(;1xi)")
    return Realization("kas(;1xi)", g, ambient=ContactAmbient(spec))


def kle_ck(field: GroundField) -> symbol.SymbolAlgebra:
    """kle(9|6; CK)_-: (mb(4|5; K)_-)⊗Λ(1) sin la parte z de grado -3."""
    return symbol.grassmann_extension(symbol.cross_product(field, contraction=True), [-3], "kle(9|6; CK)")


EXCEPTIONAL_NEGATIVES: Dict[str, Callable[[GroundField], Realization]] = {
    "vle43-1": lambda F: _symbol_realization(symbol.sl2_lambda(F, 2, {0, 1}), "vle(4|3; 1)"),
    "vle43-K": lambda F: _symbol_realization(symbol.cross_product(F), "vle(4|3; K)"),
    "kle96": lambda F: _symbol_realization(symbol.heisenberg(F, 4, 6), "kle(9|6)"),
    "kle96-2": lambda F: _symbol_realization(symbol.sl2_lambda(F, 3, {0, 1}), "kle(9|6; 2)"),
    "kle96-K": lambda F: _symbol_realization(symbol.wedge_pentad(F), "kle(9|6; K)"),
    "kas": lambda F: _symbol_realization(symbol.heisenberg(F, 0, 6), "kas"),
    "kas-1xi": _kas_one_xi,
    "mb45": lambda F: _symbol_realization(symbol.anti_heisenberg(F, 4), "mb(4|5)"),
    "mb45-1": lambda F: _symbol_realization(symbol.sl2_lambda(F, 2, {0}), "mb(4|5; 1)"),
    "mb45-K": lambda F: _symbol_realization(symbol.cross_product(F, contraction=True), "mb(4|5; K)"),
    "kle96-CK": lambda F: _symbol_realization(kle_ck(F), "kle(9|6; CK)"),
}


def build_exceptional(field: GroundField, truncation: int, key: str, config=None) -> Realization:
    """Parte negativa de una W-graduación excepcional (tablas de crecimiento)."""
    try:
        builder = EXCEPTIONAL_NEGATIVES[key]
    except KeyError as e:
        raise DomainMismatchError(f"Graduación excepcional desconocida: {key}") from e
    return builder(field)


def build_desuperized(field: GroundField, truncation: int, key: str, config=None) -> Realization:
    """F(g)_-: la misma parte negativa sobre GF(2) con todas las paridades pares."""
    require_p(field, 2, f"F({key})")
    inner = build_exceptional(field, truncation, key)
    g = desuperize(inner.slice)
    return Realization(f"F({inner.name})", g)


def build_depth_one_superization(field: GroundField, truncation: int, d: int = 7, config=None) -> Realization:
    """s(F g) para g de profundidad 1: g_-1 = Span(∂_i) con alturas 2, impar, y sus cuadrados en grado -2."""
    require_p(field, 2, "s(F g)")
    domain = DomainSpec.create(field, [f"u{i}" for i in range(1, d + 1)], heights=[2] * d)
    g = GradedSlice(field, {-1: ElementSpace.span(VectAmbient(domain).basis(-1), field)}, -1, f"vect({d})_-1")
    s = superize(g)
    s.label = f"s(F g), dim g_-1 = {d}"
    return Realization(s.label, s)


def build_mb38_superization(field: GroundField, truncation: int, config=None) -> Realization:
    """s(F mb(3|8)) por gr3: g_-3 impar con cuadrados centrales en grado -6."""
    require_p(field, 2, "s(F mb(3|8))")
    alg = symbol.cross_product(field, contraction=True, name="mb(3|8)")
    symbol.add_central_squares(alg, ["w1", "w2"])
    real = _symbol_realization(alg, "s(F mb(3|8))")
    real.notes.append("paridad = grado mod 2: g_-3 impar")
    return real


def build_ksle_superization(field: GroundField, truncation: int, config=None) -> Realization:
    """s(F ksle(9|11)) por gr_CK: F kle(9|6; CK) con paridad = grado mod 2 y cuadrados centrales de w1, w2."""
    require_p(field, 2, "s(F ksle(9|11))")
    alg = symbol.with_degree_parity(kle_ck(field), "ksle(9|11)")
    symbol.add_central_squares(alg, ["w1", "w2"])
    real = _symbol_realization(alg, "s(F ksle(9|11))")
    real.notes.append("paridad = grado mod 2: g_-3 impar")
    return real


# =============================================
# MELIKYAN (p = 5)
# =============================================

MELIKYAN_EQUATIONS = (
    "Yp1^2 = 0",
    "Yp1*Yp2 = 0",
    "Yp2^2 - Yp1*Yq2 = 0",
    "Yq2^2 - 2*Yq1*Yp2 = 0",
    "2*Yp1*Yq1 - Yp2*Yq2 - Y1 = 0",
)

# orden t, p1, p2, q1, q2
MELIKYAN_GRADINGS = {
    "standard": (2, 1, 1, 1, 1),
    "3me": (3, 3, 2, 0, 1),
    "p2": (1, 2, 1, -1, 0),
}

MELIKYAN_HEIGHTS = (None, None, 1, 1, 1)

MELIKYAN_F = {
    "F_p1": "t*p1 + 2*p1*p2*q2 - p2^(3)",
    "F_q1": "t*q1 + 2*q2^(3) - p2*q1*q2 - 2*p1*q1^(2)",
    "G": "-p2*q1 + q2^(2)",
}


def melikyan_spec(field: GroundField, grading: str = "standard", heights=None) -> ContactSpec:
    try:
        degrees = MELIKYAN_GRADINGS[grading]
    except KeyError as e:
        raise DomainMismatchError(f"Graduación de me desconocida: {grading}") from e
    return ContactSpec.contact(field, 2, heights=heights or MELIKYAN_HEIGHTS, degrees=degrees)


def build_melikyan(
    field: GroundField, truncation: int, grading: str = "standard",
    heights=None, config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """me dentro de k(5) como soluciones del sistema en Y-vectores."""
    require_p(field, 5, "me")
    spec = melikyan_spec(field, grading, heights)
    label = {"standard": "me", "3me": "3me", "p2": "me(;p2)"}[grading]
    g = equation_slice(spec, MELIKYAN_EQUATIONS, truncation, label)
    return Realization(label, g, ambient=ContactAmbient(spec))


def adjoint_chain(spec: ContactSpec, start: str, by: str, length: int) -> List[GenFun]:
    """f, ad_g f, ad_g² f, ... con f y g dados como texto."""
    g = GenFun(spec, parse_poly(spec.domain, by))
    current = GenFun(spec, parse_poly(spec.domain, start))
    chain = [current]
    for _ in range(length):
        current = g.bracket(current)
        chain.append(current)
    return chain


# =============================================
# FRANK Y ERMOLAEV (p = 3)
# =============================================

FRANK_G1 = ("p^(2)*q + p*t", "p*q^(2) - q*t")


def frank_spec(field: GroundField, n: int = 1) -> ContactSpec:
    return ContactSpec.contact(field, 1, heights=[n, 1, 1], names=["t", "p", "q"])


def build_frank(
    field: GroundField, truncation: int, n: int = 1, config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """fr(n): prolongación parcial de k(3;(n,1,1))_<=0 con g~_1 = FRANK_G1."""
    require_p(field, 3, "fr")
    spec = frank_spec(field, n)
    seed = ProlongSeed(contact_negative(spec), genfun_basis(spec, 0), functions(spec, FRANK_G1))
    g = prolong(seed, ContactAmbient(spec), truncation, label=f"fr({n})")
    return Realization(f"fr({n})", g, ambient=ContactAmbient(spec))


def build_tilde_frank(field: GroundField, truncation: int, config=None) -> Realization:
    """fr(1) regraduada con deg p = 0, deg q = deg t = 1."""
    source = build_frank(field, 5, 1, config).slice
    g = regraded(source, (1, 0, 1), truncation, "tilde-fr")
    return Realization("tilde-fr", g)


class ErElement(AlgebraElement):
    """X + f·v en er: X ∈ vect(2), f ∈ O(2) y v de grado -1.

    [X, fv] = (X(f) + f Div X)v, [fv, gv] = (f∂_2g - g∂_2f)∂_1 + (g∂_1f - f∂_1g)∂_2.
    """

    __slots__ = ("domain", "vector", "density")

    def __init__(self, domain: DomainSpec, vector: VField, density: SuperPoly):
        self.domain = domain
        self.vector = vector
        self.density = density

    @property
    def field(self) -> GroundField:
        return self.domain.field

    def coordinates(self) -> Vector:
        out: Vector = {("x",) + key: c for key, c in self.vector.coordinates().items()}
        for r, c in self.density.terms.items():
            out[("v", r)] = c
        return out

    def rebuild(self, coords: Vector) -> "ErElement":
        vector: Vector = {}
        density = {}
        for key, c in coords.items():
            if key[0] == "x":
                vector[key[1:]] = c
            else:
                density[key[1]] = c
        return ErElement(self.domain, VField.zero(self.domain).rebuild(vector), SuperPoly(self.domain, density))

    @property
    def parity(self) -> Optional[int]:
        return 0

    def degree(self) -> Optional[int]:
        values = set()
        if not self.vector.is_zero:
            values.add(self.vector.degree())
        if not self.density.is_zero:
            d = self.density.degree()
            values.add(None if d is None else d - 1)
        if len(values) > 1 or None in values:
            return None
        return values.pop() if values else 0

    def _density_bracket(self, f: SuperPoly, g: SuperPoly) -> VField:
        return VField(self.domain, {
            0: f * partial(1, g) - g * partial(1, f),
            1: g * partial(0, f) - f * partial(0, g),
        })

    def _act(self, X: VField, f: SuperPoly) -> SuperPoly:
        return X.apply(f) + f * X.divergence()

    def bracket(self, other: AlgebraElement) -> "ErElement":
        if not isinstance(other, ErElement) or other.domain != self.domain:
            raise DomainMismatchError("Corchete de er con un elemento de otro tipo")
        X, f = self.vector, self.density
        Y, g = other.vector, other.density
        vector = X.bracket(Y) + self._density_bracket(f, g)
        density = self._act(X, g) - self._act(Y, f)
        return ErElement(self.domain, vector, density)

    def __str__(self) -> str:
        parts = []
        if not self.vector.is_zero:
            parts.append(str(self.vector))
        if not self.density.is_zero:
            parts.append(f"({self.density})*v")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"ErElement({self})"


@dataclass(frozen=True)
class ErAmbient:
    """vect(2) ⊕ O(2)·v con v de grado -1."""
    domain: DomainSpec

    def basis(self, degree: int) -> List[ErElement]:
        zero_f = SuperPoly.zero(self.domain)
        zero_x = VField.zero(self.domain)
        out = [ErElement(self.domain, X, zero_f) for X in VectAmbient(self.domain).basis(degree)]
        out += [
            ErElement(self.domain, zero_x, SuperPoly.monomial(self.domain, r))
            for r in monomials_of_degree(self.domain, degree + 1)
        ]
        return out


def build_ermolaev(
    field: GroundField, truncation: int, heights=(1, 1), config: Optional[WorkbenchConfig] = None,
) -> Realization:
    """er: prolongación de er_-1 = Span(∂_1, ∂_2; v) dentro de vect(2) ⊕ O(2)·v."""
    require_p(field, 3, "er")
    domain = DomainSpec.create(field, ["u1", "u2"], heights=heights)
    zero_f = SuperPoly.zero(domain)
    gm1 = [
        ErElement(domain, VField.d(domain, 0), zero_f),
        ErElement(domain, VField.d(domain, 1), zero_f),
        ErElement(domain, VField.zero(domain), SuperPoly.one(domain)),
    ]
    negative = GradedSlice(field, {-1: ElementSpace.span(gm1, field)}, -1, "er")
    ambient = ErAmbient(domain)
    g = prolong(ProlongSeed(negative, None), ambient, truncation, label="er")
    return Realization("er", g, ambient=ambient)


# =============================================
# SKRYABIN (p = 3)
# =============================================

DY10_WEIGHTS = (1, 1, 1, 2, 2, 2, 3, 4, 4, 4)
DY10_HEIGHTS = (1, 1, 1, 1, 1, 1, 1, None, None, None)
DY10_GENERATORS = (
    "2*d1 + 2*u2 d4 + 2*u3 d5 + 2*u2^(2)*u3 d9 + (u2*u3 + 2*u6) d7 + (2*u3*u4 + u7) d8",
    "2*d2 + u5 d7 + u7 d9",
    "2*d3 + u2 d6 + 2*u4 d7 + u2*u4 d9 + (u2*u5 + u7) d10",
)
DY11_DEGREES = (0, 1, 1, 1, 1, 2, 2, 2, 3, 3)
DY9_DEGREES = (0, 0, 1, 0, 1, 1, 1, 1, 1, 2)

# s_1, ..., s_19 en k(9), orden t, p1..p4, q1..q4
DY9_ZERO = (
    "q2^(2)",
    "p4*q2",
    "2*p1*q2 + 2*p4^(2)",
    "2*p3*q2 + p4*q3",
    "p1*q3 + 2*p3*p4",
    "q2*q3",
    "p3^(2) - p1*q4 - p2*p4",
    "p1*q1 - p2*q2 + p4*q4",
    "p1*q1 + p3*q3 - p4*q4",
    "q1*q2",
    "2*q3^(2) + q2*q4",
    "p4*q1 + q2*q4",
    "p3*q1 + 2*q3*q4",
    "p2*q3 + p3*q4",
    "q1*q3",
    "2*p2*q1 + q4^(2)",
    "2*q1*q4",
    "2*q1^(2)",
    "t",
)
# grados de t, p1..p4, q1..q4 heredados de dy(10)
DY9_H_DEGREES = (4, 0, 0, 1, 2, 4, 4, 3, 2)
SDY9_ZERO_INDICES = (7, 5, 14, 3, 8, 16)

MY6_WEIGHTS = (1, 1, 1, 2, 2, 2)
MY6_GENERATORS = ("d1 - u2 d4 + u3 d5", "d2 - u3 d6", "d3")

MY7_ZERO = (
    "p1*q3 + q1*p2",
    "p1*q1 + p2*q2 + p3*q3",
    "t - p1*q1 + p2*q2",
    "p2*q2 - p3*q3",
    "p1^(2) - p2*p3",
    "q2*q3 - q1^(2)",
    "p1*q2",
    "p3*q1",
    "p1*p3",
    "q1*q2",
    "-q2*p3",
    "p3^(2)",
    "-q2^(2)",
)
# orden t, p1, p2, p3, q1, q2, q3
MY7_TO_MY6_DEGREES = (2, 1, 0, 2, 1, 2, 0)

BY7_WEIGHTS = (1, 1, 1, 2, 2, 2, 3)
BY7_GENERATORS = (
    "d1 + u2 d6 + u3 d5 - u4 d7",
    "d2 - u3 d4 - u1 d6 - u5 d7",
    "d3 - u6 d7",
)
BY8_DEGREES = (0, 1, 1, 2, 1, 1, 2)


def _vector_algebra(
    field: GroundField, name: str, weights: Sequence[int], heights: Sequence[Optional[int]],
    generators: Sequence[str], truncation: int, config: Optional[WorkbenchConfig],
) -> Realization:
    """Prolongación de la parte negativa generada por campos de grado -1."""
    names = [f"u{i}" for i in range(1, len(weights) + 1)]
    domain = DomainSpec.create(field, names, heights=heights, degrees=weights)
    gens = parse_fields(domain, generators)
    negative = generated_negative(gens, max(weights), name)
    ambient = VectAmbient(domain)
    g = prolong(ProlongSeed(negative, None), ambient, truncation, label=name)
    return Realization(name, g, flag_fields=gens, ambient=ambient)


def build_dy10(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    require_p(field, 3, "dy(10)")
    return _vector_algebra(field, "dy(10)", DY10_WEIGHTS, heights or DY10_HEIGHTS, DY10_GENERATORS, truncation, config)


def divergence_free(g: GradedSlice, label: str) -> GradedSlice:
    """Cada componente cortada con el núcleo de la divergencia."""
    comps = {}
    for d, space in g.components.items():
        kernel = linear_kernel(g.field, space.basis, lambda X: dict(X.divergence().terms))
        if len(kernel) < space.dim:
            logger.debug(f"{label}: grado {d} pierde {space.dim - len(kernel)} direcciones con divergencia")
        comps[d] = ElementSpace.span(kernel, g.field)
    return GradedSlice(g.field, comps, g.truncated_at, label, dict(g.metadata))


def build_sdy10(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    """s-dy(10): campos de dy(10) sin divergencia; s-dy(10)_- = dy(10)_- y s-dy(10)_0 = sl(3)."""
    real = build_dy10(field, truncation, heights, config)
    g = divergence_free(real.slice, "s-dy(10)")
    return Realization("s-dy(10)", g, flag_fields=real.flag_fields, ambient=real.ambient)


def build_dy11(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    """dy(11): regraduación de dy(10) con DY11_DEGREES; completa hasta grado 0.

    dy(11)_0 sale de dy(10)_-1 ... dy(10)_2; para la parte negativa basta dy(10)_<=0.
    """
    source = build_dy10(field, 2 if truncation >= 0 else 0, heights, config).slice
    g = regraded(source, DY11_DEGREES, min(truncation, 0), "dy(11)")
    return Realization("dy(11)", g, notes=["componentes completas hasta grado 0 (dy(10) hasta grado 2)"])


def dy9_spec(field: GroundField) -> ContactSpec:
    return ContactSpec.contact(field, 4, heights=[None] + [1] * 8)


def build_dy9(field: GroundField, truncation: int, config=None) -> Realization:
    """dy(9) en k(9): parte negativa de contacto y dy(9)_0 = Span(s_1, ..., s_19)."""
    require_p(field, 3, "dy(9)")
    spec = dy9_spec(field)
    zero = functions(spec, DY9_ZERO)
    g = prolong(ProlongSeed(contact_negative(spec, "dy(9)"), zero), ContactAmbient(spec), truncation, label="dy(9)")
    h_part = [x.with_degrees(DY9_H_DEGREES) for x in zero]
    h = slice_elements(h_part, label="h", field=field)
    checks = {"h_dims": [h.sdim(d).total for d in range(-2, 5)]}
    return Realization("dy(9)", g, ambient=ContactAmbient(spec), checks=checks)


def build_sdy9(field: GroundField, truncation: int, config=None) -> Realization:
    """s-dy(9): k(9)_- con s-dy(9)_0 = Span(s_7; s_5, s_14; s_3, s_8, s_16)."""
    require_p(field, 3, "s-dy(9)")
    spec = dy9_spec(field)
    zero = functions(spec, [DY9_ZERO[i - 1] for i in SDY9_ZERO_INDICES])
    seed = ProlongSeed(contact_negative(spec, "s-dy(9)"), zero)
    g = prolong(seed, ContactAmbient(spec), max(truncation, 0), label="s-dy(9)")
    return Realization("s-dy(9)", g, ambient=ContactAmbient(spec))


def build_my6(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    require_p(field, 3, "my(6)")
    return _vector_algebra(field, "my(6)", MY6_WEIGHTS, heights or (1, 1, 1, None, None, None),
                           MY6_GENERATORS, truncation, config)


def build_my7(field: GroundField, truncation: int, config=None) -> Realization:
    """my(7) en k(7): parte negativa de contacto y los 13 generadores de my(7)_0."""
    require_p(field, 3, "my(7)")
    spec = ContactSpec.contact(field, 3, heights=[None] + [1] * 6)
    seed = ProlongSeed(contact_negative(spec, "my(7)"), functions(spec, MY7_ZERO))
    g = prolong(seed, ContactAmbient(spec), truncation, label="my(7)")
    return Realization("my(7)", g, ambient=ContactAmbient(spec))


def build_by7(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    require_p(field, 3, "by(7)")
    return _vector_algebra(field, "by(7)", BY7_WEIGHTS, heights or (1, 1, 1, None, None, None, None),
                           BY7_GENERATORS, truncation, config)


def build_by8(field: GroundField, truncation: int, heights=None, config=None) -> Realization:
    """by(8): regraduación de by(7)_<=2; completa hasta grado 0."""
    source = build_by7(field, 2, heights, config).slice
    g = regraded(source, BY8_DEGREES, min(truncation, 0), "by(8)")
    return Realization("by(8)", g, notes=["componentes completas hasta grado 0 (by(7) hasta grado 2)"])


# =============================================
# SUPERÁLGEBRAS DE MELIKYAN Y DE BOUARROUDJ (p = 3)
# =============================================

ME33_NAMES = ("z", "p", "q", "xi", "eta", "zeta")
ME33_EQUATIONS = (
    "Yp^2 + Yzeta*Yeta = 0",
    "Yq*Yp - Yeta*Yxi = 0",
    "Yq^2 - Yzeta*Yxi = 0",
    "Yq*Yeta + Yp*Yzeta = 0",
    "Yq*Yzeta + Yp*Yxi = 0",
    "Yp*Yeta = 0",
)
ME33_G = "q^(2)*eta + xi*zeta*eta + p*q*zeta + p^(2)*xi"
# K_{t^(2)theta}: resuelve el sistema pero no está en Me; no cambia las componentes positivas
ME33_OUTSIDE = "p*eta"
# orden z, p, q, xi, eta, zeta
ME_GRADINGS = {
    "Me(3|3)": (2, 1, 1, 1, 1, 1),
    "Me(3|4)": (2, 0, 2, 3, -1, 1),
    "Me(4|3)": (4, 3, 1, 0, 4, 2),
}


def me_super_spec(field: GroundField, grading: str = "Me(3|3)") -> ContactSpec:
    try:
        degrees = ME_GRADINGS[grading]
    except KeyError as e:
        raise DomainMismatchError(f"Graduación de Me desconocida: {grading}") from e
    return ContactSpec.contact(field, 1, 3, heights=[None, 1, 1], names=ME33_NAMES, degrees=degrees)


def build_me_super(field: GroundField, truncation: int, grading: str = "Me(3|3)", config=None) -> Realization:
    """Me(3|3) y sus regraduaciones: soluciones de ME33_EQUATIONS en k(3|3) salvo la dirección ME33_OUTSIDE."""
    require_p(field, 3, grading)
    spec = me_super_spec(field, grading)
    g = without_monomial(equation_slice(spec, ME33_EQUATIONS, truncation, grading), spec, ME33_OUTSIDE)
    real = Realization(grading, g, ambient=ContactAmbient(spec))
    if grading == "Me(3|3)" and truncation >= 1:
        equations = [parse_y_equation(field, text) for text in ME33_EQUATIONS]
        unique = solve_equation_subspace(spec, equations, 1, t_free=True)
        real.checks["t_free_degree3"] = len(unique)
    return real


BJ_NAMES = ("t", "p", "q", "xi", "eta")
BJ_V = ("t*p", "t*q", "t*xi", "t*eta")
BJ_W_ETA = ("p^(2)*q - p*xi*eta", "p*q^(2) + q*xi*eta", "p^(2)*eta", "p*q*eta", "q^(2)*eta")
BJ_W_XI = ("p^(2)*q + p*xi*eta", "p*q^(2) - q*xi*eta", "p^(2)*xi", "p*q*xi", "q^(2)*xi")
BJ33_DEGREES = (2, 1, 1, 0, 2)
TILDE_BJ_DEGREES = (2, 1, 1, 2, 0)

# k(1|7) con u = theta; orden t, v1, v2, v3, w1, w2, w3, u
BJ17_NAMES = ("t", "v1", "v2", "v3", "w1", "w2", "w3", "u")
BJ17_ZERO = (
    "t",
    "u*v1 + v3*w2",
    "u*w1 + v2*w3",
    "2*u*v2 + v3*w1",
    "v1*w1 + v2*w2 + 2*v3*w3",
    "u*w2 + 2*v1*w3",
    "u*v3 + v1*v2",
    "u*w3 + 2*w1*w2",
)
BJ45_DEGREES = (2, 2, 2, 3, 0, 0, -1, 1)


def bj_spec(field: GroundField) -> ContactSpec:
    return ContactSpec.contact(field, 1, 2, heights=[None, 1, 1], names=BJ_NAMES)


def build_bj(field: GroundField, truncation: int, config=None) -> Realization:
    """Bj: prolongación parcial de k(3|2)_<=0 con g~_1 = V ⊕ W_eta."""
    require_p(field, 3, "Bj")
    spec = bj_spec(field)
    seed = ProlongSeed(contact_negative(spec, "Bj"), genfun_basis(spec, 0), functions(spec, BJ_V + BJ_W_ETA))
    g = prolong(seed, ContactAmbient(spec), truncation, label="Bj")
    return Realization("Bj", g, ambient=ContactAmbient(spec))


def build_bj_regraded(field: GroundField, truncation: int, tilde: bool = False, config=None) -> Realization:
    """Bj(3|3) (deg xi = 0) o tilde-Bj (deg eta = 0); completas hasta grado 1."""
    source = build_bj(field, 3, config).slice
    name = "tilde-Bj" if tilde else "Bj(3|3)"
    g = regraded(source, TILDE_BJ_DEGREES if tilde else BJ33_DEGREES, min(truncation, 1), name)
    # g_-2 es 1|1, pero Bj(3|3) y tilde-Bj preservan la distribución de contacto de k(3;N|2;1)
    g.metadata["contact_provenance"] = "k(3;N|2;1)"
    return Realization(name, g, notes=["Bj hasta grado 3: componentes completas hasta grado 1"])


def build_rem_bj(field: GroundField, truncation: int, xi: bool = False, config=None) -> Realization:
    """Prolongación parcial de k(3|2)_<=0 con g~_1 = W_eta (o W_xi), sin V."""
    require_p(field, 3, "remBj")
    spec = bj_spec(field)
    g1 = functions(spec, BJ_W_XI if xi else BJ_W_ETA)
    name = "remBj(W_xi)" if xi else "remBj(W_eta)"
    # [g_-1, W] no genera t: la prolongación parcial no es sobreyectiva en g_0
    seed = ProlongSeed(contact_negative(spec, name), genfun_basis(spec, 0), g1, allow_non_surjective=True)
    g = prolong(seed, ContactAmbient(spec), truncation, label=name)
    return Realization(name, g, ambient=ContactAmbient(spec))


def bj17_spec(field: GroundField) -> ContactSpec:
    return ContactSpec.contact(field, 0, 7, heights=[None], names=BJ17_NAMES)


def build_bj17(field: GroundField, truncation: int, config=None) -> Realization:
    """Bj(1|7): prolongación de hei(0|7) ⊕ (psl(3) ⊕ Span(t)) en k(1|7)."""
    require_p(field, 3, "Bj(1|7)")
    spec = bj17_spec(field)
    seed = ProlongSeed(contact_negative(spec, "Bj(1|7)"), functions(spec, BJ17_ZERO))
    g = prolong(seed, ContactAmbient(spec), truncation, label="Bj(1|7)")
    return Realization("Bj(1|7)", g, ambient=ContactAmbient(spec))


def build_bj45(field: GroundField, truncation: int, config=None) -> Realization:
    """Bj(4|5): regraduación de Bj(1|7)_<=4; completa hasta grado 0."""
    source = build_bj17(field, 4, config).slice
    g = regraded(source, BJ45_DEGREES, min(truncation, 0), "Bj(4|5)")
    return Realization("Bj(4|5)", g, notes=["Bj(1|7) hasta grado 4: componentes completas hasta grado 0"])


# =============================================
# QUEERIFICACIÓN (p = 2)
# =============================================

def build_queer(field: GroundField, truncation: int, n: int = 1, height: int = 1, config=None) -> Realization:
    """q(vect(n;N)) con N = (height, ..., height); q~ si vect(n;N) no es restringida."""
    require_p(field, 2, "q(g)")
    domain = DomainSpec.create(field, [f"u{i}" for i in range(1, n + 1)], heights=[height] * n)
    ambient = VectAmbient(domain)
    top = n * (2 ** height - 1) - 1
    elements = [X for d in range(-1, top + 1) for X in ambient.basis(d)]
    generalized = height > 1
    label = f"{'q~' if generalized else 'q'}(vect({n};{height}))"
    g = queerify(elements, generalized=generalized, label=label)
    return Realization(label, g)
