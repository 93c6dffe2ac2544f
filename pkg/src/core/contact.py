"""Realizaciones por funciones generatrices: K_f, H_f, M_f, Le_f y sus corchetes.

Incluye los Y-vectores (operadores que conmutan con la parte negativa), el
resolutor de subespacios definidos por ecuaciones en Y-vectores y el filtro
b_{a,b}(n).
"""

import logging
from dataclasses import dataclass, field as dc_field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .coeff import Coefficient, GroundField
from .fields import OneForm, VField, pairing
from .linalg import AlgebraElement, ElementSpace, Vector, nullspace
from .models import (
    CharacteristicError, ContactKind, DomainMismatchError, ExcludedParameterError,
    ParityError, WorkbenchError,
)
from .superfunc import DomainSpec, SuperPoly, monomials_of_degree, partial

logger = logging.getLogger(__name__)


# =============================================
# ESPECIFICACIÓN
# =============================================

@dataclass(frozen=True)
class ContactSpec:
    """Coordenadas de k(2n+1|m) o de m(n).

    CONTACT: pares t, p_1..p_n, q_1..q_n; impares xi_1..xi_k, eta_1..eta_k y theta opcional.
    PERICONTACT: pares q_1..q_n; impares tau, xi_1..xi_n.
    """
    kind: ContactKind
    domain: DomainSpec
    n: int
    k: int = 0
    theta: bool = False

    @classmethod
    def contact(
        cls,
        field: GroundField,
        n: int,
        m: int = 0,
        heights: Optional[Sequence[Optional[int]]] = None,
        names: Optional[Sequence[str]] = None,
        degrees: Optional[Sequence[int]] = None,
    ) -> "ContactSpec":
        k, theta = divmod(m, 2)
        default = (
            ["t"] + [f"p{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)]
            + [f"xi{i}" for i in range(1, k + 1)] + [f"eta{i}" for i in range(1, k + 1)]
            + (["theta"] if theta else [])
        )
        names = list(names) if names else default
        if len(names) != len(default):
            raise DomainMismatchError(f"Se esperaban {len(default)} nombres para k({2 * n + 1}|{m})")
        evens, odds = names[:2 * n + 1], names[2 * n + 1:]
        if degrees is None:
            degrees = [2] + [1] * (len(names) - 1)
        domain = DomainSpec.create(field, evens, odds, heights=heights, degrees=degrees)
        return cls(ContactKind.CONTACT, domain, n, k, bool(theta))

    @classmethod
    def pericontact(
        cls,
        field: GroundField,
        n: int,
        heights: Optional[Sequence[Optional[int]]] = None,
        names: Optional[Sequence[str]] = None,
        degrees: Optional[Sequence[int]] = None,
    ) -> "ContactSpec":
        default = [f"q{i}" for i in range(1, n + 1)] + ["tau"] + [f"xi{i}" for i in range(1, n + 1)]
        names = list(names) if names else default
        if len(names) != len(default):
            raise DomainMismatchError(f"Se esperaban {len(default)} nombres para m({n})")
        if degrees is None:
            degrees = [1] * n + [2] + [1] * n
        domain = DomainSpec.create(field, names[:n], names[n:], heights=heights, degrees=degrees)
        return cls(ContactKind.PERICONTACT, domain, n)

    @property
    def field(self) -> GroundField:
        return self.domain.field

    @property
    def is_contact(self) -> bool:
        return self.kind == ContactKind.CONTACT

    @property
    def time_index(self) -> int:
        """Índice de t (contacto) o de tau (pericontacto)."""
        return 0 if self.is_contact else self.n

    @property
    def p_indices(self) -> List[int]:
        return list(range(1, self.n + 1)) if self.is_contact else []

    @property
    def q_indices(self) -> List[int]:
        if self.is_contact:
            return list(range(self.n + 1, 2 * self.n + 1))
        return list(range(self.n))

    @property
    def xi_indices(self) -> List[int]:
        if self.is_contact:
            start = 2 * self.n + 1
            return list(range(start, start + self.k))
        return list(range(self.n + 1, 2 * self.n + 1))

    @property
    def eta_indices(self) -> List[int]:
        start = 2 * self.n + 1 + self.k
        return list(range(start, start + self.k)) if self.is_contact else []

    @property
    def theta_index(self) -> Optional[int]:
        if self.is_contact and self.theta:
            return self.domain.size - 1
        return None

    @property
    def shift(self) -> int:
        """deg t (o deg tau): gr f = deg f - shift."""
        return self.domain.degrees[self.time_index]

    def with_degrees(self, degrees: Sequence[int]) -> "ContactSpec":
        return replace(self, domain=self.domain.with_degrees(degrees))

    def var(self, name) -> SuperPoly:
        return SuperPoly.var(self.domain, name)

    def label(self) -> str:
        if self.is_contact:
            return f"k({2 * self.n + 1}|{2 * self.k + int(self.theta)})"
        return f"m({self.n})"


def contact_regrading(n: int, m: int, r: int) -> List[int]:
    """Grados de k(2n+1|m; r): deg t = deg xi_i = 2 y deg eta_i = 0 para i <= r."""
    k = m // 2
    if not 0 <= r <= k:
        raise ExcludedParameterError(f"k({2 * n + 1}|{m}; {r}): r debe estar entre 0 y {k}")
    if n == 0 and m == 2 * k and r == k - 1 and r > 0:
        raise ExcludedParameterError(f"k(1|{m}; {r}) no corresponde a ninguna graduación de Weisfeiler")
    xi = [2 if i < r else 1 for i in range(k)]
    eta = [0 if i < r else 1 for i in range(k)]
    return [2] + [1] * (2 * n) + xi + eta + ([1] if m % 2 else [])


def contact_full_regrading(m: int) -> List[int]:
    """k(1|2m; m): deg t = deg xi_i = 1, deg eta_i = 0."""
    return [1] + [1] * m + [0] * m


def pericontact_regrading(n: int, r: int) -> List[int]:
    """Grados de m(n; r) (0 <= r < n - 1) y de m(n; n)."""
    if r == n:
        return [1] * n + [1] + [0] * n
    if not (r == 0 or 0 < r < n - 1):
        raise ExcludedParameterError(f"m({n}; {r}) no corresponde a ninguna graduación de Weisfeiler")
    q = [2 if i < r else 1 for i in range(n)]
    xi = [0 if i < r else 1 for i in range(n)]
    return q + [2] + xi


# =============================================
# OPERADORES AUXILIARES
# =============================================

def euler(spec: ContactSpec, f: SuperPoly) -> SuperPoly:
    """E(f) con E = Σ y_i ∂_{y_i} sobre todas las coordenadas salvo t (o tau)."""
    field = spec.field
    skip = spec.time_index
    return SuperPoly(spec.domain, {
        r: c * field(sum(e for i, e in enumerate(r) if i != skip)) for r, c in f.terms.items()
    })


def two_minus_euler(spec: ContactSpec, f: SuperPoly) -> SuperPoly:
    return f.scale(2) - euler(spec, f)


def parity_operator(f: SuperPoly) -> SuperPoly:
    """Par(f) = (-1)^{p(f)} f."""
    even, odd = f.parity_parts()
    return even - odd


def _sign_by_parity(f: SuperPoly, g_builder) -> SuperPoly:
    """Suma sobre las partes homogéneas de f de g_builder(parte, paridad)."""
    out = SuperPoly.zero(f.domain)
    for parity, part in enumerate(f.parity_parts()):
        if not part.is_zero:
            out = out + g_builder(part, parity)
    return out


def euler_field(spec: ContactSpec) -> VField:
    return VField(spec.domain, {
        i: SuperPoly.var(spec.domain, i) for i in range(spec.domain.size) if i != spec.time_index
    })


# =============================================
# REALIZACIONES
# =============================================

def hamiltonian_field(spec: ContactSpec, f: SuperPoly) -> VField:
    """H_f = Σ(f_p ∂_q - f_q ∂_p) - (-1)^{p(f)}(f_xi ∂_eta + f_eta ∂_xi + f_theta ∂_theta)."""
    if not spec.is_contact:
        raise DomainMismatchError("H_f sólo está definido para especificaciones de contacto")

    def build(part: SuperPoly, parity: int) -> VField:
        comps: Dict[int, SuperPoly] = {}
        for pi, qi in zip(spec.p_indices, spec.q_indices):
            comps[qi] = comps.get(qi, SuperPoly.zero(spec.domain)) + partial(pi, part)
            comps[pi] = comps.get(pi, SuperPoly.zero(spec.domain)) - partial(qi, part)
        sign = -spec.field.sign(parity)
        pairs = list(zip(spec.xi_indices, spec.eta_indices)) + list(zip(spec.eta_indices, spec.xi_indices))
        if spec.theta_index is not None:
            pairs.append((spec.theta_index, spec.theta_index))
        for a, b in pairs:
            comps[b] = comps.get(b, SuperPoly.zero(spec.domain)) + partial(a, part).scale(sign)
        return VField(spec.domain, comps)

    total = VField.zero(spec.domain)
    for parity, part in enumerate(f.parity_parts()):
        if not part.is_zero:
            total = total + build(part, parity)
    return total


def contact_field(spec: ContactSpec, f: SuperPoly) -> VField:
    """K_f = (2-E)(f)∂_t - H_f + ∂_t(f)·E."""
    t = spec.time_index
    X = VField.d(spec.domain, t, two_minus_euler(spec, f)) - hamiltonian_field(spec, f)
    ft = partial(t, f)
    if not ft.is_zero:
        X = X + euler_field(spec).multiply_left(ft)
    return X


def le_field(spec: ContactSpec, f: SuperPoly) -> VField:
    """Le_f = Σ(∂f/∂q_i ∂_{xi_i} + (-1)^{p(f)} ∂f/∂xi_i ∂_{q_i})."""
    if spec.is_contact:
        raise DomainMismatchError("Le_f sólo está definido para especificaciones pericontacto")

    def build(part: SuperPoly, parity: int) -> VField:
        comps: Dict[int, SuperPoly] = {}
        sign = spec.field.sign(parity)
        for qi, xi in zip(spec.q_indices, spec.xi_indices):
            comps[xi] = partial(qi, part)
            comps[qi] = partial(xi, part).scale(sign)
        return VField(spec.domain, comps)

    total = VField.zero(spec.domain)
    for parity, part in enumerate(f.parity_parts()):
        if not part.is_zero:
            total = total + build(part, parity)
    return total


def pericontact_field(spec: ContactSpec, f: SuperPoly) -> VField:
    """M_f = (2-E)(f)∂_tau - Le_f - (-1)^{p(f)} ∂_tau(f)·E."""
    tau = spec.time_index
    X = VField.d(spec.domain, tau, two_minus_euler(spec, f)) - le_field(spec, f)
    E = euler_field(spec)
    for parity, part in enumerate(f.parity_parts()):
        ftau = partial(tau, part)
        if not ftau.is_zero:
            X = X - E.multiply_left(ftau).scale(spec.field.sign(parity))
    return X


def realize(spec: ContactSpec, f: SuperPoly) -> VField:
    """K_f o M_f según el tipo de la especificación."""
    if f.domain != spec.domain:
        raise DomainMismatchError("La función generatriz no pertenece a la especificación")
    if spec.is_contact:
        return contact_field(spec, f)
    return pericontact_field(spec, f)


def contact_form(spec: ContactSpec) -> OneForm:
    """alpha_1 = dt + Σ(q dp - p dq) + Σ(xi d eta + eta d xi) + theta d theta; alpha_0 = dtau + Σ(xi dq - q dxi).

    Las dx_j tienen la paridad de x_j: con diferenciales de paridad desplazada alpha_0 se
    escribe dtau + Σ(xi dq + q dxi). alpha_0 es impar, así que L_{M_f} alpha_0 = F·alpha_0 con
    el factor a la izquierda (``form_factor``).
    """
    D = spec.domain
    var = lambda i: SuperPoly.var(D, i)
    one = SuperPoly.one(D)
    terms: List[Tuple[SuperPoly, int]] = [(one, spec.time_index)]
    if spec.is_contact:
        for pi, qi in zip(spec.p_indices, spec.q_indices):
            terms += [(var(qi), pi), (-var(pi), qi)]
        for xi, eta in zip(spec.xi_indices, spec.eta_indices):
            terms += [(var(xi), eta), (var(eta), xi)]
        if spec.theta_index is not None:
            terms.append((var(spec.theta_index), spec.theta_index))
    else:
        for qi, xi in zip(spec.q_indices, spec.xi_indices):
            terms += [(var(xi), qi), (-var(qi), xi)]
    return OneForm.from_left_products(D, terms)


# =============================================
# CORCHETES
# =============================================

def contact_bracket(spec: ContactSpec, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """{f,g} con [realize f, realize g] = realize {f,g}.

    Contacto: (2-E)(f)g_t - f_t(2-E)(g) - Σ(f_p g_q - f_q g_p) + (-1)^{p(f)}(f_xi g_eta + f_eta g_xi + f_theta g_theta).
    Pericontacto: ½⟨[M_f, M_g], alpha_0⟩ (necesita p != 2).
    """
    if f.domain != spec.domain or g.domain != spec.domain:
        raise DomainMismatchError("Funciones generatrices de otra especificación")
    if not spec.is_contact:
        if spec.field.p == 2:
            raise CharacteristicError("El corchete pericontacto necesita p != 2")
        X = realize(spec, f).bracket(realize(spec, g))
        return pairing(X, contact_form(spec)).scale(spec.field.fraction(1, 2))
    t = spec.time_index

    def build(part: SuperPoly, parity: int) -> SuperPoly:
        out = two_minus_euler(spec, part) * partial(t, g) - partial(t, part) * two_minus_euler(spec, g)
        for pi, qi in zip(spec.p_indices, spec.q_indices):
            out = out - (partial(pi, part) * partial(qi, g) - partial(qi, part) * partial(pi, g))
        odd_terms = SuperPoly.zero(spec.domain)
        for xi, eta in zip(spec.xi_indices, spec.eta_indices):
            odd_terms = odd_terms + partial(xi, part) * partial(eta, g) + partial(eta, part) * partial(xi, g)
        if spec.theta_index is not None:
            th = spec.theta_index
            odd_terms = odd_terms + partial(th, part) * partial(th, g)
        return out + odd_terms.scale(spec.field.sign(parity))

    return _sign_by_parity(f, build)


def poisson_bracket(spec: ContactSpec, f: SuperPoly, g: SuperPoly) -> SuperPoly:
    """Σ(f_p g_q - f_q g_p) - (-1)^{p(f)}(f_xi g_eta + f_eta g_xi + f_theta g_theta); ignora t."""
    if not spec.is_contact:
        raise DomainMismatchError("El corchete de Poisson se define sobre coordenadas de contacto")

    def build(part: SuperPoly, parity: int) -> SuperPoly:
        out = SuperPoly.zero(spec.domain)
        for pi, qi in zip(spec.p_indices, spec.q_indices):
            out = out + partial(pi, part) * partial(qi, g) - partial(qi, part) * partial(pi, g)
        odd_terms = SuperPoly.zero(spec.domain)
        for xi, eta in zip(spec.xi_indices, spec.eta_indices):
            odd_terms = odd_terms + partial(xi, part) * partial(eta, g) + partial(eta, part) * partial(xi, g)
        if spec.theta_index is not None:
            th = spec.theta_index
            odd_terms = odd_terms + partial(th, part) * partial(th, g)
        return out - odd_terms.scale(spec.field.sign(parity))

    return _sign_by_parity(f, build)


def contact_square(spec: ContactSpec, f: SuperPoly) -> SuperPoly:
    """Cuadrado de un elemento impar de k en característica 2 (sin theta): la mitad de {f,f}."""
    if spec.field.p != 2:
        return contact_bracket(spec, f, f).scale(spec.field.fraction(1, 2))
    if not spec.is_contact:
        raise CharacteristicError("Cuadrados pericontacto con p = 2 no soportados")
    if not f.has_parity(1):
        raise ParityError("contact_square requiere una función impar")
    if spec.theta_index is not None and not partial(spec.theta_index, f).is_zero:
        raise CharacteristicError("Cuadrado con dependencia en theta no soportado con p = 2")
    t = spec.time_index
    out = two_minus_euler(spec, f) * partial(t, f)
    for pi, qi in zip(spec.p_indices, spec.q_indices):
        out = out - partial(pi, f) * partial(qi, f)
    for xi, eta in zip(spec.xi_indices, spec.eta_indices):
        out = out - partial(xi, f) * partial(eta, f)
    return out


# =============================================
# ELEMENTOS
# =============================================

class GenFun(AlgebraElement):
    """Elemento de k o m dado por su función generatriz."""

    __slots__ = ("spec", "f")

    def __init__(self, spec: ContactSpec, f: SuperPoly):
        if f.domain != spec.domain:
            raise DomainMismatchError("La función no pertenece a la especificación")
        self.spec = spec
        self.f = f

    @classmethod
    def of(cls, spec: ContactSpec, f) -> "GenFun":
        if isinstance(f, SuperPoly):
            return cls(spec, f)
        return cls(spec, SuperPoly.constant(spec.domain, f))

    @property
    def field(self) -> GroundField:
        return self.spec.field

    def coordinates(self) -> Vector:
        return dict(self.f.terms)

    def rebuild(self, coords: Vector) -> "GenFun":
        return GenFun(self.spec, SuperPoly(self.spec.domain, coords))

    @property
    def parity(self) -> Optional[int]:
        par = self.f.parity
        if par is None or self.spec.is_contact:
            return par
        return (par + 1) % 2

    def degree(self) -> Optional[int]:
        d = self.f.degree()
        if d is None:
            return None
        return d - self.spec.shift

    def bracket(self, other: AlgebraElement) -> "GenFun":
        if not isinstance(other, GenFun) or other.spec.domain != self.spec.domain:
            raise DomainMismatchError("Corchete entre funciones generatrices de especificaciones distintas")
        return GenFun(self.spec, contact_bracket(self.spec, self.f, other.f))

    def square(self) -> "GenFun":
        if self.parity != 1:
            raise ParityError("square requiere un elemento impar")
        if not self.spec.is_contact:
            raise CharacteristicError("Cuadrados pericontacto no soportados")
        return GenFun(self.spec, contact_square(self.spec, self.f))

    def with_degrees(self, degrees: Sequence[int]) -> "GenFun":
        spec = self.spec.with_degrees(degrees)
        return GenFun(spec, SuperPoly(spec.domain, self.f.terms))

    def realize(self) -> VField:
        return realize(self.spec, self.f)

    def format(self) -> str:
        return str(self.f)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"GenFun({self.f})"


def genfun_basis(spec: ContactSpec, degree: int, t_free: bool = False) -> List[GenFun]:
    """Monomios de gr = degree (con la graduación actual de la especificación)."""
    out = []
    for r in monomials_of_degree(spec.domain, degree + spec.shift):
        if t_free and r[spec.time_index]:
            continue
        out.append(GenFun(spec, SuperPoly.monomial(spec.domain, r)))
    return out


# =============================================
# Y-VECTORES Y ECUACIONES
# =============================================

@dataclass(frozen=True)
class YVector:
    """Operador que conmuta con la parte negativa; los impares se componen con Par."""
    name: str
    field: VField
    with_parity: bool = False

    def apply(self, f: SuperPoly) -> SuperPoly:
        if self.with_parity:
            f = parity_operator(f)
        return self.field.apply(f)


def y_vectors(spec: ContactSpec) -> Dict[str, YVector]:
    """K~_p = p∂_t + ∂_q, K~_q = q∂_t - ∂_p, K~_1 = ∂_t y los impares (x∂_t + ∂_x')∘Par."""
    if not spec.is_contact:
        raise DomainMismatchError("Los Y-vectores sólo están implementados para contacto")
    D = spec.domain
    t = spec.time_index
    dt = lambda i: VField.d(D, t, SuperPoly.var(D, i))
    out: Dict[str, YVector] = {"1": YVector("1", VField.d(D, t))}
    for pi, qi in zip(spec.p_indices, spec.q_indices):
        out[D.names[pi]] = YVector(D.names[pi], dt(pi) + VField.d(D, qi))
        out[D.names[qi]] = YVector(D.names[qi], dt(qi) - VField.d(D, pi))
    for xi, eta in zip(spec.xi_indices, spec.eta_indices):
        out[D.names[xi]] = YVector(D.names[xi], dt(xi) + VField.d(D, eta), True)
        out[D.names[eta]] = YVector(D.names[eta], dt(eta) + VField.d(D, xi), True)
    if spec.theta_index is not None:
        th = spec.theta_index
        out[D.names[th]] = YVector(D.names[th], dt(th) + VField.d(D, th), True)
    return out


@dataclass
class YEquation:
    """Σ c_w·Y_{w_1}···Y_{w_k}(f) = 0; las palabras se aplican de derecha a izquierda."""
    terms: Dict[Tuple[str, ...], Coefficient] = dc_field(default_factory=dict)
    text: str = ""

    def apply(self, ys: Dict[str, YVector], f: SuperPoly) -> SuperPoly:
        out = SuperPoly.zero(f.domain)
        for word, c in self.terms.items():
            value = f
            for name in reversed(word):
                try:
                    value = ys[name].apply(value)
                except KeyError as e:
                    raise WorkbenchError(f"Y-vector desconocido: {name}") from e
                if value.is_zero:
                    break
            if not value.is_zero:
                out = out + value.scale(c)
        return out

    def __str__(self) -> str:
        return self.text or " + ".join(f"{c}*{'*'.join('Y' + w for w in word)}" for word, c in self.terms.items())


def solve_equation_subspace(
    spec: ContactSpec,
    equations: Sequence[YEquation],
    degree: int,
    t_free: bool = False,
) -> List[GenFun]:
    """Base escalonada de las funciones de grado ``degree`` anuladas por todas las ecuaciones."""
    ys = y_vectors(spec)
    candidates = genfun_basis(spec, degree, t_free=t_free)
    if not candidates:
        return []
    columns: List[Vector] = []
    for g in candidates:
        column: Vector = {}
        for e, equation in enumerate(equations):
            for r, c in equation.apply(ys, g.f).terms.items():
                column[(e, r)] = c
        columns.append(column)
    kernel = nullspace(spec.field, columns)
    solutions = []
    for coefficients in kernel:
        f = SuperPoly.zero(spec.domain)
        for c, g in zip(coefficients, candidates):
            if c:
                f = f + g.f.scale(c)
        solutions.append(GenFun(spec, f))
    space = ElementSpace.span(solutions, spec.field)
    logger.debug(f"Ecuaciones en grado {degree}: {len(candidates)} candidatos, {space.dim} soluciones")
    return space.basis


# =============================================
# FILTROS
# =============================================

def b_ab_residual(spec: ContactSpec, a, b, f: SuperPoly) -> SuperPoly:
    """(bn - aE)∂f/∂tau - aΔf con Δ = Σ ∂²/∂q_i∂xi_i; lineal en f."""
    if spec.is_contact:
        raise DomainMismatchError("b_{a,b} se define dentro de m(n)")
    field = spec.field
    a = field(a) if isinstance(a, (int, str)) else a
    b = field(b) if isinstance(b, (int, str)) else b
    ftau = partial(spec.time_index, f)
    lhs = ftau.scale(b * field(spec.n)) - euler(spec, ftau).scale(a)
    laplace = SuperPoly.zero(spec.domain)
    for qi, xi in zip(spec.q_indices, spec.xi_indices):
        laplace = laplace + partial(qi, partial(xi, f))
    return lhs - laplace.scale(a)


def b_ab_member(spec: ContactSpec, a, b, f: SuperPoly) -> bool:
    """f ∈ b_{a,b}(n) si (bn - aE)∂f/∂tau = aΔf."""
    return b_ab_residual(spec, a, b, f).is_zero


def divergence_free(X: VField) -> bool:
    return X.divergence().is_zero


def is_time_free(spec: ContactSpec, f: SuperPoly) -> bool:
    """Funciones de po: independientes de t."""
    return all(r[spec.time_index] == 0 for r in f.terms)
