"""Álgebras símbolo: superálgebras de Lie nilpotentes graduadas dadas por constantes de estructura.

Describen partes negativas que la fuente sólo da como módulos (familia sl(2;Λ(r)),
producto vectorial, producto exterior) y las de Heisenberg / anti-Heisenberg.
"""

import logging
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .coeff import Coefficient, GroundField
from .linalg import AlgebraElement, Vector, add_scaled
from .models import CharacteristicError, DomainMismatchError, ParityError

logger = logging.getLogger(__name__)


@dataclass
class SymbolAlgebra:
    """Base homogénea con grado y paridad; corchetes y cuadrados (p = 2) por tablas."""
    field: GroundField
    name: str
    names: List[str]
    degrees: List[int]
    parities: List[int]
    table: Dict[Tuple[int, int], Vector] = dc_field(default_factory=dict)
    squares: Dict[int, Vector] = dc_field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as e:
            raise DomainMismatchError(f"Elemento desconocido en {self.name}: {name}") from e

    def set_bracket(self, a, b, value: Dict) -> None:
        """Fija [e_a, e_b] y, por supersimetría, [e_b, e_a]."""
        a = a if isinstance(a, int) else self.index(a)
        b = b if isinstance(b, int) else self.index(b)
        value = {(k if isinstance(k, int) else self.index(k)): self.field(c) if isinstance(c, int) else c
                 for k, c in value.items()}
        value = {k: c for k, c in value.items() if c}
        self.table[(a, b)] = value
        if a != b:
            sign = -self.field.sign(self.parities[a] * self.parities[b])
            self.table[(b, a)] = {k: sign * c for k, c in value.items()}

    def set_square(self, a, value: Dict) -> None:
        a = a if isinstance(a, int) else self.index(a)
        self.squares[a] = {(k if isinstance(k, int) else self.index(k)): self.field(c) if isinstance(c, int) else c
                           for k, c in value.items()}

    def bracket_basis(self, a: int, b: int) -> Vector:
        return self.table.get((a, b), {})

    def element(self, name, c=1) -> "SymbolElement":
        a = name if isinstance(name, int) else self.index(name)
        return SymbolElement(self, {a: self.field(c) if isinstance(c, int) else c})

    def basis(self, degree: Optional[int] = None) -> List["SymbolElement"]:
        return [self.element(a) for a in range(self.dim) if degree is None or self.degrees[a] == degree]

    def extend(self, names: Sequence[str], degrees: Sequence[int], parities: Sequence[int]) -> None:
        self.names.extend(names)
        self.degrees.extend(degrees)
        self.parities.extend(parities)


class SymbolElement(AlgebraElement):
    """Combinación lineal de la base de un SymbolAlgebra."""

    __slots__ = ("algebra", "coords")

    def __init__(self, algebra: SymbolAlgebra, coords: Vector):
        self.algebra = algebra
        self.coords = {a: c for a, c in coords.items() if c}

    @property
    def field(self) -> GroundField:
        return self.algebra.field

    def coordinates(self) -> Vector:
        return dict(self.coords)

    def rebuild(self, coords: Vector) -> "SymbolElement":
        return SymbolElement(self.algebra, coords)

    @property
    def parity(self) -> Optional[int]:
        values = {self.algebra.parities[a] for a in self.coords}
        if len(values) > 1:
            return None
        return values.pop() if values else 0

    def degree(self) -> Optional[int]:
        values = {self.algebra.degrees[a] for a in self.coords}
        if len(values) > 1:
            return None
        return values.pop() if values else 0

    def bracket(self, other: AlgebraElement) -> "SymbolElement":
        if not isinstance(other, SymbolElement) or other.algebra is not self.algebra:
            raise DomainMismatchError("Corchete entre álgebras símbolo distintas")
        out: Vector = {}
        for a, x in self.coords.items():
            for b, y in other.coords.items():
                value = self.algebra.bracket_basis(a, b)
                if value:
                    add_scaled(out, value, x * y)
        return SymbolElement(self.algebra, out)

    def square(self) -> "SymbolElement":
        """x² para x impar: con p = 2 la aplicación [2]; si no, ½[x, x]."""
        if self.parity != 1:
            raise ParityError("square requiere un elemento impar")
        if self.field.p != 2:
            return self.bracket(self).scale(self.field.fraction(1, 2))
        return self.restricted_square()

    def restricted_square(self) -> "SymbolElement":
        """Σ c_a² e_a^[2] + Σ_{a<b} c_a c_b [e_a, e_b] (p = 2, cualquier paridad)."""
        if self.field.p != 2:
            raise CharacteristicError("La aplicación [2] sólo está definida con p = 2")
        out: Vector = {}
        items = sorted(self.coords.items())
        for a, x in items:
            add_scaled(out, self.algebra.squares.get(a, {}), x * x)
        for (a, x), (b, y) in combinations(items, 2):
            add_scaled(out, self.algebra.bracket_basis(a, b), x * y)
        return SymbolElement(self.algebra, out)

    def format(self) -> str:
        if not self.coords:
            return "0"
        parts = []
        for a, c in sorted(self.coords.items()):
            text = self.field.format(c)
            name = self.algebra.names[a]
            parts.append(name if text == "1" else f"{text}*{name}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.format()

    def __repr__(self) -> str:
        return f"SymbolElement({self})"


# =============================================
# FAMILIAS
# =============================================

def heisenberg(field: GroundField, n: int, m: int = 0) -> SymbolAlgebra:
    """hei(2n|m): [p_i, q_i] = [xi_j, eta_j] = [theta, theta] = -z."""
    k, theta = divmod(m, 2)
    if theta and field.p == 2:
        raise CharacteristicError("Con p = 2 el corchete [theta, theta] debe anularse; use m par")
    names = ([f"p{i}" for i in range(1, n + 1)] + [f"q{i}" for i in range(1, n + 1)]
             + [f"xi{j}" for j in range(1, k + 1)] + [f"eta{j}" for j in range(1, k + 1)]
             + (["theta"] if theta else []) + ["z"])
    parities = [0] * (2 * n) + [1] * m + [0]
    degrees = [-1] * (2 * n + m) + [-2]
    alg = SymbolAlgebra(field, f"hei({2 * n}|{m})", names, degrees, parities)
    for i in range(1, n + 1):
        alg.set_bracket(f"p{i}", f"q{i}", {"z": -1})
    for j in range(1, k + 1):
        alg.set_bracket(f"xi{j}", f"eta{j}", {"z": -1})
    if theta:
        alg.set_bracket("theta", "theta", {"z": -1})
    return alg


def anti_heisenberg(field: GroundField, n: int) -> SymbolAlgebra:
    """ahei(n|n): q_i pares, xi_i impares, [q_i, xi_i] = tau con tau impar de grado -2."""
    names = [f"q{i}" for i in range(1, n + 1)] + [f"xi{i}" for i in range(1, n + 1)] + ["tau"]
    parities = [0] * n + [1] * n + [1]
    degrees = [-1] * (2 * n) + [-2]
    alg = SymbolAlgebra(field, f"ahei({n}|{n})", names, degrees, parities)
    for i in range(1, n + 1):
        alg.set_bracket(f"q{i}", f"xi{i}", {"tau": 1})
    return alg


def _grassmann_product(s: Tuple[int, ...], t: Tuple[int, ...]) -> Tuple[int, Tuple[int, ...]]:
    """ζ^S·ζ^T = sign·ζ^{S∪T}; sign 0 si se solapan."""
    if set(s) & set(t):
        return 0, ()
    inversions = sum(1 for a in s for b in t if a > b)
    return (-1 if inversions % 2 else 1), tuple(sorted(s + t))


def _monomial_name(s: Tuple[int, ...]) -> str:
    return "".join(f"z{i}" for i in s) if s else "1"


def sl2_lambda(field: GroundField, r: int, dropped_degrees: Iterable[int], name: str = "") -> SymbolAlgebra:
    """g_-1 = C²⊗Λ(r), g_-2 = Λ(r) sin las potencias exteriores de ``dropped_degrees``.

    [v_a⊗f, v_b⊗g] = det(v_a, v_b)·fg proyectado sobre g_-2.
    """
    dropped = set(dropped_degrees)
    monomials = [s for size in range(r + 1) for s in combinations(range(1, r + 1), size)]
    names, degrees, parities = [], [], []
    for a in (1, 2):
        for s in monomials:
            names.append(f"v{a}*{_monomial_name(s)}")
            degrees.append(-1)
            parities.append(len(s) % 2)
    centre = [s for s in monomials if len(s) not in dropped]
    for s in centre:
        names.append(f"c*{_monomial_name(s)}")
        degrees.append(-2)
        parities.append(len(s) % 2)
    alg = SymbolAlgebra(field, name or f"sl(2;Λ({r}))", names, degrees, parities)
    for s in monomials:
        for t in monomials:
            sign, u = _grassmann_product(s, t)
            if not sign or len(u) in dropped:
                continue
            a = alg.index(f"v1*{_monomial_name(s)}")
            b = alg.index(f"v2*{_monomial_name(t)}")
            alg.set_bracket(a, b, {f"c*{_monomial_name(u)}": sign})
    return alg


def _levi_civita(indices: Sequence[int]) -> int:
    if len(set(indices)) != len(indices):
        return 0
    inversions = sum(1 for i in range(len(indices)) for j in range(i + 1, len(indices)) if indices[i] > indices[j])
    return -1 if inversions % 2 else 1


def cross_product(field: GroundField, contraction: bool = False, name: str = "") -> SymbolAlgebra:
    """g_-1 = Π(V*⊗W) (dim V = 3, dim W = 2), g_-2 = V con [e^a⊗w_i, e^b⊗w_j] = ε_abc ω_ij e_c.

    Con ``contraction`` añade g_-3 = ΠW y [e^a⊗w_i, e_b] = δ_ab w_i.
    """
    names = [f"x{a}{i}" for a in (1, 2, 3) for i in (1, 2)] + [f"e{c}" for c in (1, 2, 3)]
    degrees = [-1] * 6 + [-2] * 3
    parities = [1] * 6 + [0] * 3
    if contraction:
        names += ["w1", "w2"]
        degrees += [-3, -3]
        parities += [1, 1]
    alg = SymbolAlgebra(field, name or ("cross+contraction" if contraction else "cross"), names, degrees, parities)
    omega = {(1, 2): 1, (2, 1): -1}
    for a in (1, 2, 3):
        for i in (1, 2):
            for b in (1, 2, 3):
                for j in (1, 2):
                    if (a, i) > (b, j):
                        continue
                    w = omega.get((i, j), 0)
                    value = {}
                    for c in (1, 2, 3):
                        eps = _levi_civita((a, b, c))
                        if eps and w:
                            value[f"e{c}"] = eps * w
                    if value:
                        alg.set_bracket(f"x{a}{i}", f"x{b}{j}", value)
            if contraction:
                alg.set_bracket(f"x{a}{i}", f"e{a}", {f"w{i}": 1})
    return alg


def wedge_pentad(field: GroundField, name: str = "") -> SymbolAlgebra:
    """g_-1 = Π(Λ²V*) (dim V = 5), g_-2 = Λ⁴V* ≅ V con [e^ab, e^cd] = ε_abcde f_e."""
    pairs = list(combinations(range(1, 6), 2))
    names = [f"x{a}{b}" for a, b in pairs] + [f"f{e}" for e in range(1, 6)]
    degrees = [-1] * len(pairs) + [-2] * 5
    parities = [1] * len(pairs) + [0] * 5
    alg = SymbolAlgebra(field, name or "wedge(5)", names, degrees, parities)
    for (a, b), (c, d) in combinations(pairs, 2):
        rest = set(range(1, 6)) - {a, b, c, d}
        if len(rest) != 1:
            continue
        e = rest.pop()
        alg.set_bracket(f"x{a}{b}", f"x{c}{d}", {f"f{e}": _levi_civita((a, b, c, d, e))})
    return alg


def grassmann_extension(alg: SymbolAlgebra, dropped_degrees: Iterable[int] = (), name: str = "") -> SymbolAlgebra:
    """g⊗Λ(1), con Λ(1) generada por z impar, sin las partes g_d⊗z de ``dropped_degrees``.

    [a⊗φ, b⊗ψ] = (-1)^{p(φ)p(b)} [a, b]⊗φψ; las partes quitadas deben formar un ideal.
    """
    dropped = set(dropped_degrees)
    kept = [a for a in range(alg.dim) if alg.degrees[a] not in dropped]
    shifted = {a: alg.dim + i for i, a in enumerate(kept)}
    out = SymbolAlgebra(
        alg.field, name or f"{alg.name}⊗Λ(1)",
        list(alg.names) + [f"{alg.names[a]}*z" for a in kept],
        list(alg.degrees) + [alg.degrees[a] for a in kept],
        list(alg.parities) + [(alg.parities[a] + 1) % 2 for a in kept],
    )
    for (a, b), value in alg.table.items():
        out.table[(a, b)] = dict(value)
        with_z = {shifted[k]: c for k, c in value.items() if k in shifted}
        if not with_z:
            continue
        if b in shifted:
            out.table[(a, shifted[b])] = dict(with_z)
        if a in shifted:
            sign = alg.field.sign(alg.parities[b])
            out.table[(shifted[a], b)] = {k: sign * c for k, c in with_z.items()}
    logger.debug(f"{out.name}: dim {out.dim} ({len(dropped)} grados sin parte z)")
    return out


def with_degree_parity(alg: SymbolAlgebra, name: str = "") -> SymbolAlgebra:
    """Copia con paridad = grado mod 2 (p = 2); los cuadrados hay que fijarlos aparte."""
    if alg.field.p != 2:
        raise CharacteristicError("Cambiar las paridades por el grado sólo es válido con p = 2")
    return SymbolAlgebra(
        alg.field, name or alg.name, list(alg.names), list(alg.degrees),
        [d % 2 for d in alg.degrees], {k: dict(v) for k, v in alg.table.items()},
    )


def add_central_squares(alg: SymbolAlgebra, odd_names: Sequence[str], prefix: str = "s") -> List[str]:
    """Datos [2] para p = 2: cada e_a impar de la lista tiene un cuadrado central nuevo de grado 2·deg e_a."""
    if alg.field.p != 2:
        raise CharacteristicError("Los cuadrados nuevos sólo tienen sentido con p = 2")
    created = []
    for name in odd_names:
        a = alg.index(name)
        new = f"{prefix}({name})"
        alg.extend([new], [2 * alg.degrees[a]], [0])
        alg.set_square(a, {new: 1})
        created.append(new)
    return created


def symbol_jacobi_defects(alg: SymbolAlgebra) -> List[Tuple[str, str, str]]:
    """Ternas de la base que violan la identidad de Jacobi en forma de derivación."""
    defects = []
    basis = alg.basis()
    for x, y, z in permutations(range(alg.dim), 3):
        if not (x < y < z):
            continue
        X, Y, Z = basis[x], basis[y], basis[z]
        px, py = X.parity, Y.parity
        lhs = X.bracket(Y.bracket(Z))
        rhs = X.bracket(Y).bracket(Z) + Y.bracket(X.bracket(Z)).scale(alg.field.sign(px * py))
        if not (lhs - rhs).is_zero:
            defects.append((alg.names[x], alg.names[y], alg.names[z]))
    return defects
