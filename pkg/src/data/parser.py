"""Parser de la sintaxis de texto: polinomios, campos vectoriales, ecuaciones en Y-vectores y listas --N."""

import re
import logging
from math import factorial
from typing import Dict, List, Optional, Tuple

from ..core.coeff import GroundField
from ..core.contact import YEquation
from ..core.fields import VField
from ..core.models import ParseError
from ..core.superfunc import DomainSpec, SuperPoly

logger = logging.getLogger(__name__)

TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\^)|(\()|(\))|(\*)|(\+)|(-)|(/))")
KINDS = ("int", "name", "^", "(", ")", "*", "+", "-", "/")


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = TOKEN.match(text, pos)
        if not match or match.end() == pos:
            raise ParseError(f"Carácter inesperado en {text!r}, posición {pos}")
        for kind, value in zip(KINDS, match.groups()):
            if value is not None:
                tokens.append((kind, value))
                break
        pos = match.end()
    return tokens


class _PolyParser:
    """Descenso recursivo: expr := term (± term)*, term := factor (* factor)*."""

    def __init__(self, domain: DomainSpec, text: str):
        self.domain = domain
        self.field = domain.field
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> Optional[str]:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            raise ParseError(f"Se esperaba {kind!r} en {self.text!r}")
        value = self.tokens[self.pos][1]
        self.pos += 1
        return value

    def parse(self) -> SuperPoly:
        if not self.tokens:
            raise ParseError("Expresión vacía")
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"Sobra texto en {self.text!r}")
        return result

    def expr(self) -> SuperPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.take(self.peek()) == "-" else 1
        result = self.term().scale(sign)
        while self.peek() in ("+", "-"):
            op = self.take(self.peek())
            value = self.term()
            result = result + value if op == "+" else result - value
        return result

    def term(self) -> SuperPoly:
        result = self.factor()
        while self.peek() == "*":
            self.take("*")
            result = result * self.factor()
        return result

    def factor(self) -> SuperPoly:
        kind = self.peek()
        if kind == "int":
            num = int(self.take("int"))
            if self.peek() == "/":
                self.take("/")
                return SuperPoly.constant(self.domain, self.field.fraction(num, int(self.take("int"))))
            return SuperPoly.constant(self.domain, self.field(num))
        if kind == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner
        if kind == "name":
            name = self.take("name")
            if name not in self.domain.names:
                raise ParseError(f"Indeterminada desconocida: {name}")
            if self.peek() != "^":
                return SuperPoly.var(self.domain, name)
            self.take("^")
            # x^(k) potencia dividida; x^k potencia ordinaria = k!·x^(k)
            if self.peek() == "(":
                self.take("(")
                k = int(self.take("int"))
                self.take(")")
                return SuperPoly.var(self.domain, name, k)
            k = int(self.take("int"))
            return SuperPoly.var(self.domain, name, k).scale(self.field(factorial(k)))
        raise ParseError(f"Factor inesperado en {self.text!r}")


def parse_poly(domain: DomainSpec, text: str) -> SuperPoly:
    """
    Lee un polinomio en potencias divididas.

    Formatos soportados:
    - "u1^(3)*xi2"        potencia dividida u1^(3) por xi2
    - "2*p1*p2*q2 - p2^(3)"
    - "u^2"               potencia ordinaria (= 2·u^(2))
    - "1/2*t + (p - q)*xi"
    """
    return _PolyParser(domain, text).parse()


def _split_terms(text: str) -> List[str]:
    """Separa en sumandos de nivel 0 conservando el signo."""
    terms, depth, current = [], 0, ""
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0 and current.strip():
            previous = current.rstrip()[-1]
            if previous not in "^*/(":
                terms.append(current)
                current = ""
        current += ch
    if current.strip():
        terms.append(current)
    return [t.strip() for t in terms]


FIELD_TERM = re.compile(r"^(.*?)\s*\*?\s*d_?([A-Za-z][A-Za-z0-9_]*|\d+)\s*$")


def parse_field(domain: DomainSpec, text: str) -> VField:
    """
    Lee un campo vectorial.

    Formatos soportados:
    - "d_t" o "dt"                  ∂_t
    - "2*u2^(2)*u3 d7"              índice 1-based (∂_7)
    - "(u5 + u6) d_u8 - u1*d_u2"
    """
    result = VField.zero(domain)
    for term in _split_terms(text):
        match = FIELD_TERM.match(term)
        if not match:
            raise ParseError(f"Sumando sin derivada: {term!r}")
        coef_text, target = match.group(1).strip(), match.group(2)
        if target.isdigit():
            index = int(target) - 1
            if not 0 <= index < domain.size:
                raise ParseError(f"Índice de derivada fuera de rango: {target}")
        else:
            if target not in domain.names:
                raise ParseError(f"Derivada respecto de indeterminada desconocida: {target}")
            index = domain.index(target)
        coef_text = coef_text.rstrip("*").strip()
        if coef_text in ("", "+"):
            coef = SuperPoly.one(domain)
        elif coef_text == "-":
            coef = SuperPoly.one(domain).scale(-1)
        else:
            coef = parse_poly(domain, coef_text)
        result = result + VField.d(domain, index, coef)
    return result


def parse_fields(domain: DomainSpec, texts) -> List[VField]:
    return [parse_field(domain, t) for t in texts]


Y_FACTOR = re.compile(r"^Y([A-Za-z0-9_]+?)(?:\^(\d+))?$")


def parse_y_equation(field: GroundField, text: str) -> YEquation:
    """
    Lee una ecuación en Y-vectores; las palabras se escriben en orden de composición.

    Formatos soportados:
    - "Yp1^2 = 0"
    - "2*Yp1*Yq1 - Yp2*Yq2 - Y1 = 0"
    - "Yq^2 = Yzeta*Yxi"           (el segundo miembro se resta)
    """
    if "=" in text:
        lhs, rhs = text.split("=", 1)
    else:
        lhs, rhs = text, "0"
    terms: Dict[Tuple[str, ...], object] = {}
    for side, sign in ((lhs, 1), (rhs, -1)):
        if side.strip() == "0":
            continue
        for term in _split_terms(side):
            coef = sign
            if term.startswith("-"):
                coef, term = -coef, term[1:].strip()
            elif term.startswith("+"):
                term = term[1:].strip()
            factors = [f.strip() for f in term.split("*")]
            num = field.one
            if factors and re.fullmatch(r"\d+(/\d+)?", factors[0]):
                num = field(factors.pop(0))
            word: List[str] = []
            for f in factors:
                match = Y_FACTOR.match(f)
                if not match:
                    raise ParseError(f"Factor no reconocido en la ecuación: {f!r}")
                word.extend([match.group(1)] * int(match.group(2) or 1))
            if not word:
                raise ParseError(f"Sumando sin Y-vectores: {term!r}")
            key = tuple(word)
            value = terms.get(key, field.zero) + num * field(coef)
            if value:
                terms[key] = value
            else:
                terms.pop(key, None)
    return YEquation(terms, text.strip())


def parse_heights(text: str) -> Tuple[Optional[int], ...]:
    """
    Lee la opción --N.

    Formatos soportados:
    - "1,1,2"
    - "inf,2"   alturas no acotadas
    """
    out: List[Optional[int]] = []
    for part in text.split(","):
        part = part.strip().lower()
        if part in ("inf", "∞", "unbounded"):
            out.append(None)
        elif part.isdigit() and int(part) > 0:
            out.append(int(part))
        else:
            raise ParseError(f"Altura no válida en --N: {part!r}")
    return tuple(out)


def parse_degree_map(text: str) -> Dict[str, int]:
    """Lee "t=2, p=1, xi1=0" como diccionario de grados."""
    out = {}
    for part in text.split(","):
        if not part.strip():
            continue
        match = re.fullmatch(r"\s*([A-Za-z][A-Za-z0-9_]*)\s*=\s*(-?\d+)\s*", part)
        if not match:
            raise ParseError(f"Grado ilegible: {part!r}")
        out[match.group(1)] = int(match.group(2))
    return out
