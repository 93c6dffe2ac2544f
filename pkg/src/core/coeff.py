"""Aritmética exacta sobre el cuerpo base: ℚ (p=0) o GF(p)."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Any, Union

from sympy import GF, QQ, isprime

from .models import CharacteristicError, ParseError

logger = logging.getLogger(__name__)

Coefficient = Any  # elemento de QQ o de GF(p)


@lru_cache(maxsize=None)
def _domain_for(p: int):
    if p == 0:
        return QQ
    return GF(p, symmetric=False)


@dataclass(frozen=True)
class GroundField:
    """Cuerpo base del workbench; inmutable y compartible entre hilos."""
    p: int = 0

    def __post_init__(self):
        if self.p < 0 or (self.p > 0 and not isprime(self.p)):
            raise CharacteristicError(f"La característica debe ser 0 o un primo: {self.p}")

    @property
    def domain(self):
        return _domain_for(self.p)

    @property
    def zero(self) -> Coefficient:
        return self.domain.zero

    @property
    def one(self) -> Coefficient:
        return self.domain.one

    def __call__(self, value: Union[int, Fraction, str, Any]) -> Coefficient:
        """Convierte enteros, fracciones o texto 'a/b' en un coeficiente."""
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        if isinstance(value, int):
            return self.domain.convert(value)
        return self.domain.convert(value)

    def fraction(self, numerator: int, denominator: int) -> Coefficient:
        modulus = self.p if self.p else None
        if denominator == 0 or (modulus and denominator % modulus == 0):
            raise CharacteristicError(f"Denominador {denominator} no invertible en característica {self.p}")
        K = self.domain
        return K.convert(numerator) / K.convert(denominator)

    def parse(self, text: str) -> Coefficient:
        text = text.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                return self.fraction(int(num), int(den))
            return self.domain.convert(int(text))
        except ValueError as e:
            raise ParseError(f"Coeficiente ilegible: {text!r}") from e

    def sign(self, exponent: int) -> Coefficient:
        """(-1)^exponent en el cuerpo."""
        return self.one if exponent % 2 == 0 else -self.one

    def binom(self, a: int, b: int) -> Coefficient:
        return self.domain.convert(binom_int(a, b, self.p))

    def to_json(self, c: Coefficient):
        """Forma canónica serializable: residuo en [0, p) o 'a/b'."""
        if self.p:
            return int(c) % self.p
        num, den = int(c.numerator), int(c.denominator)
        return num if den == 1 else f"{num}/{den}"

    def format(self, c: Coefficient) -> str:
        return str(self.to_json(c))

    def is_minus_one(self, c: Coefficient) -> bool:
        return c == -self.one


@lru_cache(maxsize=1 << 16)
def binom_int(a: int, b: int, p: int = 0) -> int:
    """C(a, b) reducido módulo p (p=0: entero exacto). Usa Lucas cuando p > 0."""
    if a < 0 or b < 0:
        raise ValueError(f"binom requiere argumentos no negativos: ({a}, {b})")
    if b > a:
        return 0
    if p == 0:
        return comb(a, b)
    result = 1
    while a or b:
        ai, bi = a % p, b % p
        if bi > ai:
            return 0
        result = (result * comb(ai, bi)) % p
        a //= p
        b //= p
    return result


def binom(a: int, b: int, field: GroundField) -> Coefficient:
    return field.binom(a, b)
