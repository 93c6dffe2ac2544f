"""Fixtures compartidos: cuerpos base, generador aleatorio con semilla fija y especificaciones pequeñas."""

import random

import pytest

from src.core.coeff import GroundField
from src.core.contact import ContactSpec
from src.core.superfunc import DomainSpec, SuperPoly

SEED = 20240601


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def q():
    return GroundField(0)


@pytest.fixture
def gf2():
    return GroundField(2)


@pytest.fixture
def gf3():
    return GroundField(3)


@pytest.fixture
def gf5():
    return GroundField(5)


@pytest.fixture(params=[0, 2, 3, 5], ids=lambda p: f"p={p}")
def any_field(request):
    return GroundField(request.param)


@pytest.fixture
def k3(q):
    """k(3) sobre Q: t, p1, q1."""
    return ContactSpec.contact(q, 1)


@pytest.fixture
def k1_2(q):
    """k(1|2) sobre Q: t, xi1, eta1."""
    return ContactSpec.contact(q, 0, 2)


def random_poly(domain: DomainSpec, rng: random.Random, terms: int = 3, max_exp: int = 2) -> SuperPoly:
    """Polinomio con pocos términos y exponentes pequeños (los que superan la altura se anulan)."""
    out = SuperPoly.zero(domain)
    for _ in range(terms):
        r = [rng.randint(0, 1) if par else rng.randint(0, max_exp) for par in domain.parities]
        out = out + SuperPoly.monomial(domain, r, rng.randint(1, 4))
    return out


def random_homogeneous(domain: DomainSpec, rng: random.Random, parity: int, terms: int = 3) -> SuperPoly:
    """Como ``random_poly`` pero sólo con monomios de la paridad pedida."""
    out = SuperPoly.zero(domain)
    while out.is_zero:
        out = random_poly(domain, rng, terms)
        out = out.parity_parts()[parity]
    return out
