"""Núcleo algebraico: coeficientes, superfunciones, campos, contacto, graduaciones y prolongación."""

from .models import (
    WorkbenchError,
    CharacteristicError,
    DomainMismatchError,
    ParityError,
    TruncationError,
    ParseError,
    ConstraintError,
    NotSubalgebraError,
    ExcludedParameterError,
    UnsupportedEntryError,
    UnknownEntryError,
    PartialProlongError,
    ContactKind,
    Series,
    Irreducibility,
    VerifyStatus,
    SuperDim,
    GrowthVector,
    Fingerprint,
    WGradingReport,
    IdealReport,
    VerifyReport,
    WorkbenchConfig,
)

from .coeff import GroundField, binom
from .superfunc import DomainSpec, SuperPoly, partial
from .fields import VField, Derivation, OneForm, is_integrable
from .contact import (
    ContactSpec,
    GenFun,
    contact_bracket,
    contact_field,
    pericontact_field,
    realize,
    solve_equation_subspace,
)
from .linalg import AlgebraElement, ElementSpace, Subspace
from .graded import (
    GradedSlice,
    slice_elements,
    regrade,
    solve_degree_constraints,
    weisfeiler,
    generated_components,
    irreducibility,
    validate_w_grading,
)
from .prolong import ProlongSeed, VectAmbient, ContactAmbient, prolong
from .distrib import (
    flag,
    algebraic_growth,
    growth_formula,
    fingerprint,
    equivalence_verdict,
    symbol_constants,
)
from .char2 import desuperize, superize, queerify, ideal_probe, check_superalgebra_axioms

__all__ = [
    # Models
    'WorkbenchError', 'CharacteristicError', 'DomainMismatchError', 'ParityError',
    'TruncationError', 'ParseError', 'ConstraintError', 'NotSubalgebraError',
    'ExcludedParameterError', 'UnsupportedEntryError', 'UnknownEntryError',
    'PartialProlongError', 'ContactKind', 'Series', 'Irreducibility', 'VerifyStatus',
    'SuperDim', 'GrowthVector', 'Fingerprint', 'WGradingReport', 'IdealReport',
    'VerifyReport', 'WorkbenchConfig',
    # Coeficientes y funciones
    'GroundField', 'binom', 'DomainSpec', 'SuperPoly', 'partial',
    # Campos y contacto
    'VField', 'Derivation', 'OneForm', 'is_integrable',
    'ContactSpec', 'GenFun', 'contact_bracket', 'contact_field', 'pericontact_field',
    'realize', 'solve_equation_subspace',
    # Graduaciones
    'AlgebraElement', 'ElementSpace', 'Subspace', 'GradedSlice', 'slice_elements',
    'regrade', 'solve_degree_constraints', 'weisfeiler', 'generated_components',
    'irreducibility', 'validate_w_grading',
    # Prolongación y distribuciones
    'ProlongSeed', 'VectAmbient', 'ContactAmbient', 'prolong',
    'flag', 'algebraic_growth', 'growth_formula', 'fingerprint',
    'equivalence_verdict', 'symbol_constants',
    # Característica 2
    'desuperize', 'superize', 'queerify', 'ideal_probe', 'check_superalgebra_axioms',
]
