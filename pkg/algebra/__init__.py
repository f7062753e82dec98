"""
pbwforge Algebra Package
Free algebras, coefficient rings and skew PBW extensions
"""
from .errors import ContractError, DomainError, ParseError, PBWError, StructuralError
from .freealg import FreePoly, fp_homogenize, fp_lh
from .coeffring import (
    DerivSpec,
    EndoSpec,
    RElement,
    RingPresentation,
    Rule,
    check_confluence,
    reduce,
)
from .skewext import (
    AElement,
    CrossRelation,
    ExtensionPresentation,
    a_mul,
    a_tdeg,
    build_extension,
    check_sigma_filtered,
)

__all__ = [
    'AElement',
    'ContractError',
    'CrossRelation',
    'DerivSpec',
    'DomainError',
    'EndoSpec',
    'ExtensionPresentation',
    'FreePoly',
    'ParseError',
    'PBWError',
    'RElement',
    'RingPresentation',
    'Rule',
    'StructuralError',
    'a_mul',
    'a_tdeg',
    'build_extension',
    'check_confluence',
    'check_sigma_filtered',
    'fp_homogenize',
    'fp_lh',
    'reduce',
]
