"""
Graded Dimension Pipeline
Hilbert functions of graded presentations, dimensions of the filtration
F_p(A), the Rees / H(A) comparison and z-regularity evidence
"""
import math
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Sequence, Union

import numpy as np
import pandas as pd

from algebra.coeffring import RingPresentation, check_confluence, normal_words, r_gen, reduce
from algebra.errors import ContractError, StructuralError
from algebra.freealg import FreePoly
from algebra.skewext import (
    AElement, ExtensionPresentation, a_from_coeff, a_monomial, a_mul, check_sigma_filtered,
    exponent_vectors, full_presentation,
)
from algebra.verdicts import VerdictReport
from utils.config import HILBERT_CROSS_CHECK_DEGREE, MAX_DEGREE
from utils.logger import get_logger

from .homog import homogenize_extension


logger = get_logger('graded')


@dataclass
class HilbertTable:
    """dims[p] = dimension of the degree-p piece"""
    name: str
    dims: List[int]
    cross_checked_to: Optional[int] = None


@dataclass
class FiltrationTable:
    """cum_dims[p] = dim F_p"""
    name: str
    cum_dims: List[int]

    def increments(self) -> List[int]:
        return [c - (self.cum_dims[p - 1] if p else 0) for p, c in enumerate(self.cum_dims)]


@dataclass
class ReesComparison:
    name: str
    rees: List[int]
    homogenized: List[int]
    agree: List[bool] = field(default_factory=list)

    @property
    def equal(self) -> bool:
        return all(self.agree)


def _check_bound(N: int):
    if N < 0:
        raise ValueError(f"Degree bound must be non-negative, got {N}")
    if N > MAX_DEGREE:
        logger.warning(f"HILBERT | degree bound {N} above the default cap {MAX_DEGREE}")


def _require_confluent(R: RingPresentation):
    report = R._cache.get('confluence')
    if report is None:
        report = check_confluence(R)
        R._cache['confluence'] = report
    if not report.confluent:
        raise StructuralError(
            f"{R.name!r} is not confluent; dimensions need a confluent rewriting system "
            f"({'; '.join(report.structural + report.witnesses)})"
        )


def _monomial_counts(n: int, N: int) -> np.ndarray:
    return np.array([math.comb(k + n - 1, n - 1) if n else int(k == 0) for k in range(N + 1)], dtype=object)


def ring_dims(R: RingPresentation, N: int) -> List[int]:
    """Normal-word counts per degree"""
    _require_confluent(R)
    return [len(normal_words(R, p)) for p in range(N + 1)]


def _free_module_dims(ring: Sequence[int], n: int, N: int) -> List[int]:
    conv = np.convolve(_monomial_counts(n, N), np.array(ring, dtype=object))[:N + 1]
    return [int(v) for v in conv]


def hilbert_graded(P: Union[RingPresentation, ExtensionPresentation], N: int) -> HilbertTable:
    """
    Exact dimensions of the graded pieces up to degree N

    Rings: count normal words. Extensions: dim_p = sum over alpha of
    dim R_(p - |alpha|), re-checked on low degrees by enumerating normal
    words of the full presentation.
    """
    _check_bound(N)
    if isinstance(P, RingPresentation):
        table = HilbertTable(P.name, ring_dims(P, N))
        logger.info(f"HILBERT | {P.name} | N: {N} | dims: {table.dims}")
        return table

    dims = _free_module_dims(ring_dims(P.base, N), P.n, N)
    table = HilbertTable(P.name, dims)
    if check_sigma_filtered(P).passed:
        top = min(N, HILBERT_CROSS_CHECK_DEGREE)
        full = full_presentation(P)
        enumerated = [len(normal_words(full, p)) for p in range(top + 1)]
        if enumerated != dims[:top + 1]:
            raise ContractError(
                f"{P.name!r}: free-module dimensions {dims[:top + 1]} disagree with "
                f"word enumeration {enumerated}; the presentation does not have a PBW basis"
            )
        table.cross_checked_to = top
    logger.info(f"HILBERT | {P.name} | N: {N} | dims: {dims}")
    return table


def filtration_dims(A: ExtensionPresentation, N: int) -> FiltrationTable:
    """dim F_p(A) = sum over alpha of dim F_(p - |alpha|)(R)"""
    _check_bound(N)
    ring_cumulative = np.cumsum(np.array(ring_dims(A.base, N), dtype=object))
    conv = np.convolve(_monomial_counts(A.n, N), ring_cumulative)[:N + 1]
    return FiltrationTable(A.name, [int(v) for v in conv])


def rees_vs_homog(A: ExtensionPresentation, N: int) -> ReesComparison:
    """dim Rees(A)_p = dim F_p(A) against dim H(A)_p"""
    rees = filtration_dims(A, N).cum_dims
    homogenized = hilbert_graded(homogenize_extension(A), N).dims
    comparison = ReesComparison(A.name, rees, homogenized, [a == b for a, b in zip(rees, homogenized)])
    logger.info(f"REES | {A.name} | N: {N} | equal: {comparison.equal}")
    return comparison


# ============================================================
# z-regularity
# ============================================================

def _basis(P: Union[RingPresentation, ExtensionPresentation], p: int) -> List[AElement]:
    if isinstance(P, RingPresentation):
        return [reduce(FreePoly.monomial(P.alphabet, w), P) for w in normal_words(P, p)]
    R = P.base
    return [
        a_monomial(alpha, P, reduce(FreePoly.monomial(R.alphabet, w), R))
        for k in range(p + 1)
        for alpha in exponent_vectors(P.n, k)
        for w in normal_words(R, p - k)
    ]


def z_regularity_report(P: Union[RingPresentation, ExtensionPresentation], N: int,
                        z: Optional[str] = None) -> VerdictReport:
    """
    Multiplication by z on the degree-p basis, p <= N

    Images must be nonzero and pairwise distinct; when all of them are
    monomials this also proves injectivity.
    """
    R = P if isinstance(P, RingPresentation) else P.base
    z = z or getattr(P, 'central', None) or getattr(R, 'central', None)
    if z is None:
        raise StructuralError(f"{P.name!r} has no central variable to test")
    report = VerdictReport(title=f'z-regular: {P.name}')
    z_elem = r_gen(R, z)
    independent = True
    for p in range(N + 1):
        basis = _basis(P, p)
        if isinstance(P, RingPresentation):
            images = [reduce(z_elem.poly * b.poly, R) for b in basis]
            nonzero = all(not img.is_zero() for img in images)
            monomial = all(len(img.poly) == 1 for img in images)
        else:
            left = a_from_coeff(z_elem, P)
            images = [a_mul(left, b, P) for b in basis]
            nonzero = all(not img.is_zero() for img in images)
            monomial = all(len(img.terms) == 1 and len(img.terms[0][1].poly) == 1 for img in images)
        distinct = len(set(images)) == len(images)
        independent = independent and monomial
        report.add(f'z injective on degree {p}', nonzero and distinct,
                   None if nonzero and distinct else f'{len(basis)} basis elements')
        if not (nonzero and distinct):
            break
    report.notes.append('images are monomials: injectivity proven' if independent
                        else 'images checked for distinctness only')
    return report


def check_z_regular(P: Union[RingPresentation, ExtensionPresentation], N: int) -> bool:
    return z_regularity_report(P, N).passed


# ============================================================
# Tables
# ============================================================

def dimension_frame(columns: Mapping[str, Sequence[int]]) -> pd.DataFrame:
    """Align dimension columns on the degree p"""
    length = max((len(v) for v in columns.values()), default=0)
    frame = pd.DataFrame({'p': list(range(length))})
    for name, values in columns.items():
        frame[name] = pd.Series(list(values), dtype='Int64')
    return frame
