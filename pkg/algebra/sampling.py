"""
Random Elements
Seeded random normal-form elements of R and A, and the element-level
property checks run on them
"""
from fractions import Fraction
from typing import List, Optional

import numpy as np

from utils.config import SAMPLE_PAIRS, SAMPLE_SEED, SAMPLE_TRIPLES

from .coeffring import RElement, RingPresentation, normal_words, reduce
from .errors import ContractError
from .freealg import FreePoly
from .skewext import (
    FILTRATION_STANDARD, FILTRATION_TRIVIAL, AElement, ExtensionPresentation, a_from_coeff, a_mul,
    a_tdeg, exponent_vectors, free_filtered_decomposition, in_filtration, lr_degree,
)
from .verdicts import VerdictReport


PAIR_TDEG = 3
TRIPLE_TDEG = 2


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(SAMPLE_SEED if seed is None else seed)


def _random_scalar(rng: np.random.Generator) -> Fraction:
    value = Fraction(int(rng.integers(1, 4)), int(rng.integers(1, 3)))
    return -value if rng.random() < 0.3 else value


def random_relement(R: RingPresentation, rng: np.random.Generator, max_degree: int,
                    max_terms: int = 3, nonzero: bool = True) -> RElement:
    """Sum of up to max_terms normal words of degree <= max_degree with small rational coefficients"""
    while True:
        terms = {}
        for _ in range(int(rng.integers(1, max_terms + 1))):
            d = int(rng.integers(0, max_degree + 1))
            words = normal_words(R, d)
            if not words:
                continue
            word = words[int(rng.integers(0, len(words)))]
            terms[word] = terms.get(word, Fraction(0)) + _random_scalar(rng)
        element = reduce(FreePoly(R.alphabet, terms), R)
        if not (nonzero and element.is_zero()):
            return element


def random_aelement(A: ExtensionPresentation, rng: np.random.Generator, max_tdeg: int,
                    max_terms: int = 3) -> AElement:
    """Nonzero element of F_max_tdeg(A): coefficient degree bounded by max_tdeg - |alpha|"""
    while True:
        terms = {}
        for _ in range(int(rng.integers(1, max_terms + 1))):
            total = int(rng.integers(0, max_tdeg + 1))
            alphas = exponent_vectors(A.n, total)
            alpha = alphas[int(rng.integers(0, len(alphas)))]
            terms[alpha] = random_relement(A.base, rng, max_tdeg - total, max_terms=2)
        element = AElement.from_terms(terms)
        if not element.is_zero():
            return element


def random_aelements(A: ExtensionPresentation, rng: np.random.Generator, count: int,
                     max_tdeg: int) -> List[AElement]:
    return [random_aelement(A, rng, max_tdeg) for _ in range(count)]


def random_coefficient_element(A: ExtensionPresentation, rng: np.random.Generator, max_degree: int) -> AElement:
    return a_from_coeff(random_relement(A.base, rng, max_degree), A)


def property_report(A: ExtensionPresentation, pairs: int = SAMPLE_PAIRS, triples: int = SAMPLE_TRIPLES,
                    seed: Optional[int] = None, filtration: str = FILTRATION_STANDARD) -> VerdictReport:
    """
    Element-level evidence on sampled elements: tdeg submultiplicativity,
    R-module filtration compatibility, associativity, filtered-basis
    certificates of products against the sampling bound and, for the
    trivial filtration, additivity of the monomial degree
    """
    rng = make_rng(seed)
    report = VerdictReport(title=f'properties: {A.name}')

    def first_failure(check, samples):
        for sample in samples:
            if not check(*sample):
                return sample
        return None

    sample_pairs = [(random_aelement(A, rng, PAIR_TDEG), random_aelement(A, rng, PAIR_TDEG)) for _ in range(pairs)]
    products = [a_mul(f, g, A) for f, g in sample_pairs]
    bad = first_failure(
        lambda f, g, fg: in_filtration(fg, a_tdeg(f, filtration) + a_tdeg(g, filtration), filtration),
        [(f, g, fg) for (f, g), fg in zip(sample_pairs, products)],
    )
    report.add(f'tdeg(fg) <= tdeg(f) + tdeg(g) on {pairs} pairs', bad is None,
               None if bad is None else f'{bad[0].format(A)} * {bad[1].format(A)}')

    module_pairs = [(random_coefficient_element(A, rng, 2), g) for _, g in sample_pairs]
    bad = first_failure(
        lambda r, g: in_filtration(a_mul(r, g, A), a_tdeg(r, filtration) + a_tdeg(g, filtration), filtration),
        module_pairs,
    )
    report.add(f'F_p(R) F_q(A) in F_(p+q)(A) on {pairs} pairs', bad is None,
               None if bad is None else f'{bad[0].format(A)} * {bad[1].format(A)}')

    sample_triples = [tuple(random_aelement(A, rng, TRIPLE_TDEG) for _ in range(3)) for _ in range(triples)]
    bad = first_failure(
        lambda f, g, h: a_mul(a_mul(f, g, A), h, A) == a_mul(f, a_mul(g, h, A), A),
        sample_triples,
    )
    report.add(f'associativity on {triples} triples', bad is None,
               None if bad is None else ' * '.join(x.format(A) for x in bad))

    # factors lie in F_PAIR_TDEG(A): products must certify against the doubled bound
    certified = [(fg,) for fg in products[:max(pairs // 2, 1)] if not fg.is_zero()]

    def certifies(fg):
        try:
            return free_filtered_decomposition(fg, 2 * PAIR_TDEG, A, filtration).holds
        except ContractError:
            return False

    bad = first_failure(certifies, certified)
    report.add(f'products certified in F_{2 * PAIR_TDEG}(A) on {len(certified)} elements', bad is None,
               None if bad is None else bad[0].format(A))

    if filtration == FILTRATION_TRIVIAL:
        bad = first_failure(
            lambda f, g, fg: not fg.is_zero() and lr_degree(fg) == lr_degree(f) + lr_degree(g),
            [(f, g, fg) for (f, g), fg in zip(sample_pairs, products)],
        )
        report.add(f'trivial-filtration degree is additive on {pairs} pairs', bad is None,
                   None if bad is None else f'{bad[0].format(A)} * {bad[1].format(A)}')
    return report
