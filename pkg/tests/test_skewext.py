# Skew PBW extensions: normal forms, tdeg, sigma-filtered verdicts
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from algebra.coeffring import normal_words, r_gen, reduce
from algebra.errors import ContractError, DomainError, StructuralError
from algebra.freealg import FreePoly
from algebra.sampling import make_rng, random_aelement
from algebra.skewext import (
    FILTRATION_TRIVIAL, a_from_coeff, a_from_poly, a_monomial, a_mul, a_one, a_tdeg, a_var, build_extension,
    check_bijective, check_connected, check_preserves_tdeg, check_sigma_filtered, exponent_vectors,
    expansion_closed_form, free_filtered_decomposition, full_presentation, in_filtration, lr_degree,
)


def element(A, text):
    """Quick free-algebra evaluation: space-separated words, '+' between terms"""
    alphabet = A.base.alphabet | frozenset(A.variables)
    terms = {}
    for piece in text.split('+'):
        coeff, *word = piece.split()
        terms[tuple(word)] = terms.get(tuple(word), 0) + int(coeff)
    return a_from_poly(FreePoly(alphabet, terms), A)


def test_exponent_vectors():
    assert exponent_vectors(2, 2) == [(2, 0), (1, 1), (0, 2)]
    assert exponent_vectors(0, 0) == [()]
    assert exponent_vectors(3, 0) == [(0, 0, 0)]


def test_weyl_commutation(weyl1):
    x_t2 = element(weyl1, '1 x t t')
    assert x_t2.format(weyl1) == 't^2*x + 2*t'
    assert a_tdeg(x_t2) == 3
    assert lr_degree(x_t2) == 1


def test_usl2_brackets(usl2):
    assert element(usl2, '1 f e').format(usl2) == 'e*f - h'
    assert element(usl2, '1 h e').format(usl2) == 'e*h + 2*e'
    assert element(usl2, '1 h f').format(usl2) == 'f*h - 2*f'
    assert element(usl2, '1 e f + -1 f e') == element(usl2, '1 h')


def test_jordan_extension_twist(entry):
    A = entry('jordan-ext').extension
    assert element(A, '1 x1 t2').format(A) == '(t2 + 2*t1)*x1'
    assert element(A, '1 x1 t1').format(A) == 't1*x1'


def test_weyl2_variables_commute(weyl2):
    assert element(weyl2, '1 x2 x1') == element(weyl2, '1 x1 x2')
    assert element(weyl2, '1 x2 t1') == element(weyl2, '1 t1 x2')


def test_tdeg_of_zero(weyl1):
    zero = a_mul(a_one(weyl1), element(weyl1, '0'), weyl1)
    assert zero.is_zero()
    with pytest.raises(DomainError):
        a_tdeg(zero)
    assert in_filtration(zero, 0)


def test_sigma_filtered_verdicts(entry):
    for name in ('weyl-1', 'weyl-2', 'jordan-ext', 'kt-general', 'usl2', 'type-I', 'type-II',
                 'quantum-plane', 'quantum-weyl', 'lie-2d', 'jordan-plane', 'jordan-deformed'):
        assert check_sigma_filtered(entry(name).extension).passed, name


def test_non_filtered_names_delta(entry):
    A = entry('non-filtered').extension
    report = check_sigma_filtered(A)
    assert not report.passed
    failed = report.failures()
    assert [v.condition for v in failed] == ['delta_1 filtered']
    assert failed[0].witness == 'deg delta_1(x) = 3 > 2'
    with pytest.raises(ContractError):
        full_presentation(A)


def test_trivial_filtration_accepts_everything(entry):
    A = entry('non-filtered').extension
    report = check_sigma_filtered(A, FILTRATION_TRIVIAL)
    assert report.passed
    assert 'trivial positive filtration on the coefficient ring' in report.notes


def test_trivial_filtration_degree_is_monomial_degree(weyl1):
    f = element(weyl1, '1 x t t + 3 t')
    assert a_tdeg(f, FILTRATION_TRIVIAL) == lr_degree(f) == 1


def test_preserves_tdeg_readings(entry):
    # type-II lower parts have tdeg at most 1
    A = entry('type-II').extension
    assert check_preserves_tdeg(A)
    assert not check_preserves_tdeg(A, strict=True)
    assert check_preserves_tdeg(entry('weyl-2').extension, strict=True)


def test_connected(entry):
    assert check_connected(entry('weyl-1').extension)
    assert check_connected(entry('usl2').extension)


def test_bijectivity(entry):
    assert check_bijective(entry('weyl-1').extension).status == 'verified'
    assert check_bijective(entry('kt-general').extension).status == 'verified'
    assert check_bijective(entry('jordan-ext').extension).status == 'verified'


def test_filtered_decomposition(weyl1):
    f = element(weyl1, '1 x t t + 3 t')
    decomposition = free_filtered_decomposition(f, 3, weyl1)
    assert decomposition.holds
    assert sorted(bound for _, _, bound in decomposition.certificates) == [2, 3]
    with pytest.raises(ContractError):
        free_filtered_decomposition(f, 2, weyl1)


def test_missing_cross_relation_is_structural(usl2):
    with pytest.raises(StructuralError):
        build_extension('broken', usl2.base, usl2.variables, usl2.sigma, usl2.delta, usl2.cross[:2])


def test_variables_must_be_new(weyl1):
    with pytest.raises(StructuralError):
        build_extension('clash', weyl1.base, ('t',), weyl1.sigma, weyl1.delta, ())


def test_full_presentation_rules(weyl2):
    full = full_presentation(weyl2)
    assert full.generators == ('t1', 't2', 'x1', 'x2')
    assert 'x1*t1 -> t1*x1 + 1' in full.format_rules()
    assert 'x2*x1 -> x1*x2' in full.format_rules()


def _coefficient_basis(R, top):
    return [reduce(FreePoly.monomial(R.alphabet, w), R) for d in range(top + 1) for w in normal_words(R, d)]


@pytest.mark.parametrize('name', ['weyl-1', 'weyl-2', 'jordan-ext'])
def test_closed_form_expansion_matches_multiplication(entry, name):
    A = entry(name).extension
    basis = _coefficient_basis(A.base, 2)
    monomials = [alpha for k in range(4) for alpha in exponent_vectors(A.n, k)]
    lefts = [basis[0], basis[-1]]
    for a, X, b, Y in itertools.product(lefts, monomials, basis, monomials):
        left = a_mul(a_from_coeff(a, A), a_monomial(X, A), A)
        right = a_mul(a_from_coeff(b, A), a_monomial(Y, A), A)
        expected = a_mul(left, right, A)
        assert expansion_closed_form(a, X, b, Y, A) == expected, (a, X, b, Y)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(['usl2', 'type-II', 'jordan-ext', 'kt-general', 'quantum-weyl']), st.integers(0, 2**16))
def test_associativity(entry, name, seed):
    A = entry(name).extension
    rng = make_rng(seed)
    f, g, h = (random_aelement(A, rng, 2) for _ in range(3))
    assert a_mul(a_mul(f, g, A), h, A) == a_mul(f, a_mul(g, h, A), A)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(['weyl-2', 'usl2', 'jordan-ext', 'kt-general', 'type-I']), st.integers(0, 2**16))
def test_tdeg_is_submultiplicative(entry, name, seed):
    A = entry(name).extension
    rng = make_rng(seed)
    f, g = random_aelement(A, rng, 3), random_aelement(A, rng, 3)
    product = a_mul(f, g, A)
    assert in_filtration(product, a_tdeg(f) + a_tdeg(g))


def test_generators_act_on_the_left(weyl1):
    t = a_from_coeff(r_gen(weyl1.base, 't'), weyl1)
    x = a_var(weyl1, 'x')
    assert a_mul(x, t, weyl1) == element(weyl1, '1 t x + 1')
