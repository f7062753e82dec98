# Homogenization, specialization and G(A)
from dataclasses import replace
from fractions import Fraction

import pytest

from algebra.coeffring import DerivSpec, RingPresentation, Rule, check_confluence, r_gen, r_zero
from algebra.errors import ContractError, DomainError
from algebra.freealg import FreePoly
from algebra.skewext import same_presentation
from pipelines.homog import (
    canonical_relations, choose_homogenizing_name, gr_presentation, homogenize_extension, homogenize_ring,
    specialize, specialize_ring, verify_graded_conditions,
)

FILTERED_BIJECTIVE = [
    'weyl-1', 'weyl-2', 'jordan-ext', 'kt-general', 'usl2', 'type-I', 'type-II',
    'quantum-plane', 'quantum-weyl', 'lie-2d', 'jordan-plane', 'jordan-deformed',
]


def relations(generators, *polys):
    """Polynomials given as {word string: coefficient} over the given generators"""
    alphabet = frozenset(generators)
    return {
        FreePoly(alphabet, {tuple(w.split()): Fraction(c) for w, c in p.items()})
        for p in polys
    }


def nonzero(relation_set):
    return {f for f in relation_set if not f.is_zero()}


def test_homogenizing_name():
    assert choose_homogenizing_name(['t', 'x']) == 'z'
    assert choose_homogenizing_name(['x', 'y', 'z']) == 'w'
    assert choose_homogenizing_name(['z', 'w']) == 'u'


def test_weyl1_homogenization(weyl1):
    H = homogenize_extension(weyl1)
    assert H.central == 'z'
    assert H.base.generators == ('z', 't')
    assert H.delta[0].image('t').format(H.base.order) == 'z^2'
    assert H.delta[0].image('z').is_zero()
    assert H.sigma[0].image('z').format(H.base.order) == 'z'
    assert nonzero(canonical_relations(H)) == relations(
        ('z', 't', 'x'), {'x t': 1, 't x': -1, 'z z': -1},
    )


def test_weyl2_homogenization(weyl2):
    H = homogenize_extension(weyl2)
    assert nonzero(canonical_relations(H)) == relations(
        ('z', 't1', 't2', 'x1', 'x2'),
        {'t2 t1': 1, 't1 t2': -1},
        {'x1 t1': 1, 't1 x1': -1, 'z z': -1},
        {'x1 t2': 1, 't2 x1': -1},
        {'x2 t1': 1, 't1 x2': -1},
        {'x2 t2': 1, 't2 x2': -1, 'z z': -1},
        {'x2 x1': 1, 'x1 x2': -1},
    )


def test_usl2_homogenization(usl2):
    H = homogenize_extension(usl2)
    assert nonzero(canonical_relations(H)) == relations(
        ('z', 'e', 'f', 'h'),
        {'f e': 1, 'e f': -1, 'z h': 1},
        {'h e': 1, 'e h': -1, 'z e': -2},
        {'h f': 1, 'f h': -1, 'z f': 2},
    )


def test_type_one_homogenization(entry):
    H = homogenize_extension(entry('type-I').extension)
    assert H.central == 'w'
    assert nonzero(canonical_relations(H)) == relations(
        ('w', 'x', 'y', 'z'),
        {'y x': 1, 'x y': Fraction(-1, 2)},
        {'z x': 1, 'x z': -3, 'w y': -1, 'w w': -1},
        {'z y': 1, 'y z': Fraction(-1, 2)},
    )


def test_type_two_homogenization(entry):
    H = homogenize_extension(entry('type-II').extension)
    half = Fraction(1, 2)
    assert nonzero(canonical_relations(H)) == relations(
        ('w', 'x', 'y', 'z'),
        {'y x': 1, 'x y': -half, 'w w': half, 'w z': half},
        {'z x': 1, 'x z': -2, 'w w': -1, 'w y': -1},
        {'z y': 1, 'y z': -half, 'w w': half, 'w x': half},
    )


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_graded_conditions_hold(entry, name):
    H = homogenize_extension(entry(name).extension)
    report = verify_graded_conditions(H)
    assert report.passed, report.failures()


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_round_trips(entry, name):
    A = entry(name).extension
    H = homogenize_extension(A)
    assert same_presentation(specialize(H, 1), A)
    assert same_presentation(specialize(H, 0), gr_presentation(A, require_graded_sigma=False))


def test_non_filtered_cannot_be_homogenized(entry):
    with pytest.raises(ContractError):
        homogenize_extension(entry('non-filtered').extension)


def test_gr_needs_graded_sigma(entry):
    A = entry('kt-general').extension
    with pytest.raises(ContractError):
        gr_presentation(A)
    G = gr_presentation(A, require_graded_sigma=False)
    order = G.base.order
    assert G.sigma[0].image('t').format(order) == '2*t'
    assert G.delta[0].image('t').format(order) == 't^2'


def test_ring_homogenization_keeps_confluence():
    T = ('t1', 't2')
    R = RingPresentation('lie', T, (Rule(('t2', 't1'), FreePoly(T, {('t1', 't2'): 1, ('t1',): 1})),))
    HR = homogenize_ring(R)
    assert HR.generators == ('z', 't1', 't2')
    assert HR.format_rules() == ['t2*t1 -> t1*t2 + z*t1', 't1*z -> z*t1', 't2*z -> z*t2']
    assert check_confluence(HR).confluent
    back = specialize_ring(HR, 'z', 1)
    assert back.rules == R.rules


def test_specialization_values(weyl1):
    H = homogenize_extension(weyl1)
    with pytest.raises(DomainError):
        specialize_ring(H.base, 'z', 2)


def test_graded_conditions_locate_a_low_degree_delta(weyl1):
    H = homogenize_extension(weyl1)
    R = H.base
    # delta(t) = z instead of z^2
    broken = replace(H, delta=(DerivSpec.from_maps({'z': r_zero(R), 't': r_gen(R, 'z')}, H.sigma[0]),))
    report = verify_graded_conditions(broken)
    assert not report.passed
    failed = report.failures()
    assert [v.condition for v in failed] == ['delta_1(t) homogeneous of degree 2']
    assert failed[0].witness == 'z'
