# Seeded sampling and the properties section of reports
import pytest

from algebra.coeffring import normal_words
from algebra.errors import ContractError
from algebra.sampling import make_rng, property_report, random_aelements, random_relement
from algebra.skewext import FILTRATION_TRIVIAL, a_tdeg, free_filtered_decomposition, in_filtration, lr_degree


def test_same_seed_same_elements(weyl2):
    first = random_aelements(weyl2, make_rng(5), 10, 3)
    second = random_aelements(weyl2, make_rng(5), 10, 3)
    assert first == second


def test_elements_respect_degree_bound(entry):
    A = entry('jordan-ext').extension
    for f in random_aelements(A, make_rng(11), 30, 3):
        assert not f.is_zero()
        assert in_filtration(f, 3)
        assert a_tdeg(f) <= 3


def test_ring_elements_are_normal(entry):
    R = entry('jordan-ext').extension.base
    allowed = {w for d in range(3) for w in normal_words(R, d)}
    rng = make_rng(0)
    for _ in range(20):
        c = random_relement(R, rng, 2)
        assert set(c.poly.words()) <= allowed


SIGMA_FILTERED = ['weyl-1', 'weyl-2', 'jordan-ext', 'kt-general', 'usl2', 'type-I', 'type-II',
                  'quantum-plane', 'quantum-weyl', 'lie-2d', 'jordan-plane', 'jordan-deformed']


@pytest.mark.parametrize('name', SIGMA_FILTERED)
def test_property_report_passes(entry, name):
    report = property_report(entry(name).extension)
    assert report.passed, report.failures()
    assert [v.condition for v in report.verdicts] == [
        'tdeg(fg) <= tdeg(f) + tdeg(g) on 200 pairs',
        'F_p(R) F_q(A) in F_(p+q)(A) on 200 pairs',
        'associativity on 100 triples',
        'products certified in F_6(A) on 100 elements',
    ]


def test_trivial_filtration_on_non_filtered_entry(entry):
    report = property_report(entry('non-filtered').extension, filtration=FILTRATION_TRIVIAL)
    assert report.passed, report.failures()
    assert report.verdicts[-1].condition == 'trivial-filtration degree is additive on 200 pairs'


@pytest.mark.parametrize('name', ['usl2', 'type-I', 'type-II', 'weyl-1', 'jordan-ext'])
def test_trivial_refiltering_agrees_with_standard(entry, name):
    A = entry(name).extension
    trivial = property_report(A, pairs=50, triples=20, filtration=FILTRATION_TRIVIAL)
    assert trivial.passed, trivial.failures()
    for f in random_aelements(A, make_rng(9), 50, 3):
        standard = a_tdeg(f)
        assert a_tdeg(f, FILTRATION_TRIVIAL) == lr_degree(f) <= standard
        if not A.base.generators:
            # scalar coefficients: both filtrations agree
            assert a_tdeg(f, FILTRATION_TRIVIAL) == standard


def test_certificates_need_the_right_bound(weyl1):
    f = random_aelements(weyl1, make_rng(4), 1, 3)[0]
    assert free_filtered_decomposition(f, 3, weyl1).holds
    with pytest.raises(ContractError):
        free_filtered_decomposition(f, a_tdeg(f) - 1, weyl1)
