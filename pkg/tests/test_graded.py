# Hilbert tables, filtration dimensions, Rees comparison, z-regularity
import pytest
from scipy.special import comb

from algebra.coeffring import RingPresentation, Rule
from algebra.errors import StructuralError
from algebra.freealg import FreePoly
from pipelines.graded import (
    _free_module_dims, check_z_regular, dimension_frame, filtration_dims, hilbert_graded, rees_vs_homog,
    ring_dims, z_regularity_report,
)
from pipelines.homog import GradedPresentation, gr_presentation, homogenize_extension, specialize

FILTERED_BIJECTIVE = [
    'weyl-1', 'weyl-2', 'jordan-ext', 'kt-general', 'usl2', 'type-I', 'type-II',
    'quantum-plane', 'quantum-weyl', 'lie-2d', 'jordan-plane', 'jordan-deformed',
]


@pytest.mark.parametrize('name', ['usl2', 'type-I', 'type-II'])
def test_three_variable_hilbert_series(entry, name):
    H = homogenize_extension(entry(name).extension)
    table = hilbert_graded(H, 12)
    assert table.dims == [comb(p + 3, 3, exact=True) for p in range(13)]
    assert table.cross_checked_to == 4


@pytest.mark.parametrize('n', [1, 2])
def test_homogenized_weyl_hilbert_series(entry, n):
    H = homogenize_extension(entry(f'weyl-{n}').extension)
    assert hilbert_graded(H, 10).dims == [comb(p + 2 * n, 2 * n, exact=True) for p in range(11)]


def test_usl2_opening_terms(usl2):
    assert hilbert_graded(homogenize_extension(usl2), 5).dims == [1, 4, 10, 20, 35, 56]


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_rees_matches_homogenization(entry, name):
    comparison = rees_vs_homog(entry(name).extension, 10)
    assert comparison.equal
    assert comparison.rees == comparison.homogenized


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_associated_graded_dimensions(entry, name):
    A = entry(name).extension
    increments = filtration_dims(A, 10).increments()
    gr = hilbert_graded(gr_presentation(A, require_graded_sigma=False), 10).dims
    assert gr[1:] == increments[1:]


def test_filtration_dims_weyl1(weyl1):
    # dim F_p(A_1) = (p + 1)(p + 2) / 2
    assert filtration_dims(weyl1, 5).cum_dims == [1, 3, 6, 10, 15, 21]


def test_non_confluent_ring_has_no_dimensions():
    XY = ('x', 'y')
    R = RingPresentation('broken', XY, (
        Rule(('x', 'y'), FreePoly(XY, {('x',): 1})),
        Rule(('y', 'x'), FreePoly(XY, {('y',): 1})),
    ))
    with pytest.raises(StructuralError):
        ring_dims(R, 3)


def test_negative_bound_rejected(weyl1):
    with pytest.raises(ValueError):
        filtration_dims(weyl1, -1)


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_z_regularity(entry, name):
    H = homogenize_extension(entry(name).extension)
    report = z_regularity_report(H, 10)
    assert report.passed
    assert len(report.verdicts) == 11
    assert check_z_regular(H, 4)


def test_z_regularity_needs_central_variable(weyl1):
    with pytest.raises(StructuralError):
        z_regularity_report(weyl1, 3)


def test_dimension_frame_aligns_on_degree():
    frame = dimension_frame({'a': [1, 2, 3], 'b': [1, 1]})
    assert list(frame['p']) == [0, 1, 2]
    assert frame['a'].tolist() == [1, 2, 3]
    assert frame['b'].isna().tolist() == [False, False, True]


def test_z_regularity_fails_on_nilpotent_z():
    ZT = ('z', 't')
    R = GradedPresentation('nilpotent', ZT, (
        Rule(('z', 'z'), FreePoly.zero(ZT)),
        Rule(('t', 'z'), FreePoly(ZT, {('z', 't'): 1})),
    ), central='z')
    report = z_regularity_report(R, 3)
    assert [v.passed for v in report.verdicts] == [True, False]
    assert report.verdicts[-1].condition == 'z injective on degree 1'
    assert not check_z_regular(R, 3)


@pytest.mark.parametrize('name', FILTERED_BIJECTIVE)
def test_z_zero_specialization_has_graded_increments(entry, name):
    H = homogenize_extension(entry(name).extension)
    homogenized = hilbert_graded(H, 8).dims
    gr = hilbert_graded(specialize(H, 0), 8).dims
    assert gr[0] == homogenized[0] == 1
    assert all(gr[p] == homogenized[p] - homogenized[p - 1] for p in range(1, 9))


def test_free_module_dimensions_stay_exact():
    # 6 variables over a 6-variable polynomial ring is a 12-variable polynomial ring
    ring = [comb(k + 5, 5, exact=True) for k in range(601)]
    dims = _free_module_dims(ring, 6, 600)
    assert dims[600] == comb(611, 11, exact=True)
    assert dims[600] > 2**63
