from .graded import (
    FiltrationTable, HilbertTable, ReesComparison, check_z_regular, dimension_frame, filtration_dims,
    hilbert_graded, rees_vs_homog, ring_dims, z_regularity_report,
)
from .homog import (
    GradedExtensionPresentation, GradedPresentation, as_graded, canonical_relations, gr_presentation,
    homogenize_extension, homogenize_ring, specialize, specialize_ring, verify_graded_conditions,
)

__all__ = [
    'FiltrationTable', 'HilbertTable', 'ReesComparison', 'check_z_regular', 'dimension_frame',
    'filtration_dims', 'hilbert_graded', 'rees_vs_homog', 'ring_dims', 'z_regularity_report',
    'GradedExtensionPresentation', 'GradedPresentation', 'as_graded', 'canonical_relations',
    'gr_presentation', 'homogenize_extension', 'homogenize_ring', 'specialize', 'specialize_ring',
    'verify_graded_conditions',
]
