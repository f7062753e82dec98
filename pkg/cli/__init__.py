from .catalog import available, catalog
from .commands import CommandResult, run_check, run_gr, run_hilbert, run_homogenize, run_nf, run_report
from .dsl import Diagnostic, PresentationFile, emit, parse, parse_expression, parse_or_raise
from .report import Report

__all__ = [
    'available', 'catalog',
    'CommandResult', 'run_check', 'run_gr', 'run_hilbert', 'run_homogenize', 'run_nf', 'run_report',
    'Diagnostic', 'PresentationFile', 'emit', 'parse', 'parse_expression', 'parse_or_raise',
    'Report',
]
