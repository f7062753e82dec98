"""
Commands
One function per CLI subcommand; each returns a CommandResult carrying the
versioned Report, the human-readable text and any dimension tables
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Union

import pandas as pd

from algebra.coeffring import RingPresentation, check_confluence, reduce
from algebra.errors import ContractError, StructuralError
from algebra.sampling import property_report
from algebra.skewext import (
    ExtensionPresentation, a_from_poly, check_bijective, check_connected, check_sigma_filtered,
    same_presentation,
)
from algebra.verdicts import VerdictReport
from utils.logger import get_logger
from pipelines.graded import (
    dimension_frame, filtration_dims, hilbert_graded, rees_vs_homog, z_regularity_report,
)
from pipelines.homog import (
    GradedExtensionPresentation, GradedPresentation, gr_presentation, homogenize_extension,
    homogenize_ring, specialize, verify_graded_conditions,
)

from .dsl import PresentationFile, emit, parse_expression
from .report import Report


logger = get_logger('commands')


@dataclass
class CommandResult:
    report: Report
    text: str = ''
    frame: Optional[pd.DataFrame] = None
    sections: List[VerdictReport] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        return 0 if self.report.passed else 1


def _new_report(command: str, pf: PresentationFile, degree: Optional[int] = None,
                filtration: Optional[str] = None) -> Report:
    return Report(
        command=command,
        presentation=pf.presentation.name,
        degree=degree,
        filtration=filtration,
    )


def _attach(result: CommandResult, section: VerdictReport) -> bool:
    result.sections.append(section)
    return result.report.add_section(section)


def _is_graded(P: Union[RingPresentation, ExtensionPresentation]) -> bool:
    return isinstance(P, (GradedPresentation, GradedExtensionPresentation))


# ============================================================
# check
# ============================================================

def _confluence_section(R: RingPresentation) -> VerdictReport:
    confluence = R._cache.get('confluence') or check_confluence(R)
    R._cache['confluence'] = confluence
    section = VerdictReport(title=f'confluence: {R.name}')
    section.add('rule set valid', not confluence.structural, '; '.join(confluence.structural) or None)
    section.add('overlaps resolve', confluence.confluent, '; '.join(confluence.witnesses[:3]) or None)
    section.notes.append(f'{confluence.overlaps_checked} overlaps, {confluence.words_checked} words compared')
    return section


def _presentation_section(A: ExtensionPresentation) -> VerdictReport:
    section = VerdictReport(title=f'presentation: {A.name}')
    for k, (s, d) in enumerate(zip(A.sigma, A.delta), start=1):
        section.add(f'sigma_{k} well defined', s.verified)
        section.add(f'delta_{k} well defined', d.verified)
    section.add('connected', check_connected(A))
    bijective = check_bijective(A)
    if bijective.status == 'unverified':
        section.notes.append('bijectivity unverified: no inverse tables')
    else:
        section.add('bijective', bijective.status == 'verified', '; '.join(bijective.witnesses) or None)
    return section


def run_check(pf: PresentationFile, filtration: Optional[str] = None) -> CommandResult:
    """Confluence, well-definedness, sigma-filtered verdict, connectedness and bijectivity"""
    filtration = filtration or pf.filtration
    P = pf.presentation
    result = CommandResult(_new_report('check', pf, filtration=filtration))
    base = P if isinstance(P, RingPresentation) else P.base
    _attach(result, _confluence_section(base))
    if isinstance(P, ExtensionPresentation):
        _attach(result, _presentation_section(P))
        _attach(result, check_sigma_filtered(P, filtration))
        if _is_graded(P):
            _attach(result, verify_graded_conditions(P))
    result.text = render(result)
    return result


# ============================================================
# homogenize / gr
# ============================================================

def homogenize(P: Union[RingPresentation, ExtensionPresentation]):
    if isinstance(P, RingPresentation):
        return homogenize_ring(P)
    return homogenize_extension(P)


def run_homogenize(pf: PresentationFile) -> CommandResult:
    """H(R) or H(A) as DSL text"""
    H = homogenize(pf.presentation)
    result = CommandResult(_new_report('homogenize', pf))
    if isinstance(H, ExtensionPresentation):
        _attach(result, verify_graded_conditions(H))
    result.text = emit(H)
    result.report.artifacts['homogenized'] = result.text
    return result


def run_gr(pf: PresentationFile, require_graded_sigma: bool = False) -> CommandResult:
    """G(A) as DSL text"""
    P = pf.presentation
    if not isinstance(P, ExtensionPresentation):
        raise StructuralError(f"{P.name!r} is a ring; gr needs an extension block")
    G = gr_presentation(P, require_graded_sigma=require_graded_sigma)
    result = CommandResult(_new_report('gr', pf))
    result.text = emit(G)
    result.report.artifacts['gr'] = result.text
    return result


# ============================================================
# nf
# ============================================================

def run_nf(pf: PresentationFile, expression: str) -> CommandResult:
    """Normal form of an expression over the generators and variables"""
    P = pf.presentation
    params = dict(P.parameters if isinstance(P, RingPresentation) else P.base.parameters)
    if isinstance(P, RingPresentation):
        f = parse_expression(expression, P.alphabet, params)
        text = reduce(f, P).format(P.order)
    else:
        f = parse_expression(expression, P.base.alphabet | frozenset(P.variables), params)
        text = a_from_poly(f, P).format(P)
    result = CommandResult(_new_report('nf', pf))
    result.report.artifacts['normal_form'] = text
    result.text = text
    return result


# ============================================================
# hilbert
# ============================================================

def dimension_tables(P: Union[RingPresentation, ExtensionPresentation], N: int) -> Dict[str, List[int]]:
    """
    Graded input: its Hilbert table. Filtered extension: dim F_p(A), the
    increments, dim G(A)_p and, when sigma-filtered, dim H(A)_p.
    """
    if isinstance(P, RingPresentation) or _is_graded(P):
        return {'hilbert': hilbert_graded(P, N).dims}
    filtration = filtration_dims(P, N)
    tables = {'filtration': filtration.cum_dims, 'filtration_increments': filtration.increments()}
    try:
        tables['gr'] = hilbert_graded(gr_presentation(P, require_graded_sigma=False), N).dims
    except ContractError as exc:
        logger.warning(f"HILBERT | {P.name} | no G(A) table: {exc}")
    try:
        tables['homogenized'] = hilbert_graded(homogenize_extension(P), N).dims
    except ContractError as exc:
        logger.warning(f"HILBERT | {P.name} | no H(A) table: {exc}")
    return tables


def run_hilbert(pf: PresentationFile, degree: Optional[int] = None) -> CommandResult:
    N = pf.degree if degree is None else degree
    result = CommandResult(_new_report('hilbert', pf, degree=N))
    result.report.tables.update(dimension_tables(pf.presentation, N))
    result.frame = dimension_frame(result.report.tables)
    result.text = render(result)
    return result


# ============================================================
# report
# ============================================================

def _round_trip_section(A: ExtensionPresentation, H: GradedExtensionPresentation) -> VerdictReport:
    section = VerdictReport(title=f'specializations: {A.name}')
    section.add(f'{H.central} -> 1 reproduces A', same_presentation(specialize(H, 1), A))
    gr_ok = same_presentation(specialize(H, 0), gr_presentation(A, require_graded_sigma=False))
    section.add(f'{H.central} -> 0 equals G(A)', gr_ok)
    return section


def _dimension_section(A: ExtensionPresentation, tables: Dict[str, List[int]], N: int) -> VerdictReport:
    section = VerdictReport(title=f'dimensions: {A.name}')
    comparison = rees_vs_homog(A, N)
    bad = [p for p, ok in enumerate(comparison.agree) if not ok]
    section.add('dim Rees(A)_p = dim H(A)_p', comparison.equal, f'p = {bad[0]}' if bad else None)
    if 'gr' in tables:
        increments, gr = tables['filtration_increments'], tables['gr']
        bad = [p for p in range(1, N + 1) if increments[p] != gr[p]]
        section.add('dim G(A)_p = dim F_p(A) - dim F_(p-1)(A)', not bad, f'p = {bad[0]}' if bad else None)
    return section


def run_report(pf: PresentationFile, degree: Optional[int] = None, filtration: Optional[str] = None,
               seed: Optional[int] = None) -> CommandResult:
    """
    Full pipeline: confluence, well-definedness, sigma-filtered verdict,
    homogenization, graded verification, specializations, dimension tables,
    z-regularity and sampled element properties
    """
    N = pf.degree if degree is None else degree
    filtration = filtration or pf.filtration
    check = run_check(pf, filtration)
    result = CommandResult(check.report.model_copy(update={'command': 'report', 'degree': N}, deep=True),
                           sections=list(check.sections))
    P = pf.presentation
    if not result.report.passed:
        result.report.sections[-1].notes.append('later stages skipped: checks failed')
        result.text = render(result)
        return result

    if isinstance(P, RingPresentation) or _is_graded(P):
        result.report.tables.update(dimension_tables(P, N))
        if getattr(P, 'central', None) is not None:
            _attach(result, z_regularity_report(P, N))
    elif not check_sigma_filtered(P).passed:
        # only reachable under the trivial filtration
        result.report.sections[-1].notes.append('homogenization skipped: not sigma-filtered under the standard filtration')
        result.report.tables.update(dimension_tables(P, N))
        _attach(result, property_report(P, seed=seed, filtration=filtration))
    else:
        H = homogenize_extension(P)
        result.report.artifacts['homogenized'] = emit(H)
        _attach(result, verify_graded_conditions(H))
        _attach(result, _round_trip_section(P, H))
        result.report.tables.update(dimension_tables(P, N))
        _attach(result, _dimension_section(P, result.report.tables, N))
        _attach(result, z_regularity_report(H, N))
        _attach(result, property_report(P, seed=seed, filtration=filtration))
    result.frame = dimension_frame(result.report.tables)
    result.text = render(result)
    logger.info(f"REPORT | {P.name} | N: {N} | {'pass' if result.report.passed else 'fail'}")
    return result


# ============================================================
# Text output
# ============================================================

def render(result: CommandResult) -> str:
    report = result.report
    lines = ['=' * 60, f'{report.command}: {report.presentation}', '=' * 60]
    for section in report.sections:
        lines.append(f'\n{section.title}')
        for verdict in section.verdicts:
            mark = '✓' if verdict.passed else '✗'
            witness = f'  ({verdict.witness})' if verdict.witness else ''
            lines.append(f'  {mark} {verdict.condition}{witness}')
        lines.extend(f'  - {note}' for note in section.notes)
    if result.frame is not None and not result.frame.empty:
        lines.append('')
        lines.append(result.frame.to_string(index=False))
    lines.append('')
    lines.append(f"{'✓' if report.passed else '✗'} {'all checks pass' if report.passed else 'check failed'}")
    lines.append('=' * 60)
    return '\n'.join(lines)
