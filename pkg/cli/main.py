"""
pbwforge command-line driver

Usage:
    python -m cli check catalog:weyl-1
    python -m cli nf catalog:weyl-1 "x*t^2"
    python -m cli hilbert path/to/file.pbw --degree 12 --csv dims.csv
    python -m cli report catalog:usl2 --json

Exit codes: 0 all checks pass, 1 a check failed, 2 input or parse error.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional

from algebra.errors import CatalogError, ContractError, ParseError, PBWError
from utils.config import FILTRATION_MODES
from utils.logger import get_logger, setup_logging

from .catalog import available, catalog, source
from .commands import (
    CommandResult, run_check, run_gr, run_hilbert, run_homogenize, run_nf, run_report,
)
from .dsl import PresentationFile, parse
from .report import DiagnosticModel, Report


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

CATALOG_PREFIX = 'catalog:'

logger = get_logger('cli')


def load(target: str) -> PresentationFile:
    """
    Read a presentation from a file path or a catalog:<name> reference

    Raises:
        ParseError: the text has diagnostics
        CatalogError: unknown catalog entry
        OSError: unreadable file
    """
    if target.startswith(CATALOG_PREFIX):
        return catalog(target[len(CATALOG_PREFIX):])
    path = Path(target)
    if not path.exists():
        raise FileNotFoundError(f"{path} not found. Use catalog:<name> for shipped presentations.")
    pf = parse(path.read_text(encoding='utf-8'))
    if pf.diagnostics:
        raise ParseError(pf.diagnostics)
    return pf


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='pbwforge',
        description='Skew PBW extensions: checks, homogenization, associated graded algebras, Hilbert tables',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='Print the JSON report instead of text')
    common.add_argument('--verbose', action='store_true', help='Show INFO log messages on the console')
    common.add_argument('--no-log-file', action='store_true', help='Do not write logs/pbwforge.log')

    degree = argparse.ArgumentParser(add_help=False)
    degree.add_argument('--degree', type=int, default=None, help='Degree bound N (default: file option or 10)')
    degree.add_argument('--csv', type=Path, default=None, help='Also write the dimension tables as CSV')

    filtration = argparse.ArgumentParser(add_help=False)
    filtration.add_argument('--filtration', choices=FILTRATION_MODES, default=None,
                            help='Filtration on the coefficient ring (default: file option or standard)')

    sub = parser.add_subparsers(dest='command', required=True)
    check = sub.add_parser('check', parents=[common, filtration], help='Confluence and sigma-filtered verdicts')
    check.add_argument('file', help='Presentation file or catalog:<name>')
    homogenize = sub.add_parser('homogenize', parents=[common], help='Print H(R) or H(A)')
    homogenize.add_argument('file')
    gr = sub.add_parser('gr', parents=[common], help='Print G(A)')
    gr.add_argument('file')
    gr.add_argument('--graded-sigma', action='store_true',
                    help='Refuse non-graded sigma instead of keeping its degree-1 part')
    nf = sub.add_parser('nf', parents=[common], help='Normal form of an expression')
    nf.add_argument('file')
    nf.add_argument('expression')
    hilbert = sub.add_parser('hilbert', parents=[common, degree], help='Dimension tables up to degree N')
    hilbert.add_argument('file')
    report = sub.add_parser('report', parents=[common, degree, filtration], help='Full pipeline report')
    report.add_argument('file')
    report.add_argument('--seed', type=int, default=None, help='Seed for sampled property checks')
    entries = sub.add_parser('catalog', parents=[common], help='List catalog entries or print one')
    entries.add_argument('name', nargs='?', default=None)
    return parser


def dispatch(args: argparse.Namespace) -> Optional[CommandResult]:
    if args.command == 'catalog':
        if args.name is None:
            print('\n'.join(available()))
        else:
            print(source(args.name), end='')
        return None

    pf = load(args.file)
    if args.command == 'check':
        return run_check(pf, args.filtration)
    if args.command == 'homogenize':
        return run_homogenize(pf)
    if args.command == 'gr':
        return run_gr(pf, require_graded_sigma=args.graded_sigma)
    if args.command == 'nf':
        return run_nf(pf, args.expression)
    if args.command == 'hilbert':
        return run_hilbert(pf, args.degree)
    return run_report(pf, args.degree, args.filtration, args.seed)


def _input_failure(args: argparse.Namespace, exc: Exception) -> int:
    diagnostics = getattr(exc, 'diagnostics', [])
    if args.json:
        report = Report(
            command=args.command, passed=False,
            diagnostics=[DiagnosticModel(line=d.line, column=d.column, message=d.message) for d in diagnostics],
        )
        print(report.to_json())
    target = getattr(args, 'file', None) or getattr(args, 'name', '')
    if diagnostics:
        for d in diagnostics:
            print(f"✗ {target}: {d}", file=sys.stderr)
    else:
        print(f"✗ {args.command}: {exc}", file=sys.stderr)
    return EXIT_INPUT


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(verbose=args.verbose, log_to_file=not args.no_log_file)

    try:
        result = dispatch(args)
    except (ParseError, CatalogError, OSError) as exc:
        return _input_failure(args, exc)
    except ContractError as exc:
        logger.warning(f"{args.command.upper()} | {exc}")
        print(f"✗ {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (PBWError, ValueError) as exc:
        return _input_failure(args, exc)

    if result is None:
        return EXIT_OK
    if getattr(args, 'csv', None) is not None and result.frame is not None:
        result.frame.to_csv(args.csv, index=False)
        logger.info(f"{args.command.upper()} | tables written to {args.csv}")
    print(result.report.to_json() if args.json else result.text)
    return result.exit_code


if __name__ == '__main__':
    sys.exit(main())
