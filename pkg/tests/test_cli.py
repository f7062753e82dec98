# Catalog entries, command functions and the pbwforge entry point
import json

import pytest

from algebra.errors import CatalogError
from algebra.skewext import same_presentation
from cli.catalog import MAX_WEYL_RANK, available, catalog, weyl_source
from cli.commands import run_check, run_homogenize, run_report
from cli.dsl import parse_or_raise
from cli.main import main


SIGMA_FILTERED = ['weyl-1', 'weyl-2', 'jordan-ext', 'kt-general', 'usl2', 'type-I', 'type-II',
                  'quantum-plane', 'quantum-weyl', 'lie-2d', 'jordan-plane', 'jordan-deformed']


def test_available_lists_shipped_entries():
    names = available()
    assert len(names) == 13
    assert names == sorted(names)
    assert {'weyl-1', 'usl2', 'non-filtered', 'type-II'} <= set(names)


def test_unknown_entry_lists_what_exists():
    with pytest.raises(CatalogError) as info:
        catalog('nope')
    assert 'usl2' in info.value.available


def test_weyl_entries_are_generated(entry):
    A3 = catalog('weyl-3').extension
    assert A3.variables == ('x1', 'x2', 'x3')
    assert A3.base.generators == ('t1', 't2', 't3')
    assert same_presentation(parse_or_raise(weyl_source(2)).extension, entry('weyl-2').extension)


@pytest.mark.parametrize('n', [0, MAX_WEYL_RANK + 1])
def test_weyl_rank_bounds(n):
    with pytest.raises(ValueError):
        weyl_source(n)


@pytest.mark.parametrize('name', SIGMA_FILTERED)
def test_check_passes(entry, name):
    result = run_check(entry(name))
    assert result.report.passed, result.text
    assert result.exit_code == 0


def test_check_names_failed_condition(entry):
    result = run_check(entry('non-filtered'))
    assert result.exit_code == 1
    assert '✗ delta_1 filtered' in result.text


def test_homogenize_emits_graded_text(entry):
    result = run_homogenize(entry('weyl-1'))
    assert result.report.passed
    assert 'central z' in result.text
    assert result.report.artifacts['homogenized'] == result.text


def test_report_is_deterministic(entry):
    first = run_report(entry('weyl-1'), degree=4, seed=7).report.to_json()
    second = run_report(entry('weyl-1'), degree=4, seed=7).report.to_json()
    assert first == second


def test_report_tables(entry):
    report = run_report(entry('usl2'), degree=6).report
    assert report.passed
    assert report.tables['homogenized'] == [1, 4, 10, 20, 35, 56, 84]
    assert report.tables['homogenized'] == report.tables['filtration']
    assert 'homogenized' in report.artifacts


def test_report_under_trivial_filtration(entry):
    result = run_report(entry('non-filtered'), degree=4, filtration='trivial')
    assert result.report.passed, result.text
    assert 'homogenized' not in result.report.tables
    assert result.report.tables['filtration'] == [1, 3, 6, 10, 15]
    assert any('homogenization skipped' in note for section in result.report.sections for note in section.notes)


def test_failed_check_stops_the_report(entry):
    report = run_report(entry('non-filtered'), degree=4).report
    assert not report.passed
    assert report.tables == {}
    assert 'later stages skipped: checks failed' in report.sections[-1].notes


# ============================================================
# Entry point
# ============================================================

def run(argv):
    return main(argv + ['--no-log-file'])


def test_exit_codes(capsys):
    assert run(['check', 'catalog:weyl-1']) == 0
    assert run(['check', 'catalog:non-filtered']) == 1
    assert run(['check', 'catalog:non-filtered', '--filtration', 'trivial']) == 0
    assert run(['homogenize', 'catalog:non-filtered']) == 1
    assert run(['check', 'catalog:nope']) == 2
    assert run(['check', 'missing.pbw']) == 2
    capsys.readouterr()


def test_missing_file_hint(capsys):
    assert run(['check', 'missing.pbw']) == 2
    assert 'catalog:<name>' in capsys.readouterr().err


def test_normal_form(capsys):
    assert run(['nf', 'catalog:weyl-1', 'x*t^2']) == 0
    assert capsys.readouterr().out.strip() == 't^2*x + 2*t'


def test_json_report(capsys):
    assert run(['check', 'catalog:weyl-1', '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['schema'] == 1
    assert report['pass'] is True
    assert report['command'] == 'check'


def test_parse_errors_are_reported(tmp_path, capsys):
    path = tmp_path / 'broken.pbw'
    path.write_text('ring K[t]\ngens t\nfrobnicate\n', encoding='utf-8')
    assert run(['check', str(path), '--json']) == 2
    captured = capsys.readouterr()
    report = json.loads(captured.out)
    assert report['pass'] is False
    assert report['diagnostics'][0]['line'] == 3
    assert 'frobnicate' in captured.err


def test_hilbert_of_homogenized_file(tmp_path, capsys):
    assert run(['homogenize', 'catalog:usl2']) == 0
    path = tmp_path / 'usl2-h.pbw'
    path.write_text(capsys.readouterr().out, encoding='utf-8')
    csv = tmp_path / 'dims.csv'
    assert run(['hilbert', str(path), '--degree', '6', '--csv', str(csv), '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['tables']['hilbert'] == [1, 4, 10, 20, 35, 56, 84]
    assert csv.read_text(encoding='utf-8').splitlines()[0].startswith('p')


def test_catalog_command(capsys):
    assert run(['catalog']) == 0
    assert 'usl2' in capsys.readouterr().out.split()
    assert run(['catalog', 'weyl-1']) == 0
    assert 'extension weyl-1' in capsys.readouterr().out
