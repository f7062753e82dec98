# Presentation DSL: parsing, diagnostics, emission
import pytest
from hypothesis import given, settings, strategies as st

from algebra.errors import ParseError
from algebra.freealg import FreePoly
from algebra.skewext import same_presentation
from cli.catalog import available, source
from cli.dsl import Diagnostic, emit, parse, parse_expression, parse_or_raise

WEYL_2 = """\
ring K[t1,t2]
gens t1 t2
rel t2*t1 -> t1*t2
extension weyl-2 over K[t1,t2]
vars x1 x2
sigma 1: t1 -> t1; t2 -> t2
sigma 2: t1 -> t1; t2 -> t2
delta 1: t1 -> 1; t2 -> 0
delta 2: t1 -> 0; t2 -> 1
cross 2 1 : d = 1
"""


def messages(result):
    return [d.message for d in result.diagnostics]


def test_weyl_source_parses():
    result = parse(source('weyl-1'))
    assert result.ok
    assert result.extension.variables == ('x',)
    assert result.ring.generators == ('t',)
    assert result.degree == 10


def test_incomplete_sigma_table():
    result = parse(WEYL_2.replace('sigma 1: t1 -> t1; t2 -> t2', 'sigma 1: t1 -> t1'))
    assert not result.ok
    assert messages(result) == ["incomplete sigma table for 'x1': missing t2"]
    assert result.diagnostics[0].line == 6


def test_degree_increasing_rule():
    result = parse('ring R\ngens t1 t2\nrel t1t2 -> t2t1t1\n')
    assert messages(result) == ["rule violates degree bound"]
    assert result.diagnostics[0].line == 3


def test_rule_must_be_deglex_decreasing():
    result = parse('ring R\ngens t1 t2\nrel t1*t2 -> t2*t1\n')
    assert messages(result) == ["right-hand side is not deglex-smaller than the left-hand side"]


def test_undeclared_identifier():
    result = parse(source('weyl-1').replace('delta 1: t -> 1', 'delta 1: t -> s'))
    assert messages(result) == ["undeclared identifier 's'"]


def test_missing_cross_relation():
    text = source('usl2').replace('cross 3 2 : d = 1, r2 = -2\n', '')
    assert messages(parse(text)) == ["missing cross relation for h*f"]


def test_cross_relation_needs_d():
    assert "cross relation needs d" in messages(parse(WEYL_2.replace('d = 1', 'r0 = 1')))


def test_sigma_must_respect_relations():
    text = source('jordan-ext').replace('sigma 1: t1 -> t1; t2 -> t2 + 2*t1', 'sigma 1: t1 -> t2; t2 -> t1')
    assert "sigma table for 'x1' is not a well-defined endomorphism" in messages(parse(text))


def test_non_confluent_ring():
    result = parse('ring R\ngens x y\nrel x*y -> x\nrel y*x -> y\n')
    assert len(result.diagnostics) == 1
    assert result.diagnostics[0].message.startswith('rewriting system is not confluent')


def test_unknown_statement_and_total_parsing():
    result = parse('ring R\nfrobnicate 3\n')
    assert result.diagnostics == [Diagnostic(2, 1, "unknown statement 'frobnicate'")]
    assert str(result.diagnostics[0]) == "line 2, col 1: unknown statement 'frobnicate'"
    assert not parse('param x = ' + '(' * 5000 + '1').ok


def test_missing_ring():
    assert messages(parse('# nothing here\n')) == ["missing ring declaration"]


def test_parse_or_raise():
    with pytest.raises(ParseError) as excinfo:
        parse_or_raise('ring R\ngens t\nrel t -> t\n')
    assert excinfo.value.diagnostics[0].line == 3


def test_expressions():
    alphabet = ('t', 'x')
    f = parse_expression('x*t^2 - 3/2 + (t - 1)x', alphabet)
    expected = FreePoly(alphabet, {('x', 't', 't'): 1, ('t', 'x'): 1, ('x',): -1, (): '-3/2'})
    assert f == expected
    assert parse_expression('tx', alphabet) == FreePoly(alphabet, {('t', 'x'): 1})
    assert parse_expression('c*t', alphabet, {'c': 2}) == FreePoly(alphabet, {('t',): 2})
    for bad in ('t^', '1/t', '(t', 't + * x', 'y'):
        with pytest.raises(ParseError):
            parse_expression(bad, alphabet)


def test_options_and_notes():
    result = parse(source('usl2') + 'option filtration = trivial\n')
    assert result.degree == 12
    assert result.filtration == 'trivial'
    assert result.notes == ['homogenized relations are usually written with t for the central variable z']
    assert "degree must be an integer between 0 and 12" in messages(parse('ring K\noption degree = 99\n'))


def first_message(text):
    result = parse(text)
    assert not result.ok
    return result.diagnostics[0]


def test_oversized_literal_is_a_diagnostic():
    diagnostic = first_message('ring K[t]\ngens t\nparam c = ' + '1' * 5000 + '\n')
    assert diagnostic.line == 3
    assert diagnostic.message == 'integer literal longer than 40 digits'


def test_expansion_is_bounded():
    diagnostic = first_message('ring K[a,b,c]\ngens a b c\nparam p = (a+b+c)^20\n')
    assert diagnostic.line == 3
    assert diagnostic.message == 'expansion exceeds 5000 terms'
    assert first_message('ring K[t]\ngens t\nrel t^64*t -> 1\n').message == 'expression degree exceeds 64'
    assert first_message('ring K\nparam c = (10^64)^64\n').message == 'coefficients exceed 4096 bits'


def test_oversized_numbers_in_statements():
    assert first_message('ring K\noption degree = ' + '9' * 5000 + '\n').line == 2
    text = WEYL_2.replace('cross 2 1', 'cross ' + '2' * 5000 + ' 1')
    assert first_message(text).line == 10
    with pytest.raises(ParseError):
        parse_expression('9' * 5000, ('t',))


@pytest.mark.parametrize('name', available())
def test_emit_round_trip(name):
    first = parse_or_raise(source(name))
    text = emit(first)
    second = parse_or_raise(text)
    assert same_presentation(first.extension, second.extension)
    assert (second.degree, second.filtration) == (first.degree, first.filtration)
    assert emit(second) == text


keywords = st.sampled_from(['ring', 'gens', 'param', 'rel', 'extension', 'vars', 'sigma', 'delta',
                            'cross', 'option', 'central', 'note', 'sigma_inv', '#'])
junk = st.text(alphabet='tx12 +-*/^()->:;=,', max_size=20)
lines = st.lists(st.tuples(keywords, junk).map(' '.join), max_size=6).map('\n'.join)


@settings(max_examples=200, deadline=None)
@given(st.one_of(st.text(max_size=60), lines))
def test_parse_never_raises(text):
    result = parse(text)
    assert result.ok or all(isinstance(d, Diagnostic) for d in result.diagnostics)
