"""
Presentation DSL
Line-oriented parser and emitter for ring and extension presentations.
Parsing is total: malformed input yields diagnostics with line and column.

    ring <name>
    gens <id>+
    param <id> = <rational>
    rel <word> -> <expr>
    central <gen>
    extension <name> over <ring>
    vars <id>+
    sigma <i>: <gen> -> <expr>; ...
    sigma_inv <i>: <gen> -> <expr>; ...
    delta <i>: <gen> -> <expr>; ...
    cross <j> <i> : d = <expr>, r0 = <expr>, r<l> = <expr>, ...
    option degree = <int>
    option filtration = standard|trivial
    note <text>
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from algebra.coeffring import (
    DerivSpec, EndoSpec, RElement, RingPresentation, Rule, check_confluence,
    check_well_defined_deriv, check_well_defined_endo, identity_endo, lhs_conflicts, reduce,
    rule_problems, verify_endo,
)
from algebra.errors import ParseError, PBWError
from algebra.freealg import FreePoly, format_poly, format_scalar, format_word
from algebra.skewext import CrossRelation, ExtensionPresentation, build_extension
from pipelines.homog import GradedPresentation, as_graded
from utils.config import DEFAULT_DEGREE, FILTRATION_MODES, MAX_DEGREE
from utils.logger import get_logger


logger = get_logger('dsl')

TOKEN_RE = re.compile(r'\s*(?:(?P<num>\d+)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<arrow>->)|(?P<op>\S))')
MAX_POWER = 64
MAX_LITERAL_DIGITS = 40
MAX_EXPRESSION_DEGREE = 64
MAX_EXPRESSION_TERMS = 5000
MAX_COEFFICIENT_BITS = 4096


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    message: str

    def __str__(self):
        return f'line {self.line}, col {self.column}: {self.message}'


class _Failure(Exception):
    def __init__(self, column: int, message: str):
        super().__init__(message)
        self.column = column
        self.message = message


@dataclass
class PresentationFile:
    ring: Optional[RingPresentation] = None
    extension: Optional[ExtensionPresentation] = None
    degree: int = DEFAULT_DEGREE
    filtration: str = 'standard'
    notes: List[str] = field(default_factory=list)
    diagnostics: List[Diagnostic] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.diagnostics

    @property
    def presentation(self) -> Union[RingPresentation, ExtensionPresentation, None]:
        return self.extension if self.extension is not None else self.ring


# ============================================================
# Expressions
# ============================================================

class _Tokens:
    def __init__(self, text: str, offset: int, names: Sequence[str]):
        self.tokens: List[Tuple[str, str, int]] = []
        by_length = sorted(names, key=len, reverse=True)
        pos = 0
        while pos < len(text):
            match = TOKEN_RE.match(text, pos)
            if match is None or match.end() == pos:
                break
            column = offset + match.start(match.lastgroup) + 1
            kind, value = match.lastgroup, match.group(match.lastgroup)
            if kind == 'id':
                for piece, shift in _split_identifier(value, by_length, column):
                    self.tokens.append(('id', piece, column + shift))
            else:
                self.tokens.append((kind, value, column))
            pos = match.end()
        self.end_column = offset + len(text) + 1
        self.index = 0

    def peek(self) -> Tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ('end', '', self.end_column)

    def take(self) -> Tuple[str, str, int]:
        token = self.peek()
        self.index += 1
        return token


def _split_identifier(value: str, names: Sequence[str], column: int) -> List[Tuple[str, int]]:
    """Greedy longest-match split of juxtaposed names: 't2t1' -> t2, t1"""
    if value in names:
        return [(value, 0)]
    pieces, pos = [], 0
    while pos < len(value):
        for name in names:
            if value.startswith(name, pos):
                pieces.append((name, pos))
                pos += len(name)
                break
        else:
            raise _Failure(column + pos, f"undeclared identifier {value!r}")
    return pieces


def _height(f: FreePoly) -> int:
    return max(c.numerator.bit_length() + c.denominator.bit_length() for _, c in f.items())


class _ExpressionParser:
    """
    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor (['*'|'/'] factor)*
    factor := atom ['^' int]
    atom   := int | name | '(' expr ')'
    """

    def __init__(self, tokens: _Tokens, alphabet: frozenset, params: Dict[str, Fraction]):
        self.tokens = tokens
        self.alphabet = alphabet
        self.params = params

    def parse(self) -> FreePoly:
        value = self.expr()
        kind, text, column = self.tokens.peek()
        if kind != 'end':
            raise _Failure(column, f"unexpected {text!r}")
        return value

    def expr(self) -> FreePoly:
        sign = 1
        kind, text, _ = self.tokens.peek()
        if kind == 'op' and text in '+-':
            self.tokens.take()
            sign = -1 if text == '-' else 1
        value = self.term().scale(sign)
        while True:
            kind, text, _ = self.tokens.peek()
            if kind == 'op' and text in '+-':
                self.tokens.take()
                rhs = self.term()
                value = value + rhs if text == '+' else value - rhs
            else:
                return value

    def _product(self, a: FreePoly, b: FreePoly, column: int) -> FreePoly:
        if a.is_zero() or b.is_zero():
            return a * b
        if a.degree + b.degree > MAX_EXPRESSION_DEGREE:
            raise _Failure(column, f"expression degree exceeds {MAX_EXPRESSION_DEGREE}")
        if len(a) * len(b) > MAX_EXPRESSION_TERMS:
            raise _Failure(column, f"expansion exceeds {MAX_EXPRESSION_TERMS} terms")
        if _height(a) + _height(b) > MAX_COEFFICIENT_BITS:
            raise _Failure(column, f"coefficients exceed {MAX_COEFFICIENT_BITS} bits")
        return a * b

    def _starts_factor(self) -> bool:
        kind, text, _ = self.tokens.peek()
        return kind in ('num', 'id') or (kind == 'op' and text == '(')

    def term(self) -> FreePoly:
        value = self.factor()
        while True:
            kind, text, column = self.tokens.peek()
            if kind == 'op' and text == '*':
                self.tokens.take()
                value = self._product(value, self.factor(), column)
            elif kind == 'op' and text == '/':
                self.tokens.take()
                divisor = self.factor()
                if not divisor.is_scalar() or divisor.is_zero():
                    raise _Failure(column, "division only by nonzero rational constants")
                value = value.scale(1 / divisor.constant_term())
            elif self._starts_factor():
                value = self._product(value, self.factor(), column)
            else:
                return value

    def factor(self) -> FreePoly:
        base = self.atom()
        kind, text, column = self.tokens.peek()
        if kind == 'op' and text == '^':
            self.tokens.take()
            kind, text, column = self.tokens.take()
            if kind != 'num' or len(text) > 2 or int(text) > MAX_POWER:
                raise _Failure(column, f"exponent must be an integer between 0 and {MAX_POWER}")
            result = FreePoly.one(self.alphabet)
            for _ in range(int(text)):
                result = self._product(result, base, column)
            return result
        return base

    def atom(self) -> FreePoly:
        kind, text, column = self.tokens.take()
        if kind == 'num':
            if len(text) > MAX_LITERAL_DIGITS:
                raise _Failure(column, f"integer literal longer than {MAX_LITERAL_DIGITS} digits")
            return FreePoly.scalar(self.alphabet, int(text))
        if kind == 'id':
            if text in self.params:
                return FreePoly.scalar(self.alphabet, self.params[text])
            if text in self.alphabet:
                return FreePoly.monomial(self.alphabet, (text,))
            raise _Failure(column, f"undeclared identifier {text!r}")
        if kind == 'op' and text == '(':
            value = self.expr()
            kind, text, column = self.tokens.take()
            if not (kind == 'op' and text == ')'):
                raise _Failure(column, "expected ')'")
            return value
        raise _Failure(column, f"expected a term, found {text!r}" if text else "expected a term")


def parse_expression(text: str, alphabet, params: Optional[Dict[str, Fraction]] = None,
                     offset: int = 0) -> FreePoly:
    """Evaluate an expression over the given generators; raises ParseError on bad input"""
    alphabet = frozenset(alphabet)
    params = params or {}
    try:
        tokens = _Tokens(text, offset, list(alphabet) + list(params))
        return _ExpressionParser(tokens, alphabet, params).parse()
    except _Failure as failure:
        raise ParseError([Diagnostic(1, failure.column, failure.message)]) from None
    except (ValueError, OverflowError) as exc:
        raise ParseError([Diagnostic(1, offset + 1, f"invalid value: {exc}")]) from None


# ============================================================
# Statements
# ============================================================

@dataclass
class _Table:
    line: int
    column: int
    entries: Dict[str, FreePoly]


@dataclass
class _Cross:
    line: int
    j: int
    i: int
    parts: Dict[str, FreePoly]


class _FileParser:

    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.diagnostics: List[Diagnostic] = []
        self.ring_name: Optional[str] = None
        self.ring_line = 0
        self.generators: List[str] = []
        self.params: Dict[str, Fraction] = {}
        self.rules: List[Tuple[int, Rule]] = []
        self.central: Optional[Tuple[int, str]] = None
        self.ext_name: Optional[str] = None
        self.ext_line = 0
        self.variables: List[str] = []
        self.tables: Dict[str, Dict[int, _Table]] = {'sigma': {}, 'sigma_inv': {}, 'delta': {}}
        self.cross: List[_Cross] = []
        self.degree = DEFAULT_DEGREE
        self.filtration = 'standard'
        self.notes: List[str] = []

    def error(self, line: int, column: int, message: str):
        self.diagnostics.append(Diagnostic(line, column, message))

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.generators)

    def expression(self, text: str, offset: int) -> FreePoly:
        tokens = _Tokens(text, offset, self.generators + list(self.params))
        return _ExpressionParser(tokens, self.alphabet, self.params).parse()

    # -- driver -------------------------------------------------------
    def run(self) -> PresentationFile:
        for number, raw in enumerate(self.lines, start=1):
            line = raw.split('#', 1)[0].rstrip()
            if not line.strip():
                continue
            keyword = line.split()[0]
            start = line.index(keyword)
            rest_offset = start + len(keyword)
            handler = getattr(self, f'_stmt_{keyword}', None)
            if handler is None:
                self.error(number, start + 1, f"unknown statement {keyword!r}")
                continue
            try:
                handler(number, line[rest_offset:], rest_offset)
            except _Failure as failure:
                self.error(number, failure.column, failure.message)
            except PBWError as exc:
                self.error(number, start + 1, str(exc))
            except (ValueError, OverflowError) as exc:
                self.error(number, start + 1, f"invalid value: {exc}")
        result = PresentationFile(degree=self.degree, filtration=self.filtration, notes=self.notes)
        if not self.diagnostics:
            self.assemble(result)
        result.diagnostics = sorted(self.diagnostics, key=lambda d: (d.line, d.column))
        return result

    # -- ring statements ----------------------------------------------
    def _name(self, rest: str, offset: int, what: str) -> str:
        parts = rest.split()
        if len(parts) != 1:
            raise _Failure(offset + 2, f"expected a single {what} name")
        return parts[0]

    def _stmt_ring(self, number, rest, offset):
        if self.ring_name is not None:
            raise _Failure(1, "only one ring per file")
        self.ring_name = self._name(rest, offset, 'ring')
        self.ring_line = number

    def _identifiers(self, rest: str, offset: int) -> List[Tuple[str, int]]:
        found = []
        for match in re.finditer(r'\S+', rest):
            name = match.group()
            if not re.fullmatch(r'[A-Za-z_][A-Za-z0-9_]*', name):
                raise _Failure(offset + match.start() + 1, f"invalid identifier {name!r}")
            found.append((name, offset + match.start() + 1))
        return found

    def _stmt_gens(self, number, rest, offset):
        if self.ring_name is None:
            raise _Failure(1, "gens before ring")
        if self.rules:
            raise _Failure(1, "gens must precede rel")
        for name, column in self._identifiers(rest, offset):
            if name in self.generators or name in self.params:
                raise _Failure(column, f"duplicate identifier {name!r}")
            self.generators.append(name)

    def _assignment(self, rest: str, offset: int) -> Tuple[str, str, int, int]:
        if '=' not in rest:
            raise _Failure(offset + 1, "expected '='")
        name, value = rest.split('=', 1)
        name_column = offset + len(name) - len(name.lstrip()) + 1
        return name.strip(), value, name_column, offset + len(name) + 1

    def _stmt_param(self, number, rest, offset):
        name, value, column, value_offset = self._assignment(rest, offset)
        if not re.fullmatch(r'[A-Za-z_][A-Za-z0-9_]*', name) or name in self.generators or name in self.params:
            raise _Failure(column, f"invalid or duplicate parameter name {name!r}")
        poly = self.expression(value, value_offset)
        if not poly.is_scalar():
            raise _Failure(value_offset + 1, "parameter value must be a rational constant")
        self.params[name] = poly.constant_term()

    def _stmt_rel(self, number, rest, offset):
        if '->' not in rest:
            raise _Failure(offset + 1, "expected '<word> -> <expr>'")
        lhs_text, rhs_text = rest.split('->', 1)
        lhs = self.expression(lhs_text, offset)
        if len(lhs) != 1 or next(iter(lhs.items()))[1] != 1 or lhs.is_scalar():
            raise _Failure(offset + 2, "left-hand side must be a single word")
        word = next(iter(lhs.words()))
        rhs = self.expression(rhs_text, offset + len(lhs_text) + 2)
        rule = Rule(word, rhs)
        problems = rule_problems(rule, RingPresentation(self.ring_name or 'R', tuple(self.generators)))
        if problems:
            raise _Failure(offset + 2, problems[0])
        self.rules.append((number, rule))

    def _stmt_central(self, number, rest, offset):
        name = self._name(rest, offset, 'generator')
        if name not in self.generators:
            raise _Failure(offset + 2, f"undeclared identifier {name!r}")
        self.central = (number, name)

    # -- extension statements -----------------------------------------
    def _stmt_extension(self, number, rest, offset):
        match = re.fullmatch(r'\s*(\S+)\s+over\s+(\S+)\s*', rest)
        if match is None:
            raise _Failure(offset + 2, "expected 'extension <name> over <ring>'")
        if self.ring_name is None or match.group(2) != self.ring_name:
            raise _Failure(offset + match.start(2) + 1, f"undeclared ring {match.group(2)!r}")
        self.ext_name = match.group(1)
        self.ext_line = number

    def _stmt_vars(self, number, rest, offset):
        if self.ext_name is None:
            raise _Failure(1, "vars before extension")
        for name, column in self._identifiers(rest, offset):
            if name in self.variables or name in self.generators or name in self.params:
                raise _Failure(column, f"duplicate identifier {name!r}")
            self.variables.append(name)

    def _variable_ref(self, text: str, column: int) -> int:
        text = text.strip()
        if text.isdecimal():
            k = int(text) - 1
            if not 0 <= k < len(self.variables):
                raise _Failure(column, f"variable index {text} out of range 1..{len(self.variables)}")
            return k
        if text in self.variables:
            return self.variables.index(text)
        raise _Failure(column, f"undeclared variable {text!r}")

    def _table(self, kind: str, number: int, rest: str, offset: int):
        if not self.variables:
            raise _Failure(1, f"{kind} before vars")
        if ':' not in rest:
            raise _Failure(offset + 1, f"expected '{kind} <i>: <gen> -> <expr>; ...'")
        head, body = rest.split(':', 1)
        k = self._variable_ref(head, offset + 2)
        if k in self.tables[kind]:
            raise _Failure(offset + 2, f"duplicate {kind} table for {self.variables[k]!r}")
        entries: Dict[str, FreePoly] = {}
        position = offset + len(head) + 1
        for chunk in body.split(';'):
            if chunk.strip():
                if '->' not in chunk:
                    raise _Failure(position + 1, "expected '<gen> -> <expr>'")
                gen_text, expr_text = chunk.split('->', 1)
                gen = gen_text.strip()
                if gen not in self.generators:
                    raise _Failure(position + 1, f"undeclared identifier {gen!r}")
                if gen in entries:
                    raise _Failure(position + 1, f"duplicate entry for {gen!r}")
                entries[gen] = self.expression(expr_text, position + len(gen_text) + 2)
            position += len(chunk) + 1
        self.tables[kind][k] = _Table(number, offset + 2, entries)

    def _stmt_sigma(self, number, rest, offset):
        self._table('sigma', number, rest, offset)

    def _stmt_sigma_inv(self, number, rest, offset):
        self._table('sigma_inv', number, rest, offset)

    def _stmt_delta(self, number, rest, offset):
        self._table('delta', number, rest, offset)

    def _stmt_cross(self, number, rest, offset):
        if not self.variables:
            raise _Failure(1, "cross before vars")
        if ':' not in rest:
            raise _Failure(offset + 1, "expected 'cross <j> <i> : d = ..., r0 = ...'")
        head, body = rest.split(':', 1)
        refs = head.split()
        if len(refs) != 2:
            raise _Failure(offset + 2, "expected two variable references")
        j, i = (self._variable_ref(r, offset + 2) for r in refs)
        if j <= i:
            raise _Failure(offset + 2, "cross relations are written for j > i")
        if any(c.j == j and c.i == i for c in self.cross):
            raise _Failure(offset + 2, "duplicate cross relation")
        parts: Dict[str, FreePoly] = {}
        position = offset + len(head) + 1
        for chunk in body.split(','):
            if chunk.strip():
                key, value, column, value_offset = self._assignment(chunk, position)
                if key in ('d', 'r0'):
                    slot = key
                else:
                    match = re.fullmatch(r'r_?(\w+)', key)
                    if match is None:
                        raise _Failure(column, f"unknown cross component {key!r}")
                    slot = f'r{self._variable_ref(match.group(1), column) + 1}'
                if slot in parts:
                    raise _Failure(column, f"duplicate cross component {key!r}")
                parts[slot] = self.expression(value, value_offset)
            position += len(chunk) + 1
        if 'd' not in parts:
            raise _Failure(offset + 2, "cross relation needs d")
        self.cross.append(_Cross(number, j, i, parts))

    # -- options and notes --------------------------------------------
    def _stmt_option(self, number, rest, offset):
        key, value, column, value_offset = self._assignment(rest, offset)
        value = value.strip()
        if key == 'degree':
            if not value.isdecimal() or len(value) > 2 or int(value) > MAX_DEGREE:
                raise _Failure(value_offset + 1, f"degree must be an integer between 0 and {MAX_DEGREE}")
            self.degree = int(value)
        elif key == 'filtration':
            if value not in FILTRATION_MODES:
                raise _Failure(value_offset + 1, f"filtration must be one of {FILTRATION_MODES}")
            self.filtration = value
        else:
            raise _Failure(column, f"unknown option {key!r}")

    def _stmt_note(self, number, rest, offset):
        self.notes.append(rest.strip())

    # -- assembly -----------------------------------------------------
    def assemble(self, result: PresentationFile):
        if self.ring_name is None:
            self.error(1, 1, "missing ring declaration")
            return
        rules = tuple(rule for _, rule in self.rules)
        if self.central is not None:
            R = GradedPresentation(self.ring_name, tuple(self.generators), rules,
                                   tuple(self.params.items()), central=self.central[1])
        else:
            R = RingPresentation(self.ring_name, tuple(self.generators), rules, tuple(self.params.items()))
        line_of = {id(rule): number for number, rule in self.rules}
        for a, b in lhs_conflicts(R):
            self.error(line_of[id(b)], 1,
                       f"left-hand side {format_word(b.lhs)} contains {format_word(a.lhs)}: rule set not inter-reduced")
        if self.diagnostics:
            return
        confluence = check_confluence(R)
        R._cache['confluence'] = confluence
        if not confluence.confluent:
            self.error(self.ring_line, 1, "rewriting system is not confluent: " + '; '.join(confluence.witnesses[:3]))
            return
        result.ring = R
        if self.ext_name is not None:
            result.extension = self.assemble_extension(R)

    def _elements(self, table: Optional[_Table], R: RingPresentation, kind: str, var: str,
                  default=None) -> Optional[Dict[str, RElement]]:
        if table is None:
            if default is None and R.generators:
                self.error(self.ext_line, 1, f"missing {kind} table for variable {var!r}")
            return default
        missing = [g for g in R.generators if g not in table.entries]
        if missing:
            self.error(table.line, table.column, f"incomplete {kind} table for {var!r}: missing {', '.join(missing)}")
            return None
        return {g: reduce(f, R) for g, f in table.entries.items()}

    def assemble_extension(self, R: RingPresentation) -> Optional[ExtensionPresentation]:
        n = len(self.variables)
        identity = identity_endo(R).image_map
        zero = {g: reduce(FreePoly.zero(R.alphabet), R) for g in R.generators}
        sigmas, deltas = [], []
        for k, var in enumerate(self.variables):
            sigma_table = self.tables['sigma'].get(k)
            images = self._elements(sigma_table, R, 'sigma', var, identity if not R.generators else None)
            inverse = self._elements(self.tables['sigma_inv'].get(k), R, 'sigma_inv', var, {}) or None
            delta_table = self.tables['delta'].get(k)
            delta_images = self._elements(delta_table, R, 'delta', var, zero)
            if images is None or delta_images is None:
                continue
            sigma = EndoSpec.from_maps(images, inverse)
            if not check_well_defined_endo(sigma, R):
                self.error(sigma_table.line if sigma_table else self.ext_line, 1,
                           f"sigma table for {var!r} is not a well-defined endomorphism")
                continue
            sigma = verify_endo(sigma, R)
            delta = DerivSpec.from_maps(delta_images, sigma)
            if not check_well_defined_deriv(delta, R):
                self.error(delta_table.line if delta_table else self.ext_line, 1,
                           f"delta table for {var!r} is not a well-defined sigma-derivation")
                continue
            sigmas.append(sigma)
            deltas.append(delta)

        cross = []
        present = {(c.j, c.i) for c in self.cross}
        for j in range(n):
            for i in range(j):
                if (j, i) not in present:
                    self.error(self.ext_line, 1,
                               f"missing cross relation for {self.variables[j]}*{self.variables[i]}")
        for c in self.cross:
            d = reduce(c.parts['d'], R)
            if d.is_zero():
                self.error(c.line, 1, "d must be nonzero")
                continue
            r0 = reduce(c.parts.get('r0', FreePoly.zero(R.alphabet)), R)
            r = tuple(reduce(c.parts.get(f'r{l + 1}', FreePoly.zero(R.alphabet)), R) for l in range(n))
            cross.append(CrossRelation(c.j, c.i, d, r0, r))
        if self.diagnostics:
            return None
        try:
            A = build_extension(self.ext_name, R, self.variables, sigmas, deltas, cross, self.notes)
        except PBWError as exc:
            self.error(self.ext_line, 1, str(exc))
            return None
        if self.central is not None:
            A = as_graded(A, self.central[1])
        return A


def parse(text: str) -> PresentationFile:
    """Parse DSL text; the result carries diagnostics instead of raising"""
    try:
        result = _FileParser(text).run()
    except RecursionError:
        result = PresentationFile(diagnostics=[Diagnostic(1, 1, "expression nesting too deep")])
    if result.diagnostics:
        logger.info(f"PARSE | diagnostics: {len(result.diagnostics)}")
    return result


def parse_or_raise(text: str) -> PresentationFile:
    result = parse(text)
    if result.diagnostics:
        raise ParseError(result.diagnostics)
    return result


# ============================================================
# Emitter
# ============================================================

def _element(c: RElement, R: RingPresentation) -> str:
    return format_poly(c.poly, R.order)


def _table_line(kind: str, k: int, images, R: RingPresentation) -> str:
    body = '; '.join(f'{g} -> {_element(img, R)}' for g, img in sorted(images, key=lambda p: R.order[p[0]]))
    return f'{kind} {k}: {body}'


def emit_ring(R: RingPresentation) -> List[str]:
    lines = [f'ring {R.name}']
    if R.generators:
        lines.append('gens ' + ' '.join(R.generators))
    for name, value in R.parameters:
        lines.append(f'param {name} = {format_scalar(value)}')
    for rule in R.rules:
        lines.append(f'rel {format_word(rule.lhs)} -> {format_poly(rule.rhs, R.order)}')
    central = getattr(R, 'central', None)
    if central is not None:
        lines.append(f'central {central}')
    return lines


def emit_extension(A: ExtensionPresentation) -> List[str]:
    R = A.base
    lines = emit_ring(R)
    lines.append(f'extension {A.name} over {R.name}')
    lines.append('vars ' + ' '.join(A.variables))
    for k, (s, d) in enumerate(zip(A.sigma, A.delta), start=1):
        if R.generators:
            lines.append(_table_line('sigma', k, s.images, R))
            if s.inverse_images is not None:
                lines.append(_table_line('sigma_inv', k, s.inverse_images, R))
            if not d.is_zero():
                lines.append(_table_line('delta', k, d.images, R))
    for c in A.cross:
        parts = [f'd = {_element(c.d, R)}']
        if not c.r0.is_zero():
            parts.append(f'r0 = {_element(c.r0, R)}')
        parts.extend(f'r{l + 1} = {_element(r, R)}' for l, r in enumerate(c.r) if not r.is_zero())
        lines.append(f'cross {c.j + 1} {c.i + 1} : ' + ', '.join(parts))
    lines.extend(f'note {note}' for note in A.notes)
    return lines


def emit(P: Union[PresentationFile, RingPresentation, ExtensionPresentation]) -> str:
    """DSL text that parses back to the same presentation"""
    options = []
    if isinstance(P, PresentationFile):
        options = [f'option degree = {P.degree}', f'option filtration = {P.filtration}']
        P = P.presentation
    if isinstance(P, ExtensionPresentation):
        lines = emit_extension(P)
    else:
        lines = emit_ring(P)
    return '\n'.join(lines + options) + '\n'
