"""
Skew PBW Extensions
A = sigma(R)<x_1..x_n> with x_i r = sigma_i(r)x_i + delta_i(r) and
x_j x_i = d_ij x_i x_j + r0_ji + sum_l r_lji x_l (j > i).
PBW normal-form arithmetic, total degree, the filtration F_p(A) and the
sigma-filtered verifier.
"""
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from utils.logger import get_logger

from .coeffring import (
    DerivSpec, EndoSpec, RElement, RingPresentation, Rule, apply_deriv, apply_endo,
    check_confluence, check_filtered_deriv, check_filtered_endo, check_inverse,
    normal_words, r_add, r_gen, r_mul, r_one, r_scale, reduce, verify_deriv,
    verify_endo,
)
from .errors import ContractError, DomainError, StructuralError
from .freealg import FreePoly, Word, format_poly, format_scalar, format_word, to_scalar
from .verdicts import VerdictReport


logger = get_logger('skewext')

Exponent = Tuple[int, ...]
FILTRATION_STANDARD = 'standard'
FILTRATION_TRIVIAL = 'trivial'


def exponent_vectors(n: int, total: int) -> List[Exponent]:
    """All alpha in N^n with |alpha| = total, ascending graded-lex"""
    vectors = [
        tuple(b - a - 1 for a, b in zip((-1,) + cut, cut + (total + n - 1,)))
        for cut in itertools.combinations(range(total + n - 1), n - 1)
    ] if n else ([()] if total == 0 else [])
    return sorted(vectors, key=monomial_key)


def monomial_word(alpha: Exponent) -> Tuple[int, ...]:
    return tuple(i for i, a in enumerate(alpha) for _ in range(a))


def monomial_key(alpha: Exponent):
    return (sum(alpha), monomial_word(alpha))


@dataclass(frozen=True)
class CrossRelation:
    """x_j x_i = d x_i x_j + r0 + sum_l r[l] x_l, 0-based indices with j > i"""
    j: int
    i: int
    d: RElement
    r0: RElement
    r: Tuple[RElement, ...]


@dataclass(frozen=True)
class ExtensionPresentation:
    name: str
    base: RingPresentation
    variables: Tuple[str, ...]
    sigma: Tuple[EndoSpec, ...]
    delta: Tuple[DerivSpec, ...]
    cross: Tuple[CrossRelation, ...] = ()
    notes: Tuple[str, ...] = field(default=(), compare=False)
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.variables)

    def cross_for(self, j: int, i: int) -> CrossRelation:
        table = self._cache.get('cross')
        if table is None:
            table = {(c.j, c.i): c for c in self.cross}
            self._cache['cross'] = table
        try:
            return table[(j, i)]
        except KeyError:
            raise StructuralError(
                f"No cross relation for {self.variables[j]}*{self.variables[i]} in {self.name!r}"
            ) from None

    def variable_index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise StructuralError(f"{name!r} is not a variable of {self.name!r}") from None


@dataclass(frozen=True)
class AElement:
    """
    Unique PBW representation f = sum c_alpha x^alpha

    terms are sorted ascending graded-lex and never hold a zero coefficient.
    """
    terms: Tuple[Tuple[Exponent, RElement], ...]

    @classmethod
    def from_terms(cls, terms: Mapping[Exponent, RElement]) -> 'AElement':
        kept = [(alpha, c) for alpha, c in terms.items() if not c.is_zero()]
        return cls(tuple(sorted(kept, key=lambda t: monomial_key(t[0]))))

    def as_dict(self) -> Dict[Exponent, RElement]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, alpha: Exponent) -> Optional[RElement]:
        for a, c in self.terms:
            if a == alpha:
                return c
        return None

    def format(self, A: ExtensionPresentation) -> str:
        return format_aelement(self, A)


def format_aelement(f: AElement, A: ExtensionPresentation) -> str:
    """Terms by descending monomial, coefficients in ring display form"""
    if f.is_zero():
        return '0'
    order = A.base.order
    pieces = []
    for alpha, c in reversed(f.terms):
        mono = format_word(tuple(A.variables[i] for i in monomial_word(alpha)))
        if not any(alpha):
            for word, coeff in c.poly.sorted_terms(order):
                pieces.append(_signed_piece(word, coeff, None))
        elif len(c.poly) == 1:
            (word, coeff), = c.poly.items()
            pieces.append(_signed_piece(word, coeff, mono))
        else:
            pieces.append(('+', f'({format_poly(c.poly, order)})*{mono}'))
    first_sign, first_body = pieces[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in pieces[1:]:
        text += f' {sign} {body}'
    return text


def _signed_piece(word: Word, coeff: Fraction, mono: Optional[str]):
    sign = '-' if coeff < 0 else '+'
    mag = abs(coeff)
    parts = []
    if mag != 1 or (not word and mono is None):
        parts.append(format_scalar(mag))
    if word:
        parts.append(format_word(word))
    if mono is not None:
        parts.append(mono)
    return sign, '*'.join(parts)


# ============================================================
# Construction
# ============================================================

def _ring_confluence(R: RingPresentation):
    report = R._cache.get('confluence')
    if report is None:
        report = check_confluence(R)
        R._cache['confluence'] = report
    return report


def build_extension(name: str, base: RingPresentation, variables: Sequence[str],
                    sigma: Sequence[EndoSpec], delta: Sequence[DerivSpec],
                    cross: Sequence[CrossRelation], notes: Sequence[str] = ()) -> ExtensionPresentation:
    """
    Validate and assemble an extension

    Requires a confluent base, well-defined sigma_i/delta_i, nonzero d_ij
    and one cross relation for every pair j > i.
    """
    # Check the base ring and variable names
    report = _ring_confluence(base)
    if not report.confluent:
        raise StructuralError(
            f"Base ring {base.name!r} is not confluent: " + '; '.join(report.structural + report.witnesses)
        )
    variables = tuple(variables)
    n = len(variables)
    if len(set(variables)) != n or set(variables) & base.alphabet:
        raise StructuralError(f"Variables {list(variables)} must be distinct and disjoint from {list(base.generators)}")
    if len(sigma) != n or len(delta) != n:
        raise StructuralError(f"Expected {n} sigma and delta tables, got {len(sigma)} and {len(delta)}")

    # Verify sigma and delta tables
    verified_sigma = tuple(verify_endo(s, base) for s in sigma)
    verified_delta = []
    for s, dl in zip(verified_sigma, delta):
        verified_delta.append(verify_deriv(DerivSpec(dl.images, s), base))

    # One nonzero cross relation per pair j > i
    pairs = {(c.j, c.i) for c in cross}
    expected = {(j, i) for j in range(n) for i in range(j)}
    if pairs != expected or len(cross) != len(expected):
        missing = sorted(expected - pairs)
        raise StructuralError(
            f"Cross relations must cover every pair j > i exactly once; missing "
            f"{[f'{variables[j]}*{variables[i]}' for j, i in missing]}"
        )
    for c in cross:
        if c.d.is_zero():
            raise StructuralError(f"d for {variables[c.j]}*{variables[c.i]} must be nonzero")
        if len(c.r) != n:
            raise StructuralError(f"Cross relation {variables[c.j]}*{variables[c.i]} needs {n} r-terms")

    A = ExtensionPresentation(
        name=name, base=base, variables=variables, sigma=verified_sigma,
        delta=tuple(verified_delta), cross=tuple(sorted(cross, key=lambda c: (c.j, c.i))),
        notes=tuple(notes),
    )
    logger.info(f"EXTENSION | {name} | base: {base.name} | variables: {n}")
    return A


# ============================================================
# Arithmetic
# ============================================================

def a_zero(A: ExtensionPresentation) -> AElement:
    return AElement(())


def a_from_coeff(c: RElement, A: ExtensionPresentation) -> AElement:
    return AElement.from_terms({(0,) * A.n: c})


def a_one(A: ExtensionPresentation) -> AElement:
    return a_from_coeff(r_one(A.base), A)


def a_monomial(alpha: Exponent, A: ExtensionPresentation, c: Optional[RElement] = None) -> AElement:
    return AElement.from_terms({tuple(alpha): c if c is not None else r_one(A.base)})


def a_var(A: ExtensionPresentation, name: str) -> AElement:
    k = A.variable_index(name)
    return a_monomial(tuple(int(i == k) for i in range(A.n)), A)


def _accumulate(acc: Dict[Exponent, RElement], alpha: Exponent, c: RElement, R: RingPresentation):
    if c.is_zero():
        return
    if alpha in acc:
        acc[alpha] = r_add(acc[alpha], c, R)
    else:
        acc[alpha] = c


def a_add(f: AElement, g: AElement, A: ExtensionPresentation) -> AElement:
    acc = dict(f.terms)
    for alpha, c in g.terms:
        _accumulate(acc, alpha, c, A.base)
    return AElement.from_terms(acc)


def a_scale(f: AElement, value) -> AElement:
    value = to_scalar(value)
    return AElement.from_terms({alpha: r_scale(c, value) for alpha, c in f.terms})


def a_neg(f: AElement) -> AElement:
    return a_scale(f, -1)


def a_sub(f: AElement, g: AElement, A: ExtensionPresentation) -> AElement:
    return a_add(f, a_neg(g), A)


def _lmul_coeff(r: RElement, F: AElement, A: ExtensionPresentation) -> AElement:
    return AElement.from_terms({alpha: r_mul(r, c, A.base) for alpha, c in F.terms})


def _lmul_var(i: int, F: AElement, A: ExtensionPresentation) -> AElement:
    """x_i * F: push x_i past each coefficient, then sort variables"""
    R = A.base
    acc: Dict[Exponent, RElement] = {}
    for alpha, c in F.terms:
        pushed = apply_endo(A.sigma[i], c, R)
        for beta, e in _var_times_monomial(i, alpha, A).terms:
            _accumulate(acc, beta, r_mul(pushed, e, R), R)
        _accumulate(acc, alpha, apply_deriv(A.delta[i], c, R), R)
    return AElement.from_terms(acc)


def _var_times_monomial(i: int, beta: Exponent, A: ExtensionPresentation) -> AElement:
    """
    x_i * x^beta in PBW form

    For j the smallest index present in beta with j < i, rewrite x_i x_j by
    its cross relation. Each recursive call either lowers |beta| or keeps it
    and lowers the variable index.
    """
    cache = A._cache.setdefault('var_mono', {})
    hit = cache.get((i, beta))
    if hit is not None:
        return hit
    j = next((k for k, b in enumerate(beta) if b), A.n)
    if i <= j:
        bumped = tuple(b + (k == i) for k, b in enumerate(beta))
        result = a_monomial(bumped, A)
    else:
        rel = A.cross_for(i, j)
        rest = tuple(b - (k == j) for k, b in enumerate(beta))
        result = _lmul_coeff(rel.d, _lmul_var(j, _var_times_monomial(i, rest, A), A), A)
        if not rel.r0.is_zero():
            result = a_add(result, a_monomial(rest, A, rel.r0), A)
        for l, r_l in enumerate(rel.r):
            if not r_l.is_zero():
                result = a_add(result, _lmul_coeff(r_l, _var_times_monomial(l, rest, A), A), A)
    cache[(i, beta)] = result
    return result


def a_mul(f: AElement, g: AElement, A: ExtensionPresentation) -> AElement:
    """Unique PBW normal form of f*g"""
    total = a_zero(A)
    for alpha, c in f.terms:
        G = g
        for i in reversed(monomial_word(alpha)):
            G = _lmul_var(i, G, A)
        total = a_add(total, _lmul_coeff(c, G, A), A)
    return total


def a_from_poly(f: FreePoly, A: ExtensionPresentation) -> AElement:
    """Evaluate a free-algebra expression in ring generators and variables"""
    R = A.base
    total = a_zero(A)
    for word, coeff in f.items():
        acc = a_one(A)
        for letter in word:
            if letter in R.alphabet:
                factor = a_from_coeff(r_gen(R, letter), A)
            else:
                factor = a_var(A, letter)
            acc = a_mul(acc, factor, A)
        total = a_add(total, a_scale(acc, coeff), A)
    return total


# ============================================================
# Degrees and the filtration F_p(A)
# ============================================================

def _coeff_degree(c: RElement, filtration: str) -> int:
    return 0 if filtration == FILTRATION_TRIVIAL else c.deg


def a_tdeg(f: AElement, filtration: str = FILTRATION_STANDARD) -> int:
    """max deg(c_alpha) + |alpha| over the PBW representation"""
    if f.is_zero():
        raise DomainError("tdeg(0) is undefined; 0 lies in every F_p(A)")
    return max(_coeff_degree(c, filtration) + sum(alpha) for alpha, c in f.terms)


def in_filtration(f: AElement, p: int, filtration: str = FILTRATION_STANDARD) -> bool:
    return f.is_zero() or a_tdeg(f, filtration) <= p


def lr_degree(f: AElement) -> int:
    """Monomial degree only: max |alpha|"""
    if f.is_zero():
        raise DomainError("The zero element has no degree")
    return max(sum(alpha) for alpha, _ in f.terms)


def check_preserves_tdeg(A: ExtensionPresentation, strict: bool = False,
                         filtration: str = FILTRATION_STANDARD) -> bool:
    """
    Cross relations keep total degree 2

    Default reading: deg d_ij = 0, deg r0_ji <= 2, deg r_lji <= 1.
    strict=True additionally asks the nonzero lower part r0 + sum r_l x_l
    to have tdeg exactly 2.
    """
    for c in A.cross:
        if _coeff_degree(c.d, filtration) != 0:
            return False
        if not c.r0.is_zero() and _coeff_degree(c.r0, filtration) > 2:
            return False
        if any(not r.is_zero() and _coeff_degree(r, filtration) > 1 for r in c.r):
            return False
        if strict:
            lower = [_coeff_degree(c.r0, filtration)] if not c.r0.is_zero() else []
            lower += [_coeff_degree(r, filtration) + 1 for r in c.r if not r.is_zero()]
            if lower and max(lower) != 2:
                return False
    return True


def check_sigma_filtered(A: ExtensionPresentation, filtration: str = FILTRATION_STANDARD) -> VerdictReport:
    report = VerdictReport(title=f'sigma-filtered: {A.name}')
    trivial = filtration == FILTRATION_TRIVIAL
    for k, (x, s, d) in enumerate(zip(A.variables, A.sigma, A.delta), start=1):
        bad = [f'deg sigma_{k}({g}) = {img.deg}' for g, img in s.images if img.deg > 1]
        report.add(f'sigma_{k} filtered', trivial or check_filtered_endo(s),
                   None if trivial else ', '.join(bad) or None)
        bad = [f'deg delta_{k}({g}) = {img.deg} > 2' for g, img in d.images if img.deg > 2]
        report.add(f'delta_{k} filtered', trivial or check_filtered_deriv(d),
                   None if trivial else ', '.join(bad) or None)
    structural = check_preserves_tdeg(A, filtration=filtration)
    report.add('preserves tdeg', structural)
    if structural != check_preserves_tdeg(A, strict=True, filtration=filtration):
        report.notes.append('preserves tdeg holds componentwise but not with lower part of tdeg exactly 2')
    if trivial:
        report.notes.append('trivial positive filtration on the coefficient ring')
    logger.info(f"SIGMA-FILTERED | {A.name} | {filtration} | {'pass' if report.passed else 'fail'}")
    return report


def check_connected(A: ExtensionPresentation) -> bool:
    """F_0(R) = K, hence F_0(A) = K"""
    return len(normal_words(A.base, 0)) == 1 and not any(
        reduce(FreePoly.monomial(A.base.alphabet, (g,)), A.base).is_scalar() for g in A.base.generators
    )


@dataclass
class FilteredDecomposition:
    """Coefficients c_alpha of f with the bound deg c_alpha <= p - |alpha| checked per term"""
    p: int
    components: Dict[Exponent, RElement]
    certificates: List[Tuple[Exponent, int, int]]

    @property
    def holds(self) -> bool:
        return all(deg <= bound for _, deg, bound in self.certificates)


def free_filtered_decomposition(f: AElement, p: int, A: ExtensionPresentation,
                                filtration: str = FILTRATION_STANDARD) -> FilteredDecomposition:
    if not in_filtration(f, p, filtration):
        raise ContractError(f"Element {f.format(A)} is not in F_{p}(A) (tdeg {a_tdeg(f, filtration)})")
    certificates = [(alpha, _coeff_degree(c, filtration), p - sum(alpha)) for alpha, c in f.terms]
    decomposition = FilteredDecomposition(p, f.as_dict(), certificates)
    if not decomposition.holds:
        raise ContractError(f"Filtered basis certificate failed for {f.format(A)} at p = {p}")
    return decomposition


# ============================================================
# Closed-form expansion of a x^X b x^Y
# ============================================================

def _push_coefficient(word: Sequence[int], b: RElement, A: ExtensionPresentation) -> AElement:
    """
    x_{i1}..x_{ik} * b as a sum over the position where a delta fires:
    sum_j x_{i1}..x_{i(j-1)} delta_ij(sigma_i(j+1)..sigma_ik(b)) x_i(j+1)..x_ik
    plus sigma_i1..sigma_ik(b) x_i1..x_ik
    """
    R = A.base
    if b.is_zero():
        return a_zero(A)
    if not word:
        return a_from_coeff(b, A)
    k = len(word)
    tails = [b]
    for i in reversed(word):
        tails.append(apply_endo(A.sigma[i], tails[-1], R))
    # tails[m] = sigma_{i(k-m+1)}..sigma_{ik}(b)
    alpha = tuple(sum(1 for i in word if i == v) for v in range(A.n))
    total = a_monomial(alpha, A, tails[k]) if not tails[k].is_zero() else a_zero(A)
    for j in range(k):
        fired = apply_deriv(A.delta[word[j]], tails[k - j - 1], R)
        if fired.is_zero():
            continue
        left = _push_coefficient(word[:j], fired, A)
        suffix = tuple(sum(1 for i in word[j + 1:] if i == v) for v in range(A.n))
        total = a_add(total, a_mul(left, a_monomial(suffix, A), A), A)
    return total


def expansion_closed_form(a: RElement, X: Exponent, b: RElement, Y: Exponent,
                          A: ExtensionPresentation) -> AElement:
    """a x^X b x^Y via the telescoping delta/sigma sum, finished with cross relations"""
    pushed = _push_coefficient(monomial_word(tuple(X)), b, A)
    return a_mul(_lmul_coeff(a, pushed, A), a_monomial(tuple(Y), A), A)


# ============================================================
# Bijectivity, presentations
# ============================================================

@dataclass
class Bijectivity:
    status: str  # 'verified' | 'failed' | 'unverified'
    witnesses: List[str] = field(default_factory=list)


def check_bijective(A: ExtensionPresentation) -> Bijectivity:
    """
    sigma_i invertible on generators and every d_ij a nonzero scalar

    'unverified' when some sigma_i has no inverse table.
    """
    result = Bijectivity('verified')
    for c in A.cross:
        if not c.d.is_scalar():
            result.witnesses.append(f'd for {A.variables[c.j]}*{A.variables[c.i]} is not a scalar')
    unknown = False
    for k, s in enumerate(A.sigma, start=1):
        outcome = check_inverse(s, A.base)
        if outcome is None:
            unknown = True
        elif not outcome:
            result.witnesses.append(f'sigma_{k} inverse table does not invert sigma_{k}')
    if result.witnesses:
        result.status = 'failed'
    elif unknown:
        result.status = 'unverified'
        result.witnesses.append('no inverse table supplied')
    return result


def full_presentation(A: ExtensionPresentation) -> RingPresentation:
    """
    A as one rewriting system over K<t, x>; variables sort above ring generators

    Only defined for sigma-filtered extensions, where every rule stays
    degree-bounded and deglex-decreasing.
    """
    if not check_sigma_filtered(A).passed:
        raise ContractError(f"{A.name!r} is not sigma-filtered; its relations are not degree-bounded")
    R = A.base
    generators = R.generators + A.variables
    alphabet = frozenset(generators)

    def lift(c: RElement) -> FreePoly:
        return c.poly.with_alphabet(alphabet)

    def var(k: int) -> FreePoly:
        return FreePoly.monomial(alphabet, (A.variables[k],))

    rules = [Rule(rule.lhs, rule.rhs.with_alphabet(alphabet)) for rule in R.rules]
    for k, (s, d) in enumerate(zip(A.sigma, A.delta)):
        for g in R.generators:
            rules.append(Rule((A.variables[k], g), lift(s.image(g)) * var(k) + lift(d.image(g))))
    for c in A.cross:
        rhs = lift(c.d) * var(c.i) * var(c.j) + lift(c.r0)
        for l, r_l in enumerate(c.r):
            rhs = rhs + lift(r_l) * var(l)
        rules.append(Rule((A.variables[c.j], A.variables[c.i]), rhs))
    return RingPresentation(f'{A.name}-full', generators, tuple(rules), R.parameters)


def presentation_key(A: ExtensionPresentation):
    """Structural identity of an extension; names and notes ignored"""
    R = A.base
    return (
        R.generators,
        tuple(sorted(((rule.lhs, rule.rhs) for rule in R.rules), key=lambda pair: pair[0])),
        A.variables,
        tuple(s.images for s in A.sigma),
        tuple(d.images for d in A.delta),
        tuple((c.j, c.i, c.d, c.r0, c.r) for c in A.cross),
    )


def same_presentation(A: ExtensionPresentation, B: ExtensionPresentation) -> bool:
    return presentation_key(A) == presentation_key(B)


def iter_monomials(A: ExtensionPresentation, max_total: int) -> Iterator[Exponent]:
    for total in range(max_total + 1):
        yield from exponent_vectors(A.n, total)
