"""
Coefficient Rings
Finitely presented algebras R = K<t_1..t_m>/(r_1..r_s) realized by an oriented
rewriting system, with normal-form arithmetic, the word-degree filtration,
endomorphisms, sigma-derivations and a diamond-lemma confluence check
"""
import itertools
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Tuple

from utils.config import CONFLUENCE_SAMPLE_DEGREE
from utils.logger import get_logger

from .errors import ContractError, DomainError, StructuralError
from .freealg import (
    EMPTY_WORD, Degree, FreePoly, Word, deglex_key, format_poly, format_word, to_scalar,
)


logger = get_logger('coeffring')

LEFTMOST = 'leftmost-innermost'
RIGHTMOST = 'rightmost-outermost'


@dataclass(frozen=True)
class Rule:
    """Oriented relation lhs -> rhs"""
    lhs: Word
    rhs: FreePoly

    def relation(self) -> FreePoly:
        return FreePoly.monomial(self.rhs.alphabet, self.lhs) - self.rhs

    def format(self, order: Optional[Mapping[str, int]] = None) -> str:
        return f'{format_word(self.lhs)} -> {format_poly(self.rhs, order)}'


@dataclass(frozen=True)
class RingPresentation:
    """
    Generators (all of degree 1, ordered: earlier generators are smaller
    in deglex) and rewriting rules. Use validate_ring / check_confluence
    before trusting normal forms.
    """
    name: str
    generators: Tuple[str, ...]
    rules: Tuple[Rule, ...] = ()
    parameters: Tuple[Tuple[str, Fraction], ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    @property
    def alphabet(self) -> frozenset:
        return frozenset(self.generators)

    @property
    def order(self) -> Dict[str, int]:
        cached = self._cache.get('order')
        if cached is None:
            cached = {g: i for i, g in enumerate(self.generators)}
            self._cache['order'] = cached
        return cached

    def key(self, word: Word):
        return deglex_key(word, self.order)

    def rules_by_letter(self) -> Dict[str, List[Rule]]:
        index = self._cache.get('rule_index')
        if index is None:
            index = {}
            for rule in self.rules:
                index.setdefault(rule.lhs[0], []).append(rule)
            self._cache['rule_index'] = index
        return index

    def lhs_words(self) -> Tuple[Word, ...]:
        return tuple(rule.lhs for rule in self.rules)

    def format_rules(self) -> List[str]:
        return [rule.format(self.order) for rule in self.rules]


@dataclass(frozen=True)
class RElement:
    """Element of R in normal form"""
    poly: FreePoly

    @property
    def deg(self) -> Degree:
        return self.poly.degree

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def is_scalar(self) -> bool:
        return self.poly.is_scalar()

    def format(self, order: Optional[Mapping[str, int]] = None) -> str:
        return format_poly(self.poly, order)

    def __str__(self):
        return format_poly(self.poly)


# ============================================================
# Validation
# ============================================================

def rule_problems(rule: Rule, R: RingPresentation) -> List[str]:
    """Problems of a single rule against the generator order of R"""
    if not rule.lhs:
        return ["rule with empty left-hand side"]
    if set(rule.lhs) - R.alphabet or not rule.rhs.alphabet <= R.alphabet:
        return ["undeclared generator"]
    if rule.rhs.degree > len(rule.lhs):
        return ["rule violates degree bound"]
    if any(R.key(w) >= R.key(rule.lhs) for w in rule.rhs.words()):
        return ["right-hand side is not deglex-smaller than the left-hand side"]
    return []


def lhs_conflicts(R: RingPresentation) -> List[Tuple[Rule, Rule]]:
    """Pairs (a, b) where the lhs of a occurs inside the lhs of b"""
    conflicts = []
    indexed = [(k, rule) for k, rule in enumerate(R.rules) if rule.lhs]
    for (ka, a), (kb, b) in itertools.permutations(indexed, 2):
        if a.lhs == b.lhs:
            if ka < kb:
                conflicts.append((a, b))
        elif len(a.lhs) < len(b.lhs) and _occurs(a.lhs, b.lhs):
            conflicts.append((a, b))
    return conflicts


def validate_ring(R: RingPresentation) -> List[str]:
    """Structural problems of a presentation; empty list when valid"""
    problems = []
    if len(set(R.generators)) != len(R.generators):
        problems.append(f"duplicate generators in {list(R.generators)}")
    for rule in R.rules:
        problems.extend(f"rule {format_word(rule.lhs)}: {p}" for p in rule_problems(rule, R))
    for a, b in lhs_conflicts(R):
        if a.lhs == b.lhs:
            problems.append(f"rule {format_word(a.lhs)}: duplicate left-hand side")
        else:
            problems.append(
                f"rule {format_word(b.lhs)}: left-hand side contains {format_word(a.lhs)} (rule set not inter-reduced)"
            )
    return problems


def require_valid_ring(R: RingPresentation) -> RingPresentation:
    problems = validate_ring(R)
    if problems:
        raise StructuralError(f"Invalid presentation {R.name!r}: " + '; '.join(problems))
    return R


def _occurs(pattern: Word, word: Word) -> bool:
    k = len(pattern)
    return any(word[i:i + k] == pattern for i in range(len(word) - k + 1))


# ============================================================
# Reduction to normal form
# ============================================================

def _find_redex(word: Word, R: RingPresentation, strategy: str):
    index = R.rules_by_letter()
    positions = range(len(word)) if strategy == LEFTMOST else range(len(word) - 1, -1, -1)
    for start in positions:
        matches = [
            rule for rule in index.get(word[start], ())
            if word[start:start + len(rule.lhs)] == rule.lhs
        ]
        if matches:
            pick = min if strategy == LEFTMOST else max
            return start, pick(matches, key=lambda rule: len(rule.lhs))
    return None


def _word_normal_form(word: Word, R: RingPresentation, strategy: str) -> Dict[Word, Fraction]:
    cache = R._cache.setdefault(('nf', strategy), {})
    hit = cache.get(word)
    if hit is not None:
        return hit
    redex = _find_redex(word, R, strategy)
    if redex is None:
        result = {word: Fraction(1)}
    else:
        start, rule = redex
        prefix, suffix = word[:start], word[start + len(rule.lhs):]
        result: Dict[Word, Fraction] = {}
        for w, c in rule.rhs.items():
            for w2, c2 in _word_normal_form(prefix + w + suffix, R, strategy).items():
                s = result.get(w2, Fraction(0)) + c * c2
                if s:
                    result[w2] = s
                else:
                    del result[w2]
    cache[word] = result
    return result


def _lift(f: FreePoly, R: RingPresentation) -> FreePoly:
    if f.alphabet == R.alphabet:
        return f
    if f.alphabet <= R.alphabet:
        return f.with_alphabet(R.alphabet)
    raise StructuralError(
        f"Polynomial over {sorted(f.alphabet)} does not live in {R.name!r} ({list(R.generators)})"
    )


def reduce(f: FreePoly, R: RingPresentation, strategy: str = LEFTMOST) -> RElement:
    """
    Normal form of f modulo the rules of R

    Rewrites the leftmost-innermost (or rightmost-outermost) occurrence of a
    rule lhs until none is left. Terminates because rules are deglex-decreasing.
    """
    f = _lift(f, R)
    terms: Dict[Word, Fraction] = {}
    for w, c in f.items():
        for w2, c2 in _word_normal_form(w, R, strategy).items():
            terms[w2] = terms.get(w2, Fraction(0)) + c * c2
    return RElement(FreePoly(R.alphabet, terms))


def is_normal_word(word: Word, R: RingPresentation) -> bool:
    return _find_redex(word, R, LEFTMOST) is None


def normal_words(R: RingPresentation, degree: int) -> List[Word]:
    """
    Words of exactly this degree avoiding every rule lhs

    Built degree by degree: a normal word extended by one letter can only
    acquire an lhs occurrence as a suffix.
    """
    table = R._cache.setdefault('normal_words', {0: [EMPTY_WORD]})
    top = max(table)
    lhs_words = R.lhs_words()
    while top < degree:
        layer = []
        for word in table[top]:
            for g in R.generators:
                candidate = word + (g,)
                if not any(candidate[-len(l):] == l for l in lhs_words if len(l) <= len(candidate)):
                    layer.append(candidate)
        top += 1
        table[top] = layer
    return table[degree]


# ============================================================
# Ring arithmetic
# ============================================================

def r_zero(R: RingPresentation) -> RElement:
    return RElement(FreePoly.zero(R.alphabet))


def r_scalar(R: RingPresentation, value) -> RElement:
    return RElement(FreePoly.scalar(R.alphabet, value))


def r_one(R: RingPresentation) -> RElement:
    return r_scalar(R, 1)


def r_gen(R: RingPresentation, name: str) -> RElement:
    if name not in R.alphabet:
        raise StructuralError(f"{name!r} is not a generator of {R.name!r}")
    return reduce(FreePoly.monomial(R.alphabet, (name,)), R)


def r_add(a: RElement, b: RElement, R: RingPresentation) -> RElement:
    return reduce(a.poly + b.poly, R)


def r_sub(a: RElement, b: RElement, R: RingPresentation) -> RElement:
    return reduce(a.poly - b.poly, R)


def r_mul(a: RElement, b: RElement, R: RingPresentation) -> RElement:
    if a.is_zero() or b.is_zero():
        return r_zero(R)
    return reduce(a.poly * b.poly, R)


def r_scale(a: RElement, value) -> RElement:
    # scalar multiples of normal forms stay normal
    return RElement(a.poly.scale(to_scalar(value)))


def r_deg(a: RElement) -> int:
    """Least p with a in F_p(R)"""
    if a.is_zero():
        raise DomainError("deg(0) is undefined; the zero element lies in every F_p(R)")
    return a.deg


# ============================================================
# Endomorphisms and sigma-derivations
# ============================================================

ImageTable = Tuple[Tuple[str, RElement], ...]


def _as_table(images: Mapping[str, RElement]) -> ImageTable:
    return tuple(sorted(images.items()))


@dataclass(frozen=True)
class EndoSpec:
    """Algebra endomorphism given by generator images"""
    images: ImageTable
    inverse_images: Optional[ImageTable] = None
    verified: bool = field(default=False, compare=False)

    @classmethod
    def from_maps(cls, images: Mapping[str, RElement],
                  inverse_images: Optional[Mapping[str, RElement]] = None) -> 'EndoSpec':
        return cls(_as_table(images), _as_table(inverse_images) if inverse_images is not None else None)

    @property
    def image_map(self) -> Dict[str, RElement]:
        return dict(self.images)

    def image(self, gen: str) -> RElement:
        for g, img in self.images:
            if g == gen:
                return img
        raise StructuralError(f"Endomorphism has no image for generator {gen!r}")

    def inverse(self) -> Optional['EndoSpec']:
        if self.inverse_images is None:
            return None
        return EndoSpec(self.inverse_images, self.images)

    def is_identity(self) -> bool:
        return all(img.poly == FreePoly.monomial(img.poly.alphabet, (g,)) for g, img in self.images)


@dataclass(frozen=True)
class DerivSpec:
    """sigma-derivation given by generator images; delta(rs) = sigma(r)delta(s) + delta(r)s"""
    images: ImageTable
    twisted_by: EndoSpec
    verified: bool = field(default=False, compare=False)

    @classmethod
    def from_maps(cls, images: Mapping[str, RElement], twisted_by: EndoSpec) -> 'DerivSpec':
        return cls(_as_table(images), twisted_by)

    @property
    def image_map(self) -> Dict[str, RElement]:
        return dict(self.images)

    def image(self, gen: str) -> RElement:
        for g, img in self.images:
            if g == gen:
                return img
        raise StructuralError(f"Derivation has no image for generator {gen!r}")

    def is_zero(self) -> bool:
        return all(img.is_zero() for _, img in self.images)


def identity_endo(R: RingPresentation) -> EndoSpec:
    images = {g: r_gen(R, g) for g in R.generators}
    return EndoSpec(_as_table(images), _as_table(images), verified=True)


def zero_deriv(R: RingPresentation, sigma: EndoSpec) -> DerivSpec:
    return DerivSpec(_as_table({g: r_zero(R) for g in R.generators}), sigma, verified=sigma.verified)


def _endo_word(sigma: EndoSpec, word: Word, R: RingPresentation) -> RElement:
    cache = R._cache.setdefault(('endo', sigma), {})
    hit = cache.get(word)
    if hit is not None:
        return hit
    if not word:
        result = r_one(R)
    else:
        result = r_mul(_endo_word(sigma, word[:-1], R), sigma.image(word[-1]), R)
    cache[word] = result
    return result


def _endo_poly(sigma: EndoSpec, f: FreePoly, R: RingPresentation) -> RElement:
    total = FreePoly.zero(R.alphabet)
    for w, c in _lift(f, R).items():
        total = total + _endo_word(sigma, w, R).poly.scale(c)
    return RElement(total)


def _deriv_word(delta: DerivSpec, word: Word, R: RingPresentation) -> RElement:
    cache = R._cache.setdefault(('deriv', delta), {})
    hit = cache.get(word)
    if hit is not None:
        return hit
    total = FreePoly.zero(R.alphabet)
    for i, letter in enumerate(word):
        d = delta.image(letter)
        if d.is_zero():
            continue
        left = _endo_word(delta.twisted_by, word[:i], R)
        right = reduce(FreePoly.monomial(R.alphabet, word[i + 1:]), R)
        total = total + r_mul(r_mul(left, d, R), right, R).poly
    result = RElement(total)
    cache[word] = result
    return result


def _deriv_poly(delta: DerivSpec, f: FreePoly, R: RingPresentation) -> RElement:
    total = FreePoly.zero(R.alphabet)
    for w, c in _lift(f, R).items():
        total = total + _deriv_word(delta, w, R).poly.scale(c)
    return RElement(total)


def apply_endo(sigma: EndoSpec, a: RElement, R: RingPresentation) -> RElement:
    """sigma(a): substitute generator images, multiply out, reduce"""
    if not sigma.verified:
        raise ContractError("Endomorphism is not verified; run verify_endo first")
    return _endo_poly(sigma, a.poly, R)


def apply_deriv(delta: DerivSpec, a: RElement, R: RingPresentation) -> RElement:
    """delta(a) by the twisted Leibniz rule delta(uw) = sigma(u)delta(w) + delta(u)w"""
    if not (delta.verified and delta.twisted_by.verified):
        raise ContractError("sigma-derivation is not verified; run verify_deriv first")
    return _deriv_poly(delta, a.poly, R)


def _covers_generators(images: ImageTable, R: RingPresentation) -> bool:
    return {g for g, _ in images} == set(R.generators) and all(
        img.poly.alphabet == R.alphabet for _, img in images
    )


def check_well_defined_endo(sigma: EndoSpec, R: RingPresentation) -> bool:
    """True iff sigma sends every defining relation to zero"""
    if not _covers_generators(sigma.images, R):
        return False
    for rule in R.rules:
        image = _endo_poly(sigma, rule.relation(), R)
        if not image.is_zero():
            logger.info(f"ENDO | {R.name} | relation {rule.format(R.order)} maps to {image.format(R.order)}")
            return False
    return True


def check_well_defined_deriv(delta: DerivSpec, R: RingPresentation) -> bool:
    """True iff the Leibniz expansion of every defining relation reduces to zero"""
    if not delta.twisted_by.verified:
        raise ContractError("The twisting endomorphism must be verified before its derivation")
    if not _covers_generators(delta.images, R):
        return False
    for rule in R.rules:
        image = _deriv_poly(delta, rule.relation(), R)
        if not image.is_zero():
            logger.info(f"DERIV | {R.name} | relation {rule.format(R.order)} maps to {image.format(R.order)}")
            return False
    return True


def verify_endo(sigma: EndoSpec, R: RingPresentation) -> EndoSpec:
    if not check_well_defined_endo(sigma, R):
        raise ContractError(f"Endomorphism is not well defined on {R.name!r}")
    return replace(sigma, verified=True)


def verify_deriv(delta: DerivSpec, R: RingPresentation) -> DerivSpec:
    if not delta.twisted_by.verified:
        delta = replace(delta, twisted_by=verify_endo(delta.twisted_by, R))
    if not check_well_defined_deriv(delta, R):
        raise ContractError(f"sigma-derivation is not well defined on {R.name!r}")
    return replace(delta, verified=True)


def check_inverse(sigma: EndoSpec, R: RingPresentation) -> Optional[bool]:
    """
    Bijectivity evidence on generators

    Returns None when no inverse table is known (an identity map is its own
    inverse), otherwise whether both compositions fix every generator.
    """
    if sigma.is_identity():
        return True
    inverse = sigma.inverse()
    if inverse is None:
        return None
    if not _covers_generators(inverse.images, R):
        return False
    for g in R.generators:
        gen = r_gen(R, g)
        if _endo_poly(sigma, inverse.image(g).poly, R) != gen:
            return False
        if _endo_poly(inverse, sigma.image(g).poly, R) != gen:
            return False
    return True


def check_filtered_endo(sigma: EndoSpec) -> bool:
    """deg sigma(t_k) <= 1 for every generator"""
    return all(img.deg <= 1 for _, img in sigma.images)


def check_filtered_deriv(delta: DerivSpec) -> bool:
    """deg delta(t_k) <= 2 for every generator"""
    return all(img.deg <= 2 for _, img in delta.images)


# ============================================================
# Confluence
# ============================================================

@dataclass
class ConfluenceReport:
    ring: str
    confluent: bool
    structural: List[str] = field(default_factory=list)
    overlaps_checked: int = 0
    words_checked: int = 0
    witnesses: List[str] = field(default_factory=list)


def check_confluence(R: RingPresentation, degree: int = CONFLUENCE_SAMPLE_DEGREE) -> ConfluenceReport:
    """
    Diamond-lemma check of the rule set

    Resolves every overlap ambiguity lhs_1 = AB, lhs_2 = BC both ways, then
    compares leftmost-innermost and rightmost-outermost normal forms of all
    words up to the given degree.
    """
    report = ConfluenceReport(ring=R.name, confluent=True)
    report.structural = validate_ring(R)
    if report.structural:
        report.confluent = False
        return report

    for r1, r2 in itertools.product(R.rules, repeat=2):
        for k in range(1, min(len(r1.lhs), len(r2.lhs))):
            if r1.lhs[-k:] != r2.lhs[:k]:
                continue
            report.overlaps_checked += 1
            tail = FreePoly.monomial(R.alphabet, r2.lhs[k:])
            head = FreePoly.monomial(R.alphabet, r1.lhs[:-k])
            left = reduce(r1.rhs * tail, R)
            right = reduce(head * r2.rhs, R)
            if left != right:
                word = r1.lhs + r2.lhs[k:]
                report.witnesses.append(
                    f"{format_word(word)}: {left.format(R.order)} != {right.format(R.order)}"
                )

    for d in range(degree + 1):
        for word in itertools.product(R.generators, repeat=d):
            report.words_checked += 1
            a = _word_normal_form(word, R, LEFTMOST)
            b = _word_normal_form(word, R, RIGHTMOST)
            if a != b:
                report.witnesses.append(f"{format_word(word)}: strategies disagree")

    report.confluent = not report.witnesses
    if not report.confluent:
        logger.warning(f"CONFLUENCE | {R.name} | unresolved: {len(report.witnesses)}")
    return report
