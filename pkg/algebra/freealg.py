"""
Free Algebra Arithmetic
Exact-rational polynomials in noncommuting generators: words, degrees,
leading homogeneous parts and homogenization
"""
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

from .errors import DomainError, StructuralError


Word = Tuple[str, ...]
Scalar = Fraction
EMPTY_WORD: Word = ()


class _MinusInfinity:
    """Degree of the zero polynomial; compares below every integer"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self

    def __repr__(self):
        return '-inf'


MINUS_INFINITY = _MinusInfinity()
Degree = Union[int, _MinusInfinity]


def to_scalar(value) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string into an exact scalar"""
    if isinstance(value, bool):
        raise StructuralError(f"Boolean {value!r} is not a scalar")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError:
            raise StructuralError(f"Cannot read {value!r} as a rational number") from None
    raise StructuralError(
        f"Unsupported coefficient {value!r} ({type(value).__name__}); "
        f"use int, Fraction or a 'p/q' string"
    )


def format_scalar(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f'{c.numerator}/{c.denominator}'


def format_word(word: Word) -> str:
    """Render a word with runs compressed: ('t','t','x') -> 't^2*x'"""
    if not word:
        return '1'
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(word[i] if run == 1 else f'{word[i]}^{run}')
        i = j
    return '*'.join(parts)


def deglex_key(word: Word, order: Mapping[str, int]) -> Tuple[int, Tuple[int, ...]]:
    """Degree-lexicographic sort key: longer words are larger, ties broken letter by letter"""
    return (len(word), tuple(order[letter] for letter in word))


class FreePoly:
    """
    Element of the free algebra K<alphabet>

    Stored as a map word -> nonzero Fraction. Instances are immutable;
    every operation returns a new polynomial.
    """

    __slots__ = ('_alphabet', '_terms', '_hash')

    def __init__(self, alphabet: Iterable[str], terms: Optional[Mapping] = None):
        alphabet = frozenset(alphabet)
        cleaned: Dict[Word, Fraction] = {}
        for word, coeff in (terms or {}).items():
            word = tuple(word)
            stray = set(word) - alphabet
            if stray:
                raise StructuralError(
                    f"Letters {sorted(stray)} are not in the alphabet {sorted(alphabet)}"
                )
            cleaned[word] = cleaned.get(word, Fraction(0)) + to_scalar(coeff)
        self._alphabet = alphabet
        self._terms = {w: c for w, c in cleaned.items() if c != 0}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Iterable[str]) -> 'FreePoly':
        return cls(alphabet)

    @classmethod
    def scalar(cls, alphabet: Iterable[str], value) -> 'FreePoly':
        return cls(alphabet, {EMPTY_WORD: value})

    @classmethod
    def one(cls, alphabet: Iterable[str]) -> 'FreePoly':
        return cls.scalar(alphabet, 1)

    @classmethod
    def monomial(cls, alphabet: Iterable[str], word: Iterable[str], coeff=1) -> 'FreePoly':
        return cls(alphabet, {tuple(word): coeff})

    @classmethod
    def _trusted(cls, alphabet: frozenset, terms: Dict[Word, Fraction]) -> 'FreePoly':
        # terms already validated and free of zeros
        poly = cls.__new__(cls)
        poly._alphabet = alphabet
        poly._terms = terms
        poly._hash = None
        return poly

    # -- accessors ----------------------------------------------------
    @property
    def alphabet(self) -> frozenset:
        return self._alphabet

    def items(self) -> Iterator[Tuple[Word, Fraction]]:
        return iter(self._terms.items())

    def words(self) -> Iterator[Word]:
        return iter(self._terms)

    def coefficient(self, word: Iterable[str]) -> Fraction:
        return self._terms.get(tuple(word), Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> Degree:
        if not self._terms:
            return MINUS_INFINITY
        return max(len(w) for w in self._terms)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self._terms}) <= 1

    def is_scalar(self) -> bool:
        return all(not w for w in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(EMPTY_WORD, Fraction(0))

    def component(self, degree: int) -> 'FreePoly':
        """Homogeneous part of the given degree"""
        return FreePoly._trusted(
            self._alphabet, {w: c for w, c in self._terms.items() if len(w) == degree}
        )

    def with_alphabet(self, alphabet: Iterable[str]) -> 'FreePoly':
        alphabet = frozenset(alphabet)
        if not self._alphabet <= alphabet and any(set(w) - alphabet for w in self._terms):
            raise StructuralError(f"Cannot restrict {self} to alphabet {sorted(alphabet)}")
        return FreePoly._trusted(alphabet, dict(self._terms))

    # -- arithmetic ---------------------------------------------------
    def _check_alphabet(self, other: 'FreePoly'):
        if self._alphabet != other._alphabet:
            raise StructuralError(
                f"Alphabet mismatch: {sorted(self._alphabet)} vs {sorted(other._alphabet)}"
            )

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            other = FreePoly.scalar(self._alphabet, other)
        self._check_alphabet(other)
        terms = dict(self._terms)
        for w, c in other._terms.items():
            s = terms.get(w, Fraction(0)) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return FreePoly._trusted(self._alphabet, terms)

    __radd__ = __add__

    def __neg__(self):
        return FreePoly._trusted(self._alphabet, {w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, FreePoly):
            other = FreePoly.scalar(self._alphabet, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, value) -> 'FreePoly':
        c = to_scalar(value)
        if not c:
            return FreePoly.zero(self._alphabet)
        return FreePoly._trusted(self._alphabet, {w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, FreePoly):
            return self.scale(other)
        self._check_alphabet(other)
        terms: Dict[Word, Fraction] = {}
        for w1, c1 in self._terms.items():
            for w2, c2 in other._terms.items():
                w = w1 + w2
                s = terms.get(w, Fraction(0)) + c1 * c2
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return FreePoly._trusted(self._alphabet, terms)

    def __rmul__(self, other):
        return self.scale(other)

    # -- substitution -------------------------------------------------
    def substitute_scalar(self, letter: str, value, alphabet: Optional[Iterable[str]] = None) -> 'FreePoly':
        """Replace a letter by a scalar; the letter leaves the alphabet"""
        value = to_scalar(value)
        target = frozenset(alphabet) if alphabet is not None else self._alphabet - {letter}
        terms: Dict[Word, Fraction] = {}
        for w, c in self._terms.items():
            count = w.count(letter)
            if count and not value:
                continue
            reduced = tuple(a for a in w if a != letter)
            terms[reduced] = terms.get(reduced, Fraction(0)) + c * value ** count
        return FreePoly(target, terms)

    def rename(self, mapping: Mapping[str, str], alphabet: Optional[Iterable[str]] = None) -> 'FreePoly':
        target = frozenset(alphabet) if alphabet is not None else frozenset(
            mapping.get(a, a) for a in self._alphabet
        )
        return FreePoly(target, {tuple(mapping.get(a, a) for a in w): c for w, c in self._terms.items()})

    # -- comparison / display -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, FreePoly):
            return self._alphabet == other._alphabet and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({EMPTY_WORD: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._alphabet, frozenset(self._terms.items())))
        return self._hash

    def sorted_terms(self, order: Optional[Mapping[str, int]] = None, descending: bool = True):
        if order is None:
            order = {a: i for i, a in enumerate(sorted(self._alphabet))}
        return sorted(self._terms.items(), key=lambda wc: deglex_key(wc[0], order), reverse=descending)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f'FreePoly({format_poly(self)!r})'


def format_poly(f: FreePoly, order: Optional[Mapping[str, int]] = None) -> str:
    """Terms by descending (degree, word), coefficients as p/q"""
    if f.is_zero():
        return '0'
    pieces = []
    for word, coeff in f.sorted_terms(order):
        sign = '-' if coeff < 0 else '+'
        mag = -coeff if coeff < 0 else coeff
        if not word:
            body = format_scalar(mag)
        elif mag == 1:
            body = format_word(word)
        else:
            body = f'{format_scalar(mag)}*{format_word(word)}'
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ('-' if first_sign == '-' else '') + first_body
    for sign, body in pieces[1:]:
        text += f' {sign} {body}'
    return text


def fp_add(f: FreePoly, g: FreePoly) -> FreePoly:
    return f + g


def fp_mul(f: FreePoly, g: FreePoly) -> FreePoly:
    return f * g


def fp_lh(f: FreePoly) -> FreePoly:
    """Leading homogeneous polynomial: the terms of top word degree"""
    if f.is_zero():
        raise DomainError("The zero polynomial has no leading homogeneous part")
    return f.component(f.degree)


def fp_homogenize(f: FreePoly, z: str) -> FreePoly:
    """
    Homogenize f with a new letter z written on the right of each term

    Each component g_k of degree k becomes g_k * z^(deg f - k).
    """
    if f.is_zero():
        raise DomainError("Cannot homogenize the zero polynomial")
    if z in f.alphabet:
        raise StructuralError(f"Homogenizing letter {z!r} already belongs to the alphabet")
    top = f.degree
    alphabet = f.alphabet | {z}
    return FreePoly._trusted(
        alphabet, {w + (z,) * (top - len(w)): c for w, c in f.items()}
    )


def fp_dehomogenize(f: FreePoly, z: str) -> FreePoly:
    """Substitute z -> 1"""
    return f.substitute_scalar(z, 1)
