"""Free associative algebra on a finite ordered alphabet over Scalar.

Words are tuples of letter indices; elements are sparse maps word ->
Scalar.  The monomial order is deglex: shorter words first, ties broken
letter-by-letter in alphabet order.  Tensor powers of an algebra are
modeled as free algebras on tagged disjoint copies of the alphabet,
factor-1 letters ordered before factor-2 and so on; cross-factor
commutation is NOT applied here (it is an ordinary rewrite rule
downstream).

The pretty-printer renders words by juxtaposition (``ab``), collapsing
powers (``b^2``); tensor words that are sorted by factor are rendered
with the ASCII tensor separator (``ab (x) cd``), and interleaved tensor
words fall back to per-letter factor tags (``a(2)b(1)``).
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .errors import (AlphabetMismatch, BadFactorIndex, MissingImage,
                     MissingParameter)
from .scalars import ONE, ZERO, Scalar, format_scalar, scalar

Word = tuple  # tuple[int, ...] of letter indices


class Alphabet:
    """Ordered generator names, optionally tagged tensor copies."""

    __slots__ = ("letters", "arity", "base_names", "_index")

    def __init__(self, letters, arity=1, base_names=None):
        letters = tuple(letters)
        if len(set(letters)) < len(letters):
            raise ValueError("duplicate letters")
        self.letters = letters
        self.arity = arity
        self.base_names = (tuple(base_names) if base_names
                           else tuple(n for n, _ in letters))
        self._index = {lt: i for i, lt in enumerate(letters)}

    @classmethod
    def base(cls, names: Sequence[str]) -> "Alphabet":
        return cls(tuple((n, None) for n in names))

    def tensor_power(self, arity: int) -> "Alphabet":
        """Disjoint tagged copies; factor-k letters carry tag k."""
        if self.arity != 1:
            raise ValueError("tensor power of a tensor alphabet")
        if arity == 1:
            return self
        letters = tuple((n, k) for k in range(1, arity + 1)
                        for n in self.base_names)
        return Alphabet(letters, arity=arity, base_names=self.base_names)

    def __len__(self):
        return len(self.letters)

    def index(self, name: str, tag=None) -> int:
        try:
            return self._index[(name, tag)]
        except KeyError:
            raise MissingImage("letter %r tag %r not in alphabet" % (name, tag))

    def factor(self, i: int):
        """Tensor factor tag of letter i (None for base alphabets)."""
        return self.letters[i][1]

    def base_index(self, i: int) -> int:
        """Index of letter i's name in the base alphabet."""
        return i % len(self.base_names) if self.arity > 1 else i

    def display(self, i: int) -> str:
        name, tag = self.letters[i]
        return name if tag is None else "%s(%d)" % (name, tag)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __repr__(self):
        return "Alphabet(%s)" % ", ".join(self.display(i)
                                          for i in range(len(self.letters)))


def word_key(w: Word) -> tuple:
    """Sort key realizing the deglex order on words of one alphabet."""
    return (len(w), w)


def word_compare(u: Word, v: Word) -> int:
    """-1, 0, 1 as u < v, u = v, u > v in deglex."""
    ku, kv = word_key(u), word_key(v)
    return (ku > kv) - (ku < kv)


class FreeElement:
    """Finite Scalar-linear combination of words over one alphabet."""

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Scalar] | None = None):
        self.alphabet = alphabet
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def zero(cls, alphabet: Alphabet) -> "FreeElement":
        return cls(alphabet)

    @classmethod
    def unit(cls, alphabet: Alphabet, coeff=ONE) -> "FreeElement":
        return cls(alphabet, {(): scalar(coeff)})

    @classmethod
    def letter(cls, alphabet: Alphabet, name: str, tag=None) -> "FreeElement":
        return cls(alphabet, {(alphabet.index(name, tag),): ONE})

    @classmethod
    def word(cls, alphabet: Alphabet, w: Word, coeff=ONE) -> "FreeElement":
        return cls(alphabet, {tuple(w): scalar(coeff)})

    # -- queries ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def support(self):
        return sorted(self.terms, key=word_key)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero element has no leading word")
        return max(self.terms, key=word_key)

    def leading_coeff(self) -> Scalar:
        return self.terms[self.leading_word()]

    def coeff(self, w: Word) -> Scalar:
        return self.terms.get(tuple(w), ZERO)

    def variables(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.variables()
        return out

    def _check(self, other: "FreeElement"):
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch("operands over different alphabets")

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other: "FreeElement") -> "FreeElement":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, ZERO) + c
            if s.is_zero():
                terms.pop(w, None)
            else:
                terms[w] = s
        return FreeElement(self.alphabet, terms)

    def __neg__(self) -> "FreeElement":
        return FreeElement(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "FreeElement") -> "FreeElement":
        return self + (-other)

    def __mul__(self, other) -> "FreeElement":
        if isinstance(other, FreeElement):
            self._check(other)
            terms: dict = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    s = terms.get(w, ZERO) + c1 * c2
                    if s.is_zero():
                        terms.pop(w, None)
                    else:
                        terms[w] = s
            return FreeElement(self.alphabet, terms)
        return self.scale(scalar(other))

    def __rmul__(self, other) -> "FreeElement":
        return self.scale(scalar(other))

    def scale(self, c: Scalar) -> "FreeElement":
        c = scalar(c)
        if c.is_zero():
            return FreeElement(self.alphabet)
        return FreeElement(self.alphabet,
                           {w: k * c for w, k in self.terms.items()})

    def monic(self) -> "FreeElement":
        """Scaled so the leading coefficient is 1 (canonical relation form)."""
        if not self.terms:
            return self
        lc = self.leading_coeff()
        return self if lc.is_one() else self.scale(lc.inverse())

    def mul_words(self, left: Word, right: Word) -> "FreeElement":
        """left * self * right for plain words (cheap two-sided shift)."""
        left, right = tuple(left), tuple(right)
        return FreeElement(self.alphabet,
                           {left + w + right: c for w, c in self.terms.items()})

    # -- structure maps -----------------------------------------------
    def map_scalars(self, fn) -> "FreeElement":
        return FreeElement(self.alphabet,
                           {w: fn(c) for w, c in self.terms.items()})

    def tensor_sorted(self) -> "FreeElement":
        """Letters of each word stably sorted by tensor factor.

        This is the normal form under cross-factor commutation alone;
        only meaningful over tensor alphabets.
        """
        if self.alphabet.arity == 1:
            return self
        fac = self.alphabet.factor
        terms: dict = {}
        for w, c in self.terms.items():
            sw = tuple(sorted(w, key=fac))  # stable sort keeps intra-factor order
            s = terms.get(sw, ZERO) + c
            if s.is_zero():
                terms.pop(sw, None)
            else:
                terms[sw] = s
        return FreeElement(self.alphabet, terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, FreeElement)
                and self.alphabet == other.alphabet
                and self.terms == other.terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet,
                               tuple(sorted(self.terms.items(),
                                            key=lambda kv: word_key(kv[0])))))
        return self._hash

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return "FreeElement(%s)" % format_element(self)


def commutator(x: FreeElement, y: FreeElement) -> FreeElement:
    """x*y - y*x, the bracket [x, y]."""
    return x * y - y * x


def tensor_embed(x: FreeElement, factor: int, arity: int) -> FreeElement:
    """Rewrite x into the factor-th tagged copy inside the arity-power."""
    if not 1 <= factor <= arity:
        raise BadFactorIndex("factor %d outside 1..%d" % (factor, arity))
    base = x.alphabet
    if base.arity != 1:
        raise AlphabetMismatch("tensor_embed expects a base-alphabet element")
    target = base.tensor_power(arity)
    shift = (factor - 1) * len(base)
    return FreeElement(target, {tuple(i + shift for i in w): c
                                for w, c in x.terms.items()})


def apply_gen_map(images: Mapping[int, FreeElement],
                  param_subst: Mapping[str, Scalar],
                  x: FreeElement,
                  target: Alphabet) -> FreeElement:
    """Unique homomorphic extension of a letter -> element assignment.

    Words map to products of images; scalars map through the parameter
    substitution (which must cover every parameter occurring in x).
    """
    out = FreeElement.zero(target)
    unit = FreeElement.unit(target)
    for w, c in sorted(x.terms.items(), key=lambda kv: word_key(kv[0])):
        if c.variables():
            c = c.substitute(param_subst)
        img = unit.scale(c)
        for i in w:
            if i not in images:
                raise MissingImage("no image for letter %s"
                                   % x.alphabet.display(i))
            img = img * images[i]
        out = out + img
    return out


def coproduct_extend(table: Mapping[int, FreeElement], x: FreeElement,
                     tensor_alphabet: Alphabet) -> FreeElement:
    """Multiplicative extension of a generator coproduct table.

    The result is a raw free tensor-square element; cross-factor
    commutation is applied only by downstream rewriting.
    """
    return apply_gen_map(table, {}, x, tensor_alphabet)


def counit_extend(values: Mapping[int, Scalar], x: FreeElement) -> Scalar:
    """Multiplicative extension of a generator -> Scalar table."""
    total = ZERO
    for w, c in x.terms.items():
        v = c
        for i in w:
            if i not in values:
                raise MissingImage("no counit value for letter %s"
                                   % x.alphabet.display(i))
            v = v * values[i]
        total = total + v
    return total


# ---------------------------------------------------------------------------
# pretty-printing
# ---------------------------------------------------------------------------

def _format_run_word(names: Sequence[str]) -> str:
    """Juxtaposed letters with powers collapsed: (a, a, b) -> 'a^2b'."""
    joiner = "" if all(len(n) == 1 for n in names) else "*"
    parts = []
    i = 0
    while i < len(names):
        j = i
        while j < len(names) and names[j] == names[i]:
            j += 1
        parts.append(names[i] if j - i == 1 else "%s^%d" % (names[i], j - i))
        i = j
    return joiner.join(parts)


def format_word(alphabet: Alphabet, w: Word) -> str:
    if not w:
        return "1"
    if alphabet.arity == 1:
        return _format_run_word([alphabet.letters[i][0] for i in w])
    tags = [alphabet.factor(i) for i in w]
    if tags == sorted(tags):
        segments = []
        for k in range(1, alphabet.arity + 1):
            seg = [alphabet.letters[i][0] for i in w if alphabet.factor(i) == k]
            segments.append(_format_run_word(seg) if seg else "1")
        return " (x) ".join(segments)
    return "".join(alphabet.display(i) for i in w)


def _coeff_prefix(c: Scalar) -> str:
    """'' for 1, '-' for -1, else 'c*' with parentheses as needed."""
    if c.is_one():
        return ""
    if (-c).is_one():
        return "-"
    text = format_scalar(c)
    if (" " in text and not text.startswith("(")) or "/" in text:
        text = "(%s)" % text
    return text + "*"


def format_element(x: FreeElement) -> str:
    if not x.terms:
        return "0"
    parts = []
    for w in sorted(x.terms, key=word_key, reverse=True):
        c = x.terms[w]
        if not w:
            body = format_scalar(c)
            if " " in body:
                body = "(%s)" % body
            parts.append(body)
            continue
        prefix = _coeff_prefix(c)
        parts.append(prefix + format_word(x.alphabet, w))
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out
