"""Generators, Hamel-basis indices and formal rational combinations.

A basis word is named by a pair of ascending integer tuples ``(l1, l2)``:

* ``((), ())`` is the identity;
* ``((i,), (i,))`` is the projection ``a_i a_i^+`` (annihilator first);
* anything else is the Wick-ordered word ``c(l1[0]) ... c(l1[-1]) a(l2[-1]) ... a(l2[0])``,
  i.e. creators ascending followed by annihilators descending.

The word ``c(i) a(i)`` is not a basis word; the normal-ordering engine rewrites it.
"""

from __future__ import annotations

import functools
import itertools
import json
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Fraction
ScalarLike = Union[int, Fraction, str]

_INT64_MIN = -(2**63)
_INT64_MAX = 2**63 - 1


def as_scalar(value: ScalarLike) -> Fraction:
    """Coerce to an exact rational; floats are refused."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not a rational scalar: {value!r}")


class Letter(NamedTuple):
    """A single generator: ``c(i)`` when ``creator`` else ``a(i)``."""

    creator: bool
    index: int

    def adjoint(self) -> "Letter":
        return Letter(not self.creator, self.index)

    def __str__(self) -> str:
        return f"{'c' if self.creator else 'a'}({self.index})"


def c(i: int) -> Letter:
    return Letter(True, i)


def a(i: int) -> Letter:
    return Letter(False, i)


LetterWord = tuple  # tuple[Letter, ...]; the empty tuple is the identity


def word_adjoint(word: Iterable[Letter]) -> tuple:
    return tuple(letter.adjoint() for letter in reversed(tuple(word)))


def format_word(word: Iterable[Letter]) -> str:
    word = tuple(word)
    return "".join(map(str, word)) if word else "I"


class BasisIndex(NamedTuple):
    l1: tuple
    l2: tuple

    @property
    def is_identity(self) -> bool:
        return not self.l1 and not self.l2

    @property
    def is_projection(self) -> bool:
        """True for the trivial pi-form ``a_i a_i^+``."""
        return len(self.l1) == 1 and len(self.l2) == 1 and self.l1[0] == self.l2[0]

    def letters(self) -> tuple:
        return _basis_letters(self)

    def sort_key(self) -> tuple:
        return (word_length(self), self.l1, self.l2)

    def __str__(self) -> str:
        return format_word(self.letters())


IDENTITY = BasisIndex((), ())


@functools.lru_cache(maxsize=1 << 16)
def _basis_letters(b: BasisIndex) -> tuple:
    l1, l2 = b
    if len(l1) == 1 and len(l2) == 1 and l1[0] == l2[0]:
        return (Letter(False, l1[0]), Letter(True, l1[0]))
    return tuple(Letter(True, i) for i in l1) + tuple(Letter(False, j) for j in reversed(l2))


def make_basis_index(lambda1: Iterable[int], lambda2: Iterable[int]) -> BasisIndex:
    """Build a basis index from two integer sets (any order, duplicates collapse)."""
    l1 = tuple(sorted({int(i) for i in lambda1}))
    l2 = tuple(sorted({int(j) for j in lambda2}))
    return BasisIndex(l1, l2)


def projection(i: int) -> BasisIndex:
    return BasisIndex((i,), (i,))


def word_length(b: BasisIndex) -> int:
    # the projection a_i a_i^+ has m = n = 0 plus the inserted pair: length 2 = |l1| + |l2|
    return len(b.l1) + len(b.l2)


def basis_adjoint(b: BasisIndex) -> BasisIndex:
    return BasisIndex(b.l2, b.l1)


def basis_window(lo: int, hi: int, max_length: int) -> Iterator[BasisIndex]:
    """Every basis index with entries in ``[lo, hi]`` and length at most ``max_length``."""
    pool = range(lo, hi + 1)
    for total in range(max_length + 1):
        for m in range(total + 1):
            for l1 in itertools.combinations(pool, m):
                for l2 in itertools.combinations(pool, total - m):
                    yield BasisIndex(l1, l2)


class Element:
    """Finite rational combination of basis words.

    Treat instances as immutable; every operation returns a new element.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[BasisIndex, ScalarLike] | None = None):
        clean = {}
        if terms:
            for key, coeff in terms.items():
                if not isinstance(key, BasisIndex):
                    key = BasisIndex(tuple(key[0]), tuple(key[1]))
                coeff = as_scalar(coeff)
                if coeff:
                    clean[key] = coeff
        self._terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict) -> "Element":
        # caller guarantees BasisIndex keys and nonzero Fraction values
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def basis(cls, b: BasisIndex, coeff: ScalarLike = 1) -> "Element":
        return cls({b: coeff})

    @classmethod
    def identity(cls) -> "Element":
        return cls._trusted({IDENTITY: Fraction(1)})

    @classmethod
    def zero(cls) -> "Element":
        return cls._trusted({})

    @classmethod
    def from_word(cls, word: Iterable[Letter]) -> "Element":
        from .wick import normalize_word

        return normalize_word(tuple(word))

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, b: BasisIndex) -> Fraction:
        return self._terms.get(b, Fraction(0))

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def indices(self) -> set:
        out = set()
        for b in self._terms:
            out.update(b.l1)
            out.update(b.l2)
        return out

    def max_length(self) -> int:
        return max((word_length(b) for b in self._terms), default=0)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Element.identity().scale(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other: "Element") -> "Element":
        if isinstance(other, (int, Fraction)):
            other = Element.identity().scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return element_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def __sub__(self, other: "Element") -> "Element":
        if isinstance(other, (int, Fraction)):
            other = Element.identity().scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return element_add(self, other.scale(-1))

    def __rsub__(self, other) -> "Element":
        return (-self) + other

    def __mul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        from .wick import multiply

        return multiply(self, other)

    def __rmul__(self, other) -> "Element":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c: ScalarLike) -> "Element":
        return element_scale(c, self)

    def adjoint(self) -> "Element":
        from .wick import adjoint

        return adjoint(self)

    def __repr__(self) -> str:
        from .expr import format_element

        return f"Element({format_element(self)!r})"

    def to_json(self) -> str:
        return element_to_json(self)


def element_add(x: Element, y: Element) -> Element:
    out = dict(x._terms)
    for b, c in y._terms.items():
        s = out.get(b, 0) + c
        if s:
            out[b] = s
        else:
            out.pop(b, None)
    return Element._trusted(out)


def element_scale(c: ScalarLike, x: Element) -> Element:
    c = as_scalar(c)
    if not c:
        return Element.zero()
    return Element._trusted({b: c * v for b, v in x._terms.items()})


def linear_combination(pairs: Iterable[tuple[BasisIndex, ScalarLike]]) -> Element:
    out: dict = {}
    for b, c in pairs:
        out[b] = out.get(b, 0) + as_scalar(c)
    return Element._trusted({b: v for b, v in out.items() if v})


# -- JSON ----------------------------------------------------------------


def _json_int(i: int):
    return i if _INT64_MIN <= i <= _INT64_MAX else str(i)


def format_scalar(q: Fraction) -> str:
    return str(q)


def element_to_dict(x: Element) -> dict:
    return {
        "terms": [
            {
                "l1": [_json_int(i) for i in b.l1],
                "l2": [_json_int(j) for j in b.l2],
                "coeff": format_scalar(c),
            }
            for b, c in x.sorted_items()
        ]
    }


def dumps(obj) -> str:
    """Deterministic compact JSON used for every serialized artifact."""
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=True)


def element_to_json(x: Element) -> str:
    return dumps(element_to_dict(x))


def element_from_dict(data: Mapping) -> Element:
    pairs = []
    for term in data["terms"]:
        b = make_basis_index(map(int, term["l1"]), map(int, term["l2"]))
        pairs.append((b, Fraction(term["coeff"])))
    return linear_combination(pairs)


def element_from_json(text: str) -> Element:
    return element_from_dict(json.loads(text))
