"""Exact monotone Fock space.

Basis vectors are strictly increasing integer tuples, ``()`` being the vacuum.
``c(i)`` prepends ``i`` when it is below the current minimum, ``a(i)`` removes a
leading ``i``; anything else gives zero.  No truncation is ever needed since
every generator maps finite vectors to finite vectors.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .algebra import (
    IDENTITY,
    BasisIndex,
    Element,
    Letter,
    as_scalar,
    dumps,
    word_length,
)

VACUUM: tuple = ()


def is_basis_vector(e: tuple) -> bool:
    return all(x < y for x, y in zip(e, e[1:]))


def basis_vector(indices: Iterable[int]) -> tuple:
    e = tuple(int(i) for i in indices)
    if not is_basis_vector(e):
        raise ValueError(f"basis vector indices must be strictly increasing: {e}")
    return e


class FockVector:
    """Finite rational combination of basis vectors (immutable by convention)."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean = {}
        for e, coeff in (terms or {}).items():
            e = basis_vector(e)
            coeff = as_scalar(coeff)
            if coeff:
                clean[e] = clean.get(e, 0) + coeff
        self._terms = {e: v for e, v in clean.items() if v}

    @classmethod
    def _trusted(cls, terms: dict) -> "FockVector":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def basis(cls, *indices: int) -> "FockVector":
        return cls._trusted({basis_vector(indices): Fraction(1)})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self._terms == other._terms

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self._terms)
        for e, v in other._terms.items():
            s = out.get(e, 0) + v
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return FockVector._trusted(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def scale(self, c) -> "FockVector":
        c = as_scalar(c)
        if not c:
            return FockVector._trusted({})
        return FockVector._trusted({e: c * v for e, v in self._terms.items()})

    def __rmul__(self, c) -> "FockVector":
        return self.scale(c)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "FockVector(0)"
        parts = [f"{v}*e({','.join(map(str, e))})" for e, v in sorted(self._terms.items())]
        return f"FockVector({' + '.join(parts)})"

    def to_dict(self) -> dict:
        return {
            "terms": [{"v": list(e), "coeff": str(v)} for e, v in sorted(self._terms.items())]
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())


def fock_vector_from_dict(data: Mapping) -> FockVector:
    return FockVector({tuple(t["v"]): Fraction(t["coeff"]) for t in data["terms"]})


def _letter_on(letter: tuple, e: tuple):
    creator, i = letter
    if creator:
        if not e or i < e[0]:
            return (i,) + e
        return None
    if e and e[0] == i:
        return e[1:]
    return None


def _word_on(word: tuple, e: tuple):
    for letter in reversed(word):
        e = _letter_on(letter, e)
        if e is None:
            return None
    return e


def apply_letter(x: Letter, e: tuple) -> FockVector:
    out = _letter_on(x, basis_vector(e))
    return FockVector._trusted({} if out is None else {out: Fraction(1)})


def apply_word(w: Iterable[Letter], v: FockVector) -> FockVector:
    word = tuple(w)
    out: dict = {}
    for e, coeff in v.items():
        f = _word_on(word, e)
        if f is not None:
            s = out.get(f, 0) + coeff
            if s:
                out[f] = s
            else:
                out.pop(f, None)
    return FockVector._trusted(out)


def apply_element(x: Element, v: FockVector) -> FockVector:
    out: dict = {}
    for b, cx in x.items():
        word = b.letters()
        for e, cv in v.items():
            f = _word_on(word, e)
            if f is not None:
                s = out.get(f, 0) + cx * cv
                if s:
                    out[f] = s
                else:
                    out.pop(f, None)
    return FockVector._trusted(out)


def inner(u: FockVector, v: FockVector) -> Fraction:
    small, big = (u, v) if len(u._terms) <= len(v._terms) else (v, u)
    total = Fraction(0)
    for e, coeff in small.items():
        other = big._terms.get(e)
        if other is not None:
            total += coeff * other
    return total


def matrix_element(x: Element, xi: FockVector, eta: FockVector) -> Fraction:
    """<x xi, eta>."""
    return inner(apply_element(x, xi), eta)


def shift_basis(k: int, e: tuple) -> tuple:
    return tuple(i + k for i in e)


def shift_vector(k: int, v: FockVector) -> FockVector:
    return FockVector._trusted({shift_basis(k, e): c for e, c in v.items()})


def basis_vectors(lo: int, hi: int, max_length: int) -> Iterator[tuple]:
    """All basis vectors with entries in ``[lo, hi]`` and at most ``max_length`` entries."""
    pool = range(lo, hi + 1)
    for k in range(max_length + 1):
        yield from itertools.combinations(pool, k)


def window_for(*elements: Element) -> tuple[int, int, int]:
    """(lo, hi, max_length) of the sweep used as equality evidence."""
    idx: set = set()
    length = 0
    for x in elements:
        idx |= x.indices()
        length = max(length, x.max_length())
    if not idx:
        idx = {0}
    return min(idx) - 2, max(idx) + 2, length + 2


def independence_witnesses(S: Iterable[BasisIndex]) -> list:
    """Vector pairs whose matrix elements separate any combination supported on ``S``.

    Returned in the same order as ``order_for_witnesses(S)``; the evaluation
    matrix ``M[w][s] = <X_s xi_w, eta_w>`` is then lower unitriangular.
    """
    elems = order_for_witnesses(S)
    projections = [b.l1[0] for b in elems if b.is_projection]
    others = [b for b in elems if not b.is_projection and not b.is_identity]
    out = []
    for b in elems:
        if b.is_identity:
            # below every annihilator head and creator tail in play
            heads = [w.l2[0] if w.l2 else w.l1[-1] for w in others] + projections
            q = min(heads) - 1 if heads else 0
            xi = FockVector.basis(q)
            out.append((xi, xi))
        elif b.is_projection:
            xi = FockVector.basis(b.l1[0] + 1)
            out.append((xi, xi))
        else:
            out.append((FockVector.basis(*b.l2), FockVector.basis(*b.l1)))
    return out


def order_for_witnesses(S: Iterable[BasisIndex]) -> list:
    """Identity first, projections ascending, then the Wick words by length."""

    def key(b: BasisIndex):
        if b.is_identity:
            return (0, 0, (), ())
        if b.is_projection:
            return (1, b.l1[0], (), ())
        return (2, word_length(b), b.l1, b.l2)

    return sorted(set(S), key=key)


def evaluation_matrix(S: Iterable[BasisIndex]) -> tuple[list, list, list]:
    """(ordered S, witnesses, M) with ``M[w][s] = <X_s xi_w, eta_w>``."""
    elems = order_for_witnesses(S)
    wit = independence_witnesses(elems)
    matrix = [
        [matrix_element(Element._trusted({b: Fraction(1)}), xi, eta) for b in elems]
        for xi, eta in wit
    ]
    return elems, wit, matrix


def operators_agree(x: Element, y: Element, window: tuple[int, int, int] | None = None) -> bool:
    """Sweep every basis vector of the window and compare images exactly."""
    lo, hi, length = window or window_for(x, y)
    for e in basis_vectors(lo, hi, length):
        v = FockVector._trusted({e: Fraction(1)})
        if apply_element(x, v) != apply_element(y, v):
            return False
    return True


__all__ = [
    "VACUUM",
    "IDENTITY",
    "FockVector",
    "apply_letter",
    "apply_word",
    "apply_element",
    "inner",
    "matrix_element",
    "shift_basis",
    "shift_vector",
    "basis_vectors",
    "independence_witnesses",
    "evaluation_matrix",
    "operators_agree",
]
