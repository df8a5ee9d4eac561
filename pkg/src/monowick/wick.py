"""Normal ordering of monotone operator words.

Rewrite system, applied to one word at a time:

1. If some adjacent pair is ``c(i) c(j)`` with ``i >= j``, ``a(j) a(i)`` with
   ``i >= j`` or ``a(i) c(j)`` with ``i != j`` the word is zero.
2. Otherwise take the leftmost pair ``a(k) c(k)``.  A word consisting of that
   pair alone is the projection basis word.  Inside a longer word the pair is
   replaced by ``I - sum_{l <= k} c(l) a(l)``; all but finitely many summands
   vanish against the neighbouring letters:

   * left neighbour an annihilator, or right neighbour a creator: no summand
     survives, the pair is simply deleted;
   * otherwise the sum runs from ``1 + max(left creator, right annihilator)``
     up to ``k``.

3. A word with no such pair is Wick ordered.  ``c(i) a(i)`` is rewritten as
   ``a(i-1) c(i-1) - a(i) c(i)``; every other Wick word is a basis word.

Each expansion either shortens the word by two or trades an annihilator/creator
adjacency for a creator/annihilator one, so the process terminates.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .algebra import (
    BasisIndex,
    Element,
    Letter,
    basis_adjoint,
    dumps,
    format_word,
    projection,
)

ZERO_CC = "zero-cc"
ZERO_AA = "zero-aa"
ZERO_AC = "zero-ac"
PROJECTION = "projection"
IDEN = "iden"
SIGEN = "number-to-projections"
WICK = "wick"


@dataclass(frozen=True)
class TraceStep:
    rule: str
    position: int
    before: tuple
    after: tuple  # of (tuple-of-Letter | BasisIndex, int)

    def to_dict(self) -> dict:
        def term(t):
            target, m = t
            if isinstance(target, BasisIndex):
                return {"basis": {"l1": list(target.l1), "l2": list(target.l2)}, "coeff": m}
            return {"word": format_word(target), "coeff": m}

        return {
            "rule": self.rule,
            "position": self.position,
            "before": format_word(self.before),
            "after": [term(t) for t in self.after],
        }


@dataclass
class RewriteTrace:
    steps: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"steps": [s.to_dict() for s in self.steps]}

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def __len__(self) -> int:
        return len(self.steps)


def _scan(word: tuple):
    """Classify a word: (zero-rule, pos), (IDEN, pos of leftmost a(k)c(k)) or (WICK, -1)."""
    pair = -1
    for p in range(len(word) - 1):
        cre1, i = word[p]
        cre2, j = word[p + 1]
        if cre1:
            if cre2 and i >= j:
                return ZERO_CC, p
        elif cre2:
            if i != j:
                return ZERO_AC, p
            if pair < 0:
                pair = p
        elif j >= i:
            return ZERO_AA, p
    if pair >= 0:
        return IDEN, pair
    return WICK, -1


def _step(word: tuple):
    """One rewrite of ``word``: returns (rule, position, after-terms)."""
    rule, p = _scan(word)
    if rule in (ZERO_CC, ZERO_AA, ZERO_AC):
        return rule, p, ()
    if rule == IDEN:
        k = word[p][1]
        if len(word) == 2:
            return PROJECTION, p, ((projection(k), 1),)
        head, tail = word[:p], word[p + 2 :]
        after = [(head + tail, 1)]
        left = head[-1] if head else None
        right = tail[0] if tail else None
        if (left is None or left[0]) and (right is None or not right[0]):
            bounds = []
            if left is not None:
                bounds.append(left[1])
            if right is not None:
                bounds.append(right[1])
            for l in range(max(bounds) + 1, k + 1):
                after.append((head + (Letter(True, l), Letter(False, l)) + tail, -1))
        return IDEN, p, tuple(after)
    # Wick ordered
    if len(word) == 2 and word[0][0] and word[0][1] == word[1][1]:
        i = word[0][1]
        return SIGEN, 0, ((projection(i - 1), 1), (projection(i), -1))
    l1 = tuple(i for cre, i in word if cre)
    l2 = tuple(sorted(i for cre, i in word if not cre))
    return WICK, 0, ((BasisIndex(l1, l2), 1),)


def _run(word: tuple, trace: RewriteTrace | None = None) -> dict:
    pending = {word: 1}
    out: dict = {}
    while pending:
        w = next(iter(pending))
        coeff = pending.pop(w)
        rule, pos, after = _step(w)
        if trace is not None:
            trace.steps.append(TraceStep(rule, pos, w, after))
        for target, m in after:
            bucket = out if isinstance(target, BasisIndex) else pending
            v = bucket.get(target, 0) + coeff * m
            if v:
                bucket[target] = v
            else:
                bucket.pop(target, None)
    return out


@functools.lru_cache(maxsize=1 << 18)
def _normal_form(word: tuple) -> tuple:
    return tuple(_run(word).items())


def _as_word(w: Iterable) -> tuple:
    return tuple(x if isinstance(x, Letter) else Letter(bool(x[0]), int(x[1])) for x in w)


def normalize_word(w: Iterable, trace: RewriteTrace | None = None) -> Element:
    """Expand a word in the generators into the Hamel basis."""
    word = _as_word(w)
    items = _run(word, trace).items() if trace is not None else _normal_form(word)
    return Element._trusted({b: Fraction(v) for b, v in items})


def replay(w: Iterable, trace: RewriteTrace) -> Element:
    """Re-apply the recorded steps of ``trace`` starting from ``w``."""
    pending = {_as_word(w): 1}
    out: dict = {}
    for step in trace.steps:
        coeff = pending.pop(step.before)
        for target, m in step.after:
            bucket = out if isinstance(target, BasisIndex) else pending
            v = bucket.get(target, 0) + coeff * m
            if v:
                bucket[target] = v
            else:
                bucket.pop(target, None)
    if pending:
        raise ValueError("trace does not reduce every word")
    return Element._trusted({b: Fraction(v) for b, v in out.items()})


@functools.lru_cache(maxsize=1 << 20)
def _basis_product(b1: BasisIndex, b2: BasisIndex) -> tuple:
    return _normal_form(b1.letters() + b2.letters())


def multiply(x: Element, y: Element) -> Element:
    out: dict = {}
    for b1, c1 in x.items():
        for b2, c2 in y.items():
            c12 = c1 * c2
            for b, v in _basis_product(b1, b2):
                s = out.get(b, 0) + c12 * v
                if s:
                    out[b] = s
                else:
                    out.pop(b, None)
    return Element._trusted(out)


def adjoint(x: Element) -> Element:
    # rational coefficients are their own conjugates
    return Element._trusted({basis_adjoint(b): v for b, v in x.items()})


def clear_caches() -> None:
    _normal_form.cache_clear()
    _basis_product.cache_clear()


# -- closed-form products ------------------------------------------------
#
# A lambda-form is handled here as (creators ascending, annihilators in word
# order, i.e. descending).  These rules are a second route to products of
# basis words, kept independent of the rewrite engine above.


def delta_below(j: int, h: int) -> int:
    """1 if h < j else 0."""
    return 1 if h < j else 0


def _settle(terms: list) -> Element:
    out: dict = {}
    for (cre, ann), m in terms:
        if cre == "proj":
            keys = ((projection(ann), m),)
        elif len(cre) == 1 and len(ann) == 1 and cre[0] == ann[0]:
            i = cre[0]
            keys = ((projection(i - 1), m), (projection(i), -m))
        else:
            keys = ((BasisIndex(cre, ann[::-1]), m),)
        for b, v in keys:
            s = out.get(b, 0) + v
            if s:
                out[b] = s
            else:
                out.pop(b, None)
    return Element._trusted({b: Fraction(v) for b, v in out.items()})


def _sandwich(cre: tuple, k: int, ann: tuple) -> list:
    """c(cre...) a(k)c(k) a(ann...) as lambda-forms (or the bare projection)."""
    if not cre and not ann:
        return [(("proj", k), 1)]
    bound = max(([cre[-1]] if cre else []) + ([ann[0]] if ann else []))
    terms = [((cre, ann), 1)]
    for l in range(bound + 1, k + 1):
        terms.append(((cre + (l,), (l,) + ann), -1))
    return terms


def _lambda_lambda(x1: tuple, x2: tuple) -> list:
    (I, J), (K, L) = x1, x2
    s, r = len(J), len(K)
    if s < r:
        for h in range(1, s + 1):
            if J[h - 1] != K[s - h]:
                return []
        if I and not delta_below(K[s], I[-1]):
            return []
        return [((I + K[s:], L), 1)]
    for h in range(1, r + 1):
        if J[s - h] != K[h - 1]:
            return []
    if s > r:
        if L and not delta_below(J[s - r - 1], L[0]):
            return []
        return [((I, J[: s - r] + L), 1)]
    if r == 0:
        return [((I, L), 1)]
    # every annihilator of x1 is contracted: a(j1)...c(j1) leaves the projection on j1
    return _sandwich(I, J[0], L)


def _lambda_projection(x1: tuple, i: int) -> list:
    I, J = x1
    if J:
        return [((I, J), 1)] if delta_below(J[-1], i) else []
    return _sandwich(I, i, ())


def _projection_lambda(i: int, x1: tuple) -> list:
    I, J = x1
    if I:
        return [((I, J), 1)] if delta_below(I[0], i) else []
    return _sandwich((), i, J)


def product_closed_form(b1: BasisIndex, b2: BasisIndex) -> Element:
    """Product of two basis words from the explicit contraction formulas."""
    if b1.is_projection and b2.is_projection:
        return _settle([(("proj", max(b1.l1[0], b2.l1[0])), 1)])
    if b1.is_projection:
        return _settle(_projection_lambda(b1.l1[0], (b2.l1, b2.l2[::-1])))
    if b2.is_projection:
        return _settle(_lambda_projection((b1.l1, b1.l2[::-1]), b2.l1[0]))
    return _settle(_lambda_lambda((b1.l1, b1.l2[::-1]), (b2.l1, b2.l2[::-1])))
