"""Partial shifts, the shift, finite permutations and their induced maps on elements."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Union

from .algebra import IDENTITY, BasisIndex, Element


@dataclass(frozen=True)
class PartialShift:
    """``theta_h`` (skip forward at ``h``) or ``psi_h`` (step back at and below ``h``)."""

    kind: str
    base: int

    def __post_init__(self):
        if self.kind not in ("theta", "psi"):
            raise ValueError(f"unknown partial shift kind {self.kind!r}")

    def __call__(self, k: int) -> int:
        h = self.base
        if self.kind == "theta":
            return k + 1 if k >= h else k
        return k - 1 if k <= h else k

    def __str__(self) -> str:
        return f"{self.kind}:{self.base}"


def theta(h: int) -> PartialShift:
    return PartialShift("theta", h)


def psi(h: int) -> PartialShift:
    return PartialShift("psi", h)


@dataclass(frozen=True)
class Shift:
    """``tau^power``."""

    power: int = 1

    def __call__(self, k: int) -> int:
        return k + self.power

    def __str__(self) -> str:
        return f"tau:{self.power}"


@dataclass(frozen=True)
class MonoidElement:
    """Product of generator powers, composed right to left like functions.

    ``factors`` holds ``(generator, exponent)`` pairs; exponents of partial
    shifts are non-negative, shifts carry their sign in ``Shift.power``.
    """

    factors: tuple = ()

    def __post_init__(self):
        for gen, e in self.factors:
            if isinstance(gen, PartialShift) and e < 0:
                raise ValueError("partial shifts only have non-negative powers")

    def __call__(self, k: int) -> int:
        for gen, e in reversed(self.factors):
            if isinstance(gen, Shift):
                k = gen(k) if e == 1 else k + gen.power * e
            else:
                for _ in range(e):
                    k = gen(k)
        return k

    def __matmul__(self, other: "MonoidElement") -> "MonoidElement":
        return MonoidElement(self.factors + other.factors)

    @property
    def partial_shifts_only(self) -> bool:
        return all(isinstance(gen, PartialShift) for gen, _ in self.factors)

    def __str__(self) -> str:
        if not self.factors:
            return "id"
        return " ".join(str(g) if e == 1 else f"{g}^{e}" for g, e in self.factors)


_MAP_TOKEN = re.compile(r"^(theta|psi|tau):(-?\d+)(?:\^(\d+))?$")


def parse_monoid(text: str) -> MonoidElement:
    """Parse ``"theta:2 psi:0^3 tau:-1"`` (rightmost factor acts first)."""
    factors = []
    for token in text.split():
        m = _MAP_TOKEN.match(token)
        if not m:
            raise ValueError(f"bad map token {token!r}")
        kind, base, exp = m.group(1), int(m.group(2)), int(m.group(3) or 1)
        if kind == "tau":
            factors.append((Shift(base), exp))
        else:
            factors.append((PartialShift(kind, base), exp))
    return MonoidElement(tuple(factors))


class Permutation:
    """Finitely supported bijection of the integers."""

    __slots__ = ("_map",)

    def __init__(self, mapping: dict[int, int] | None = None):
        mp = {int(k): int(v) for k, v in (mapping or {}).items() if k != v}
        if sorted(mp) != sorted(mp.values()):
            raise ValueError("mapping is not a bijection of its support")
        self._map = mp

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]]) -> "Permutation":
        mp: dict = {}
        for cyc in cycles:
            cyc = [int(x) for x in cyc]
            if len(set(cyc)) != len(cyc) or any(x in mp for x in cyc):
                raise ValueError(f"cycles must be disjoint and repetition-free: {cyc}")
            for x, y in zip(cyc, cyc[1:] + cyc[:1]):
                mp[x] = y
        return cls(mp)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        """Disjoint cycle notation, e.g. ``"(0 1)(3 5 4)"``; ``"()"`` is the identity."""
        stripped = text.strip()
        if not re.fullmatch(r"(\(\s*(-?\d+[\s,]*)*\)\s*)*", stripped):
            raise ValueError(f"bad cycle string {text!r}")
        cycles = [
            [int(t) for t in re.split(r"[\s,]+", body.strip()) if t]
            for body in re.findall(r"\(([^)]*)\)", stripped)
        ]
        return cls.from_cycles(c for c in cycles if c)

    @classmethod
    def transposition(cls, i: int, j: int) -> "Permutation":
        return cls({i: j, j: i})

    def __call__(self, k: int) -> int:
        return self._map.get(k, k)

    @property
    def support(self) -> frozenset:
        return frozenset(self._map)

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self._map.items()})

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition ``self o other``."""
        pts = set(self._map) | set(other._map)
        return Permutation({k: self(other(k)) for k in pts})

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self._map == other._map

    def __hash__(self) -> int:
        return hash(frozenset(self._map.items()))

    def cycles(self) -> list:
        seen, out = set(), []
        for start in sorted(self._map):
            if start in seen:
                continue
            cyc, k = [], start
            while k not in seen:
                seen.add(k)
                cyc.append(k)
                k = self._map[k]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def __repr__(self) -> str:
        return f"Permutation({str(self)!r})"


IndexMap = Union[PartialShift, Shift, MonoidElement, Permutation, Callable[[int], int]]


def eval_map(m: IndexMap, k: int) -> int:
    return m(k)


def is_order_preserving(sigma: IndexMap, S: Iterable[int]) -> bool:
    pts = sorted(S)
    images = [sigma(i) for i in pts]
    return all(x < y for x, y in zip(images, images[1:]))


def act_on_index(g: IndexMap, b: BasisIndex) -> BasisIndex:
    """Apply an order-preserving map componentwise to a basis index."""
    if not is_order_preserving(g, set(b.l1) | set(b.l2)):
        raise ValueError(f"map is not order preserving on the indices of {b}")
    return BasisIndex(tuple(g(i) for i in b.l1), tuple(g(j) for j in b.l2))


def _induced(g: IndexMap, x: Element) -> Element:
    out: dict = {}
    for b, v in x.items():
        key = act_on_index(g, b)
        s = out.get(key, 0) + v
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return Element._trusted(out)


def beta(k: int, x: Element) -> Element:
    return _induced(theta(k), x)


def gamma(k: int, x: Element) -> Element:
    return _induced(psi(k), x)


def alpha(k: int, x: Element) -> Element:
    return _induced(Shift(k), x)


def act(g: IndexMap, x: Element) -> Element:
    """Induced map of any strictly increasing index map (a product of betas, gammas, alphas)."""
    return _induced(g, x)


def t_sigma(sigma: Permutation, x: Element) -> Element:
    """Linear map sending X_(l1,l2) to X_(sigma l1, sigma l2) when sigma keeps both
    index sets in order, and to zero otherwise."""
    out: dict = {}
    for b, v in x.items():
        if is_order_preserving(sigma, b.l1) and is_order_preserving(sigma, b.l2):
            key = BasisIndex(
                tuple(sorted(sigma(i) for i in b.l1)), tuple(sorted(sigma(j) for j in b.l2))
            )
            s = out.get(key, 0) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return Element._trusted(out)


def spread_witness(m: int, n: int, targets: Sequence[int]) -> MonoidElement:
    """Product of partial shifts agreeing with ``targets`` on ``[m, n]``.

    ``targets[t]`` is the prescribed image of ``m + t``.
    """
    if m > n:
        raise ValueError("empty interval")
    l = [int(t) for t in targets]
    if len(l) != n - m + 1:
        raise ValueError(f"need {n - m + 1} targets, got {len(l)}")
    if any(x >= y for x, y in zip(l, l[1:])):
        raise ValueError("targets must be strictly increasing")
    factors = []  # built right to left
    start = m
    if l[0] < m:
        factors.append((psi(n), m - l[0]))
        start = l[0]
    factors.append((theta(start), l[0] - start))
    for t in range(1, len(l)):
        factors.append((theta(l[t - 1] + 1), l[t] - l[t - 1] - 1))
    return MonoidElement(tuple((g, e) for g, e in reversed(factors) if e))


def cycle_for_shift(b: BasisIndex) -> Permutation:
    """A cycle agreeing with the unit shift on the indices of ``b``.

    For ``S = l1 | l2`` the cycle ``min S -> min S + 1 -> ... -> max S + 1 -> min S``
    moves every index up by one, so it is order preserving on both sets.
    """
    pts = set(b.l1) | set(b.l2)
    if not pts:
        return Permutation()
    lo, hi = min(pts), max(pts) + 1
    return Permutation.from_cycles([list(range(lo, hi + 1))])


__all__ = [
    "IDENTITY",
    "PartialShift",
    "Shift",
    "MonoidElement",
    "Permutation",
    "theta",
    "psi",
    "parse_monoid",
    "eval_map",
    "is_order_preserving",
    "act_on_index",
    "act",
    "beta",
    "gamma",
    "alpha",
    "t_sigma",
    "spread_witness",
    "cycle_for_shift",
]
