"""Vacuum state, state at infinity and their convex mixtures."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .algebra import IDENTITY, Element, as_scalar, basis_window
from .wick import adjoint, multiply


@dataclass(frozen=True)
class StateSpec:
    kind: str  # "vacuum" | "infinity" | "mixed"
    x: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in ("vacuum", "infinity", "mixed"):
            raise ValueError(f"unknown state kind {self.kind!r}")
        object.__setattr__(self, "x", as_scalar(self.x))
        if not 0 <= self.x <= 1:
            raise ValueError(f"mixing weight must lie in [0, 1], got {self.x}")

    def __str__(self) -> str:
        return f"mixed:{self.x}" if self.kind == "mixed" else self.kind


VACUUM = StateSpec("vacuum")
INFINITY = StateSpec("infinity")


def mixed(x) -> StateSpec:
    """``(1 - x) * infinity + x * vacuum``."""
    return StateSpec("mixed", as_scalar(x))


def parse_state(text: str) -> StateSpec:
    text = text.strip()
    if text in ("vacuum", "infinity"):
        return StateSpec(text)
    m = re.fullmatch(r"mixed:(-?\d+(?:/\d+)?)", text)
    if not m:
        raise ValueError(f"bad state {text!r}; expected vacuum|infinity|mixed:p/q")
    return mixed(Fraction(m.group(1)))


def vacuum_value(x: Element) -> Fraction:
    # <X Omega, Omega> is 1 on I and on every projection, 0 on every Wick word of positive length
    total = 0
    for (l1, l2), v in x.items():
        if len(l1) == len(l2) <= 1 and l1 == l2:
            total += v
    return Fraction(total)


def infinity_value(x: Element) -> Fraction:
    return x.coeff(IDENTITY)


def evaluate(s: StateSpec, x: Element) -> Fraction:
    if s.kind == "vacuum":
        return vacuum_value(x)
    if s.kind == "infinity":
        return infinity_value(x)
    inf, vac = infinity_value(x), vacuum_value(x)
    if inf == vac:
        return inf
    return (1 - s.x) * inf + s.x * vac


def positivity_probe(s: StateSpec, z: Element) -> Fraction:
    """``s(z* z)``; non-negative for every state."""
    return evaluate(s, multiply(adjoint(z), z))


@dataclass
class InvarianceReport:
    state: str
    transform: str
    checked: int = 0
    violations: list = field(default_factory=list)  # (basis index, before, after)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self) -> dict:
        return {
            "state": self.state,
            "transform": self.transform,
            "checked": self.checked,
            "violations": [
                {"l1": list(b.l1), "l2": list(b.l2), "before": str(u), "after": str(v)}
                for b, u, v in self.violations
            ],
        }


def check_invariance(
    s: StateSpec,
    transform: Callable[[Element], Element],
    window: tuple[int, int, int] = (-5, 5, 5),
    name: str = "",
) -> InvarianceReport:
    """Compare ``s o transform`` with ``s`` on every basis word of ``(lo, hi, max_length)``."""
    report = InvarianceReport(str(s), name or getattr(transform, "__name__", "transform"))
    for b in basis_window(*window):
        x = Element._trusted({b: Fraction(1)})
        before, after = evaluate(s, x), evaluate(s, transform(x))
        report.checked += 1
        if before != after:
            report.violations.append((b, before, after))
    return report
