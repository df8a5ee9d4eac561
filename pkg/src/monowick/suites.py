"""Exit-criterion suites.

Every suite is deterministic (fixed seeds) and exact; each returns a
``SuiteResult``.  They are run by ``monowick check <name>`` and by
``tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import fock
from .algebra import (
    IDENTITY,
    BasisIndex,
    Element,
    Letter,
    a,
    basis_window,
    c,
    dumps,
    element_to_dict,
    projection,
)
from .expr import evaluate as parse_and_eval
from .expr import format_element
from .fock import FockVector, apply_element, apply_word, matrix_element
from .states import (
    INFINITY,
    VACUUM,
    evaluate,
    mixed,
    positivity_probe,
)
from .symmetry import (
    MonoidElement,
    Permutation,
    Shift,
    alpha,
    beta,
    cycle_for_shift,
    gamma,
    is_order_preserving,
    psi,
    spread_witness,
    t_sigma,
    theta,
)
from .wick import _run, adjoint, clear_caches, multiply, normalize_word, product_closed_form


@dataclass
class SuiteResult:
    name: str
    title: str
    ok: bool = True
    checked: int = 0
    elapsed: float = 0.0
    failures: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.ok = False
        if len(self.failures) < 20:
            self.failures.append(message)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = f"; {'; '.join(self.notes)}" if self.notes else ""
        return f"[{status}] {self.name}: {self.title} ({self.checked} checks, {self.elapsed:.2f}s{extra})"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "title": self.title,
            "ok": self.ok,
            "checked": self.checked,
            "elapsed": round(self.elapsed, 4),
            "failures": self.failures,
            "notes": self.notes,
        }


SUITES: dict = {}


def suite(name: str, title: str, limit: float | None = None):
    def register(fn):
        def run() -> SuiteResult:
            result = SuiteResult(name, title)
            start = time.perf_counter()
            fn(result)
            result.elapsed = time.perf_counter() - start
            if limit is not None:
                result.notes.append(f"limit {limit:g} s")
                if result.elapsed >= limit:
                    result.fail(f"took {result.elapsed:.2f} s, limit {limit:g} s")
            return result

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        SUITES[name] = run
        return run

    return register


def run_suite(name: str) -> SuiteResult:
    return SUITES[name]()


# -- helpers -------------------------------------------------------------


def _basis(b: BasisIndex) -> Element:
    return Element._trusted({b: Fraction(1)})


def _single(e: tuple) -> FockVector:
    return FockVector._trusted({e: Fraction(1)})


def wick_word_element(creators: tuple, annihilators: tuple) -> Element:
    """Basis expansion of ``c(creators...) a(annihilators...)`` taken as already Wick ordered
    (annihilators in word order).  Only the number operator needs rewriting."""
    if len(creators) == 1 and len(annihilators) == 1 and creators[0] == annihilators[0]:
        i = creators[0]
        return _basis(projection(i - 1)) - _basis(projection(i))
    return _basis(BasisIndex(tuple(creators), tuple(sorted(annihilators))))


def _random_increasing(rng: random.Random, size: int, lo: int, hi: int) -> tuple:
    return tuple(sorted(rng.sample(range(lo, hi + 1), size)))


def random_element(rng: random.Random, lo: int = -3, hi: int = 3, max_len: int = 4, terms: int = 4) -> Element:
    out = Element.zero()
    for _ in range(rng.randint(0, terms)):
        total = rng.randint(0, max_len)
        m = rng.randint(0, total)
        width = hi - lo + 1
        m = min(m, width)
        n = min(total - m, width)
        b = BasisIndex(_random_increasing(rng, m, lo, hi), _random_increasing(rng, n, lo, hi))
        q = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        out = out + Element({b: q})
    return out


def random_word(rng: random.Random, length: int, lo: int, hi: int) -> tuple:
    return tuple(Letter(rng.random() < 0.5, rng.randint(lo, hi)) for _ in range(length))


def _golden(name: str) -> str:
    return resources.files("monowick").joinpath("golden", name).read_text(encoding="ascii")


# -- criteria ------------------------------------------------------------


def counterexample_data() -> dict:
    x1 = _basis(projection(0))
    x2 = _basis(BasisIndex((1,), ()))
    s = x1 + x2
    z = multiply(adjoint(s), s)
    tz = t_sigma(Permutation.transposition(0, 1), z)
    xi = FockVector({(2,): 1, (0, 2): -2})
    return {"Z": z, "T": tz, "xi": xi, "value": matrix_element(tz, xi, xi)}


@suite("counterexample", "T over the transposition (0 1) is not positive: <T(Z) xi, xi> = -2")
def _counterexample(r: SuiteResult) -> None:
    best = None
    for _ in range(5):
        clear_caches()
        t0 = time.perf_counter()
        data = counterexample_data()
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    r.checked = 3
    if data["value"] != -2:
        r.fail(f"matrix element {data['value']} != -2")
    expected_z = parse_and_eval("a(1) + c(1) + a(0)c(0) + a(1)c(1)")
    if data["Z"] != expected_z:
        r.fail(f"Z = {format_element(data['Z'])}")
    if data["T"] != parse_and_eval("a(0) + c(0) + a(0)c(0) + a(1)c(1)"):
        r.fail(f"T(Z) = {format_element(data['T'])}")
    # Z = S*S is a positive operator: <Z xi, xi> = |S xi|^2 >= 0
    if matrix_element(data["Z"], data["xi"], data["xi"]) < 0:
        r.fail("Z itself fails positivity")
    r.notes.append(f"cold runtime {best * 1e3:.3f} ms")
    if best >= 1e-3:
        r.fail(f"runtime {best * 1e3:.3f} ms >= 1 ms")


@suite("number-operator", "c(i) a(i) = a(i-1)c(i-1) - a(i)c(i) for i in [-10, 10]")
def _number_operator(r: SuiteResult) -> None:
    for i in range(-10, 11):
        word = (c(i), a(i))
        expected = _basis(projection(i - 1)) - _basis(projection(i))
        r.checked += 1
        if normalize_word(word) != expected:
            r.fail(f"i={i}: {format_element(normalize_word(word))}")
        for e in fock.basis_vectors(i - 3, i + 3, 3):
            v = _single(e)
            r.checked += 1
            if apply_word(word, v) != apply_element(expected, v):
                r.fail(f"i={i}: operators differ on e{e}")


def pi_form_rhs(I: tuple, k: int, J: tuple) -> Element:
    """Right side of the pi-form identity, built term by term (J in word order)."""
    out = wick_word_element(I, J)
    for l in range(max(I[-1], J[0]) + 1, k + 1):
        out = out - wick_word_element(I + (l,), (l,) + J)
    return out


def random_pi_form(rng: random.Random, lo: int = -6, hi: int = 6) -> tuple:
    while True:
        m, n = rng.randint(1, 3), rng.randint(1, 3)
        k = rng.randint(lo, hi)
        below = list(range(lo, k))
        if len(below) < max(m, n):
            continue
        I = tuple(sorted(rng.sample(below, m)))
        J = tuple(sorted(rng.sample(below, n), reverse=True))
        return I, k, J


@suite("pi-forms", "500 random pi-forms (m, n in [1, 3], indices in [-6, 6]) reduce term by term", limit=5)
def _pi_forms(r: SuiteResult) -> None:
    rng = random.Random(20240603)
    for _ in range(500):
        I, k, J = random_pi_form(rng)
        word = tuple(c(i) for i in I) + (a(k), c(k)) + tuple(a(j) for j in J)
        r.checked += 1
        got = normalize_word(word)
        if got != pi_form_rhs(I, k, J):
            r.fail(f"{I} {k} {J}: {format_element(got)}")


@suite("projection-identity", "a(i)c(i) e_B = e_B - sum_{k<=i} c(k)a(k) e_B, vector by vector")
def _projection_identity(r: SuiteResult) -> None:
    for i in range(-5, 6):
        pair = (a(i), c(i))
        for e in fock.basis_vectors(i - 4, i + 4, 4):
            v = _single(e)
            lhs = apply_word(pair, v)
            rhs = v
            nonzero = 0
            # entries are >= i - 4, so k < i - 4 contributes nothing
            for k in range(i - 5, i + 1):
                term = apply_word((c(k), a(k)), v)
                if term:
                    nonzero += 1
                    if e[0] != k:
                        r.fail(f"i={i} e{e}: summand k={k} nonzero")
                rhs = rhs - term
            r.checked += 1
            if nonzero > 1 or lhs != rhs:
                r.fail(f"i={i} e{e}: {lhs!r} != {rhs!r}")


def _word_window(word: tuple) -> tuple:
    idx = [i for _, i in word] or [0]
    return min(idx) - 2, max(idx) + 2, len(word) + 2


@suite("oracle-equivalence", "1000 random words agree with their normal forms on the Fock space", limit=30)
def _oracle_equivalence(r: SuiteResult) -> None:
    rng = random.Random(7)
    words = []
    while len(words) < 1000:
        w = random_word(rng, rng.randint(0, 7), -5, 5)
        # every other word is drawn among those with a nonzero normal form
        if len(words) % 2 and not normalize_word(w):
            continue
        words.append(w)
    nonzero = 0
    for w in words:
        x = normalize_word(w)
        nonzero += bool(x)
        terms = [(b.letters(), q) for b, q in x.items()]
        lo, hi, length = _word_window(w)
        for e in fock.basis_vectors(lo, hi, length):
            direct = fock._word_on(w, e)
            image: dict = {}
            for word, q in terms:
                f = fock._word_on(word, e)
                if f is not None:
                    image[f] = image.get(f, 0) + q
            image = {f: q for f, q in image.items() if q}
            expected = {} if direct is None else {direct: 1}
            r.checked += 1
            if image != expected:
                r.fail(f"{w} on e{e}")
                break
    r.notes.append(f"{nonzero} words with nonzero normal form")


@suite("closed-forms", "closed-form products = rewrite products on all basis pairs in [-3, 3], length <= 4")
def _closed_forms(r: SuiteResult) -> None:
    window = list(basis_window(-3, 3, 4))
    letters = [b.letters() for b in window]
    for b1, w1 in zip(window, letters):
        for b2, w2 in zip(window, letters):
            r.checked += 1
            closed = product_closed_form(b1, b2)
            rewritten = _run(w1 + w2)
            if len(closed) != len(rewritten) or any(closed.coeff(b) != v for b, v in rewritten.items()):
                r.fail(f"{b1} * {b2}: {format_element(closed)} vs {rewritten}")


def exact_rank(rows: list) -> int:
    m = [list(map(Fraction, row)) for row in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def random_basis_set(rng: random.Random, size: int, lo: int = -5, hi: int = 5, max_len: int = 5) -> list:
    out: set = set()
    while len(out) < size:
        kind = rng.random()
        if kind < 0.1:
            out.add(IDENTITY)
        elif kind < 0.35:
            out.add(projection(rng.randint(lo, hi)))
        else:
            total = rng.randint(1, max_len)
            m = rng.randint(0, total)
            b = BasisIndex(
                _random_increasing(rng, m, lo, hi), _random_increasing(rng, total - m, lo, hi)
            )
            if not b.is_projection:
                out.add(b)
    return sorted(out)


@suite("independence", "witness matrices of 200 random basis sets are invertible")
def _independence(r: SuiteResult) -> None:
    rng = random.Random(11)
    for _ in range(200):
        S = random_basis_set(rng, rng.randint(1, 8))
        elems, wit, matrix = fock.evaluation_matrix(S)
        r.checked += 1
        if exact_rank(matrix) != len(elems):
            r.fail(f"singular witness matrix for {S}")
            continue
        for _ in range(3):
            coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in elems]
            if not any(coeffs):
                coeffs[0] = Fraction(1)
            x = Element(dict(zip(elems, coeffs)))
            r.checked += 1
            if all(matrix_element(x, xi, eta) == 0 for xi, eta in wit):
                r.fail(f"nonzero {format_element(x)} invisible to witnesses")


def conjugated(k: int, gen) -> MonoidElement:
    return MonoidElement(((Shift(k), 1), (gen, 1), (Shift(-k), 1)))


@suite("endomorphisms", "beta0, gamma0, alpha1 are unital *-endomorphisms; shift conjugation of partial shifts")
def _endomorphisms(r: SuiteResult) -> None:
    rng = random.Random(5)
    window = list(basis_window(-4, 4, 4))
    maps = {"beta0": lambda x: beta(0, x), "gamma0": lambda x: gamma(0, x), "alpha1": lambda x: alpha(1, x)}
    for name, f in maps.items():
        r.checked += 1
        if f(Element.identity()) != Element.identity():
            r.fail(f"{name} not unital")
    for _ in range(500):
        x, y = _basis(rng.choice(window)), _basis(rng.choice(window))
        for name, f in maps.items():
            r.checked += 2
            if f(multiply(x, y)) != multiply(f(x), f(y)):
                r.fail(f"{name} not multiplicative on {format_element(x)}, {format_element(y)}")
            if f(adjoint(x)) != adjoint(f(x)):
                r.fail(f"{name} not *-preserving on {format_element(x)}")
    for k in range(-5, 6):
        for l in range(-5, 6):
            lhs_t, rhs_t = conjugated(k, theta(l)), theta(k + l)
            lhs_p, rhs_p = conjugated(k, psi(l)), psi(k + l)
            for j in range(-20, 21):
                r.checked += 2
                if lhs_t(j) != rhs_t(j) or lhs_p(j) != rhs_p(j):
                    r.fail(f"shift conjugation fails at k={k} l={l} j={j}")


@suite("spread-witness", "100 random increasing maps on [m, n] are realised by partial shifts")
def _spread_witness(r: SuiteResult) -> None:
    rng = random.Random(3)
    cases = {"up": 0, "down": 0}
    while cases["up"] + cases["down"] < 100:
        want_down = cases["down"] < 50
        m = rng.randint(-6, 6)
        n = m + rng.randint(0, 6)
        size = n - m + 1
        first = m - rng.randint(1, 6) if want_down else m + rng.randint(0, 6)
        pool = range(first + 1, first + 13)
        rest = sorted(rng.sample(pool, size - 1))
        l = [first] + rest
        cases["down" if first < m else "up"] += 1
        g = spread_witness(m, n, l)
        r.checked += 1
        if not g.partial_shifts_only:
            r.fail(f"witness for {l} uses a non-partial shift")
        if [g(j) for j in range(m, n + 1)] != l:
            r.fail(f"[{m},{n}] -> {l}: witness {g} gives {[g(j) for j in range(m, n + 1)]}")
    r.notes.append(f"{cases['up']} with l(m) >= m, {cases['down']} with l(m) < m")


STATES = [VACUUM, INFINITY] + [mixed(Fraction(p, 4)) for p in range(5)]


@suite("invariant-states", "vacuum, infinity and mixtures are beta/gamma invariant and positive")
def _invariant_states(r: SuiteResult) -> None:
    window = list(basis_window(-5, 5, 5))
    for k in range(-3, 4):
        for name, f in (("beta", beta), ("gamma", gamma)):
            for b in window:
                x = _basis(b)
                fx = f(k, x)
                for s in STATES:
                    r.checked += 1
                    if evaluate(s, fx) != evaluate(s, x):
                        r.fail(f"{s} not invariant under {name}({k}) on {b}")
    rng = random.Random(17)
    for s in STATES:
        for _ in range(200):
            z = random_element(rng, -4, 4, 4, 5)
            r.checked += 1
            if positivity_probe(s, z) < 0:
                r.fail(f"{s}(z* z) < 0 for z = {format_element(z)}")
    for s in STATES:
        r.checked += 1
        if evaluate(s, Element.identity()) != 1:
            r.fail(f"{s} not normalised")


@suite("exchangeability", "cycles realise the shift under T; T does not define an action")
def _exchangeability(r: SuiteResult) -> None:
    for b in basis_window(-5, 5, 5):
        sigma = cycle_for_shift(b)
        x = _basis(b)
        r.checked += 1
        if not (is_order_preserving(sigma, b.l1) and is_order_preserving(sigma, b.l2)):
            r.fail(f"cycle for {b} not order preserving")
        if t_sigma(sigma, x) != alpha(1, x):
            r.fail(f"T(cycle) != alpha on {b}")
        for s in (VACUUM, INFINITY):
            if evaluate(s, t_sigma(sigma, x)) != evaluate(s, alpha(1, x)):
                r.fail(f"{s} distinguishes T(cycle) and alpha on {b}")
    x = _basis(BasisIndex((1, 2), (0,)))
    sigma = Permutation.transposition(1, 2)
    lhs = t_sigma(sigma.inverse() * sigma, x)
    rhs = t_sigma(sigma.inverse(), t_sigma(sigma, x))
    r.checked += 1
    if not (lhs == x and rhs == Element.zero() and lhs != rhs):
        r.fail("non-action identity not exhibited")


GOLDEN = ("counterexample.json", "number_operator.json", "pi_forms.json")


def golden_payloads() -> dict:
    """Serialised outputs for the first three criteria, compared byte for byte."""
    data = counterexample_data()
    counter = {
        "Z": element_to_dict(data["Z"]),
        "T": element_to_dict(data["T"]),
        "xi": data["xi"].to_dict(),
        "value": str(data["value"]),
    }
    number = {
        "cases": [
            {"i": i, "normal_form": element_to_dict(normalize_word((c(i), a(i))))}
            for i in range(-10, 11)
        ]
    }
    pi_cases = [
        ((1,), 3, (2,)),
        ((-2, 0), 4, (3, 1)),
        ((1,), 4, (1,)),
        ((-1, 2), 5, (4, 2, 0)),
        ((0,), 1, (0,)),
    ]
    pi = {
        "cases": [
            {
                "creators": list(I),
                "k": k,
                "annihilators": list(J),
                "normal_form": element_to_dict(
                    normalize_word(tuple(c(i) for i in I) + (a(k), c(k)) + tuple(a(j) for j in J))
                ),
            }
            for I, k, J in pi_cases
        ]
    }
    return {
        "counterexample.json": dumps(counter) + "\n",
        "number_operator.json": dumps(number) + "\n",
        "pi_forms.json": dumps(pi) + "\n",
    }


@suite("round-trip", "300 random elements survive format -> parse -> eval; golden JSON matches")
def _round_trip(r: SuiteResult) -> None:
    rng = random.Random(23)
    for _ in range(300):
        x = random_element(rng, -6, 6, 5, 6)
        text = format_element(x)
        r.checked += 1
        if parse_and_eval(text) != x:
            r.fail(f"round trip changed {text!r}")
    for name, payload in golden_payloads().items():
        r.checked += 1
        if _golden(name) != payload:
            r.fail(f"golden file {name} differs")


CRITERIA = [
    "counterexample",
    "number-operator",
    "pi-forms",
    "projection-identity",
    "oracle-equivalence",
    "closed-forms",
    "independence",
    "endomorphisms",
    "spread-witness",
    "invariant-states",
    "exchangeability",
    "round-trip",
]
