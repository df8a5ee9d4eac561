from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import basis_indices, elem, elements, words
from monowick.algebra import BasisIndex, Element, a, basis_window, c, projection
from monowick.fock import FockVector, apply_element, apply_word, basis_vectors
from monowick.wick import (
    IDEN,
    PROJECTION,
    SIGEN,
    ZERO_AA,
    ZERO_AC,
    ZERO_CC,
    RewriteTrace,
    adjoint,
    delta_below,
    multiply,
    normalize_word,
    product_closed_form,
    replay,
)


def agrees_with_word(word, x, lo=-6, hi=6, length=4):
    """The oracle: the raw word and its normal form act identically on a window."""
    for e in basis_vectors(lo, hi, length):
        v = FockVector._trusted({e: Fraction(1)})
        if apply_word(word, v) != apply_element(x, v):
            return False
    return True


P = projection


def L(l1, l2):
    return BasisIndex(tuple(l1), tuple(l2))


# -- normalize_word ---------------------------------------------------------


def test_number_operator():
    assert normalize_word([c(3), a(3)]) == elem(P(2)) - elem(P(3))


def test_empty_word_is_identity():
    assert normalize_word([]) == Element.identity()


def test_pi_form_instance():
    w = (c(1), a(3), c(3), a(2))
    x = normalize_word(w)
    assert x == elem(L([1], [2])) - elem(L([1, 3], [2, 3]))
    assert agrees_with_word(w, x, -1, 5, 4)


@pytest.mark.parametrize(
    "w, rule",
    [((a(2), a(5)), ZERO_AA), ((a(2), c(3)), ZERO_AC), ((c(4), c(4)), ZERO_CC), ((a(1), a(1)), ZERO_AA)],
)
def test_zero_rules(w, rule):
    trace = RewriteTrace()
    assert normalize_word(w, trace) == Element.zero()
    assert trace.steps[0].rule == rule
    assert agrees_with_word(w, Element.zero())


def test_bare_pair_is_projection():
    trace = RewriteTrace()
    assert normalize_word((a(2), c(2)), trace) == elem(P(2))
    assert [s.rule for s in trace.steps] == [PROJECTION]


def test_pair_deleted_next_to_annihilator():
    # a(5) a(2)c(2): the left neighbour kills every summand of the expansion
    w = (a(5), a(2), c(2))
    x = normalize_word(w)
    assert x == elem(L([], [5]))
    assert agrees_with_word(w, x)


def test_unbounded_sum_uses_the_pair_index():
    # c(-1) a(1)c(1): summands l = 0, 1 survive
    w = (c(-1), a(1), c(1))
    x = normalize_word(w)
    assert x == elem(L([-1], [])) - elem(L([-1, 0], [0])) - elem(L([-1, 1], [1]))
    assert agrees_with_word(w, x)


def test_trace_rules_for_sigen():
    trace = RewriteTrace()
    normalize_word((c(0), a(0)), trace)
    assert [s.rule for s in trace.steps] == [SIGEN]
    assert trace.to_dict()["steps"][0]["after"][0] == {"basis": {"l1": [-1], "l2": [-1]}, "coeff": 1}


def test_trace_json_is_deterministic():
    w = (c(1), a(3), c(3), a(2))
    t1, t2 = RewriteTrace(), RewriteTrace()
    normalize_word(w, t1)
    normalize_word(w, t2)
    assert t1.to_json() == t2.to_json()
    assert any(s.rule == IDEN for s in t1.steps)


# -- multiply / adjoint ------------------------------------------------------


def test_identity_is_neutral():
    x = elem(L([1], [2])) + elem(P(0))
    assert multiply(Element.identity(), x) == x
    assert multiply(x, Element.identity()) == x


def test_projection_products():
    assert multiply(elem(P(1)), elem(P(4))) == elem(P(4))
    assert multiply(elem(P(4)), elem(P(1))) == elem(P(4))
    assert multiply(elem(P(2)), elem(P(2))) == elem(P(2))


def test_creator_times_annihilator():
    x = multiply(elem(L([1], [])), elem(L([], [1])))
    assert x == elem(P(0)) - elem(P(1))
    assert agrees_with_word((c(1), a(1)), x)


def test_adjoint_examples():
    assert adjoint(Element.identity()) == Element.identity()
    assert adjoint(elem(L([1], [4]), Fraction(2, 3))) == elem(L([4], [1]), Fraction(2, 3))
    assert adjoint(elem(P(5))) == elem(P(5))


# -- closed forms ------------------------------------------------------------


@pytest.mark.parametrize("j, h, want", [(5, 3, 1), (3, 3, 0), (-2, -7, 1), (0, 4, 0)])
def test_delta_below(j, h, want):
    assert delta_below(j, h) == want


def test_closed_form_one_contraction():
    # a(4) meets c(4); the remaining creator 5 sits above 1
    b1, b2 = L([1], [4]), L([4, 5], [0])
    want = elem(L([1, 5], [0]))
    assert product_closed_form(b1, b2) == want == multiply(elem(b1), elem(b2))
    assert agrees_with_word(b1.letters() + b2.letters(), want)


def test_closed_form_order_check_fails():
    # a(4) meets c(2) first, so the product vanishes
    b1, b2 = L([1], [4]), L([2, 4], [0])
    assert product_closed_form(b1, b2) == Element.zero() == multiply(elem(b1), elem(b2))
    assert agrees_with_word(b1.letters() + b2.letters(), Element.zero())


def test_closed_form_against_projection():
    b1 = L([1], [0])
    assert product_closed_form(b1, P(3)) == Element.zero()
    assert agrees_with_word(b1.letters() + P(3).letters(), Element.zero())


def test_closed_form_full_contraction():
    b1, b2 = L([-1], [2]), L([2], [0])
    x = product_closed_form(b1, b2)
    assert x == multiply(elem(b1), elem(b2))
    assert agrees_with_word(b1.letters() + b2.letters(), x)
    assert len(x) == 3


def test_closed_forms_on_small_window():
    window = list(basis_window(-2, 2, 3))
    for b1 in window:
        for b2 in window:
            assert product_closed_form(b1, b2) == multiply(elem(b1), elem(b2)), (b1, b2)


# -- properties --------------------------------------------------------------


@given(words)
def test_normal_form_matches_oracle(w):
    assert agrees_with_word(w, normalize_word(w), -6, 6, 3)


@given(words)
def test_trace_replays_to_the_result(w):
    trace = RewriteTrace()
    x = normalize_word(w, trace)
    assert replay(w, trace) == x
    assert x == normalize_word(w)


@given(basis_indices)
def test_basis_words_are_fixed(b):
    assert normalize_word(b.letters()) == elem(b)


@given(basis_indices, basis_indices)
def test_structure_constants_are_integers(b1, b2):
    x = multiply(elem(b1), elem(b2))
    assert all(v.denominator == 1 for _, v in x.items())
    assert product_closed_form(b1, b2) == x


@given(elements, elements, elements)
def test_associativity(x, y, z):
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))


@given(elements, elements)
def test_star_law(x, y):
    assert adjoint(multiply(x, y)) == multiply(adjoint(y), adjoint(x))
    assert adjoint(adjoint(x)) == x


@given(elements, elements, elements)
def test_distributivity(x, y, z):
    assert multiply(x, y + z) == multiply(x, y) + multiply(x, z)


@given(st.integers(-20, 20))
def test_projection_is_selfadjoint_idempotent(i):
    p = elem(P(i))
    assert multiply(p, p) == p
    assert adjoint(p) == p


@given(elements, elements)
def test_products_agree_with_oracle(x, y):
    for e in basis_vectors(-5, 5, 3):
        v = FockVector._trusted({e: Fraction(1)})
        assert apply_element(multiply(x, y), v) == apply_element(x, apply_element(y, v))
