from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from conftest import basis_indices, elem, elements, fock_basis
from monowick.algebra import IDENTITY, BasisIndex, Element, projection
from monowick.expr import evaluate
from monowick.fock import FockVector, matrix_element, operators_agree, shift_basis
from monowick.symmetry import (
    MonoidElement,
    Permutation,
    Shift,
    act,
    act_on_index,
    alpha,
    beta,
    cycle_for_shift,
    eval_map,
    gamma,
    is_order_preserving,
    parse_monoid,
    psi,
    spread_witness,
    t_sigma,
    theta,
)
from monowick.wick import adjoint, multiply

L = BasisIndex


# -- index maps ----------------------------------------------------------------


def test_partial_shift_values():
    assert eval_map(theta(0), -1) == -1
    assert eval_map(theta(0), 0) == 1
    assert eval_map(psi(2), 2) == 1
    assert eval_map(psi(2), 3) == 3


@given(st.integers(-10, 10))
def test_partial_shifts_skip_the_base(h):
    window = range(h - 15, h + 15)
    for g in (theta(h), psi(h)):
        images = [g(k) for k in window]
        assert all(x < y for x, y in zip(images, images[1:]))
        assert h not in images


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_shift_conjugation(k, l):
    def conj(g):
        return MonoidElement(((Shift(k), 1), (g, 1), (Shift(-k), 1)))

    for j in range(-20, 21):
        assert conj(theta(l))(j) == theta(k + l)(j)
        assert conj(psi(l))(j) == psi(k + l)(j)


def test_monoid_right_to_left():
    g = parse_monoid("theta:0 psi:3^2")
    assert g(0) == -2 and g(1) == -1
    assert str(g) == "theta:0 psi:3^2"
    assert parse_monoid("tau:2")(5) == 7
    with pytest.raises(ValueError):
        parse_monoid("phi:1")


def test_act_on_index_examples():
    assert act_on_index(theta(0), L((0,), (-1,))) == L((1,), (-1,))
    assert act_on_index(theta(3), IDENTITY) == IDENTITY
    assert act_on_index(Shift(2), projection(1)) == projection(3)


def test_act_rejects_non_monotone_maps():
    with pytest.raises(ValueError):
        act_on_index(Permutation.transposition(1, 2), L((1, 2), ()))


# -- induced maps --------------------------------------------------------------


def test_induced_map_examples():
    assert beta(0, evaluate("c(0)")) == evaluate("c(1)")
    assert gamma(0, evaluate("a(0)c(0)")) == evaluate("a(-1)c(-1)")
    assert alpha(1, evaluate("c(1)a(0)")) == evaluate("c(2)a(1)")
    for k in range(-3, 4):
        assert beta(k, Element.identity()) == Element.identity()
        assert gamma(k, Element.identity()) == Element.identity()


@given(basis_indices, basis_indices, st.integers(-3, 3))
def test_alpha_is_multiplicative(b1, b2, k):
    x, y = elem(b1), elem(b2)
    assert alpha(k, multiply(x, y)) == multiply(alpha(k, x), alpha(k, y))


@given(elements, st.integers(-3, 3))
def test_maps_are_star_preserving(x, k):
    for f in (beta, gamma, alpha):
        assert f(k, adjoint(x)) == adjoint(f(k, x))


@given(elements, elements, st.integers(-3, 3))
def test_maps_are_linear(x, y, k):
    for f in (beta, gamma, alpha):
        assert f(k, x + y.scale(Fraction(1, 3))) == f(k, x) + f(k, y).scale(Fraction(1, 3))


@given(elements, fock_basis, fock_basis, st.integers(-3, 3))
def test_alpha_is_shift_conjugation(x, b1, b2, k):
    xi, eta = FockVector._trusted({b1: Fraction(1)}), FockVector._trusted({b2: Fraction(1)})
    shifted = matrix_element(
        alpha(k, x), FockVector.basis(*shift_basis(k, b1)), FockVector.basis(*shift_basis(k, b2))
    )
    assert shifted == matrix_element(x, xi, eta)


@given(elements, st.integers(-4, 4))
def test_beta_k_is_shift_conjugate_of_beta_0(x, k):
    assert beta(k, x) == alpha(k, beta(0, alpha(-k, x)))
    assert gamma(k, x) == alpha(k, gamma(0, alpha(-k, x)))


def test_beta0_breaks_products_across_the_skipped_index():
    # c(-1) a(1)c(1) = c(-1) - c(-1)c(0)a(0) - c(-1)c(1)a(1); theta_0 moves the sum to
    # l = 1, 2 while the product of the images keeps l = 0 as well
    x, y = evaluate("c(-1)"), evaluate("a(1)c(1)")
    xy = multiply(x, y)
    assert operators_agree(xy, evaluate("c(-1) - c(-1)c(0)a(0) - c(-1)c(1)a(1)"))
    gap = multiply(beta(0, x), beta(0, y)) - beta(0, xy)
    assert gap == evaluate("-1*c(-1)c(0)a(0)")
    assert not operators_agree(multiply(beta(0, x), beta(0, y)), beta(0, xy))


def test_gamma0_breaks_products_across_the_skipped_index():
    # c(-1) a(1)c(1) sums over l = 0, 1, which psi_0 sends to -1, 1; the image
    # product c(-2) a(1)c(1) sums over l = -1, 0, 1
    x, y = evaluate("c(-1)"), evaluate("a(1)c(1)")
    gap = multiply(gamma(0, x), gamma(0, y)) - gamma(0, multiply(x, y))
    assert gap == evaluate("-1*c(-2)c(0)a(0)")


# -- spread witness ------------------------------------------------------------


def test_spread_witness_ascending():
    r = spread_witness(0, 2, [1, 3, 4])
    assert r.factors == ((theta(2), 1), (theta(0), 1))
    assert [r(j) for j in range(3)] == [1, 3, 4]


def test_spread_witness_identity_is_empty():
    assert spread_witness(-2, 3, range(-2, 4)).factors == ()


def test_spread_witness_descending_start():
    r = spread_witness(0, 1, [-3, -1])
    assert r.factors[-1] == (psi(1), 3)
    assert (r(0), r(1)) == (-3, -1)


def test_spread_witness_errors():
    with pytest.raises(ValueError):
        spread_witness(0, 2, [1, 2])
    with pytest.raises(ValueError):
        spread_witness(0, 1, [2, 2])
    with pytest.raises(ValueError):
        spread_witness(3, 2, [])


@given(st.integers(-6, 6), st.integers(0, 6), st.data())
def test_spread_witness_matches_targets(m, width, data):
    n = m + width
    targets = sorted(data.draw(st.sets(st.integers(m - 12, n + 12), min_size=width + 1, max_size=width + 1)))
    r = spread_witness(m, n, targets)
    assert r.partial_shifts_only
    assert [r(j) for j in range(m, n + 1)] == targets


# -- permutations --------------------------------------------------------------


def test_permutation_parsing():
    s = Permutation.parse("(0 1)(3 5 4)")
    assert [s(k) for k in range(6)] == [1, 0, 2, 5, 3, 4]
    assert str(s) == "(0 1)(3 5 4)"
    assert Permutation.parse("()") == Permutation()
    assert s * s.inverse() == Permutation()
    with pytest.raises(ValueError):
        Permutation.parse("(0 1")
    with pytest.raises(ValueError):
        Permutation.parse("(0 1)(1 2)")


def test_order_preservation():
    t = Permutation.transposition(1, 2)
    assert is_order_preserving(t, {1})
    assert not is_order_preserving(t, {1, 2})
    assert is_order_preserving(Permutation(), {3, 9, -4})


def test_t_sigma_examples():
    t01 = Permutation.transposition(0, 1)
    z = evaluate("a(0)c(0) + c(1) + a(1) + a(1)c(1)")
    assert t_sigma(t01, z) == evaluate("a(1)c(1) + c(0) + a(0) + a(0)c(0)")
    t12 = Permutation.transposition(1, 2)
    assert t_sigma(t12, evaluate("c(1)a(2)")) == evaluate("c(2)a(1)")
    assert t_sigma(t12, elem(L((1, 2), (0,)))) == Element.zero()


def test_t_sigma_is_not_an_action():
    s = Permutation.transposition(1, 2)
    x = elem(L((1, 2), (0,)))
    assert t_sigma(s.inverse(), t_sigma(s, x)) == Element.zero() != x


def test_t_sigma_is_not_positive():
    z1 = evaluate("a(0)c(0) + c(1)")
    z = multiply(adjoint(z1), z1)
    xi = FockVector.basis(2) - FockVector.basis(0, 2).scale(2)
    assert matrix_element(z, xi, xi) >= 0
    assert matrix_element(t_sigma(Permutation.transposition(0, 1), z), xi, xi) == -2


def test_cycle_for_shift_examples():
    s = cycle_for_shift(L((1,), (3,)))
    assert (s(1), s(3)) == (2, 4)
    s = cycle_for_shift(projection(2))
    assert t_sigma(s, elem(projection(2))) == elem(projection(3)) == alpha(1, elem(projection(2)))
    assert cycle_for_shift(IDENTITY) == Permutation()


@given(basis_indices)
def test_cycle_realises_the_shift(b):
    s = cycle_for_shift(b)
    assert t_sigma(s, elem(b)) == alpha(1, elem(b))


@given(elements, st.lists(st.integers(-5, 5), min_size=2, max_size=5, unique=True))
def test_t_sigma_commutes_with_adjoint(x, cyc):
    s = Permutation.from_cycles([cyc])
    assert t_sigma(s, adjoint(x)) == adjoint(t_sigma(s, x))


@given(elements)
def test_act_by_monoid_word(x):
    g = parse_monoid("theta:1 psi:-1^2 tau:3")
    assume(x)
    step = beta(1, gamma(-1, gamma(-1, alpha(3, x))))
    assert act(g, x) == step
