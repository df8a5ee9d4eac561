from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from monowick.algebra import BasisIndex, Element, Letter

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

LO, HI = -4, 4

indices = st.integers(LO, HI)
index_sets = st.frozensets(indices, max_size=3).map(lambda s: tuple(sorted(s)))


def _basis(pair):
    l1, l2 = pair
    return BasisIndex(l1, l2)


basis_indices = st.tuples(index_sets, index_sets).map(_basis)

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)

elements = st.dictionaries(basis_indices, rationals, max_size=4).map(Element)

letters = st.builds(Letter, st.booleans(), indices)
words = st.lists(letters, max_size=6).map(tuple)

fock_basis = st.frozensets(st.integers(LO - 2, HI + 2), max_size=4).map(lambda s: tuple(sorted(s)))


def elem(b: BasisIndex, q=1) -> Element:
    return Element({b: Fraction(q)})


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for line in REPORT:
            terminalreporter.write_line(line)
