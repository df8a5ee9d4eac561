"""Exit criteria: each suite prints one PASS/FAIL line and must pass."""

import pytest

from monowick.suites import CRITERIA, run_suite

REPORT: list = []


@pytest.mark.acceptance
@pytest.mark.parametrize("name", CRITERIA)
def test_criterion(name):
    result = run_suite(name)
    line = f"{CRITERIA.index(name) + 1:2d}. {result.line()}"
    REPORT.append(line)
    print(line)
    assert result.ok, "\n".join(result.failures)
