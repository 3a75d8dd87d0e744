"""Runs the acceptance battery once and reports one PASS/FAIL line per criterion."""

import pytest

from potts.acceptance import run_acceptance

KEYS = ["1", "2", "3", "4", "5a", "5b", "5c", "5d", "5d-literal",
        "6", "7", "8", "9", "10", "11", "12", "13"]

# the oracle finds PGL2(F_3) (order 48) at j = -1/4 in characteristic 3
KNOWN_DEVIATIONS = {"5d-literal"}

# filled by the fixture, printed by conftest in the terminal summary
REPORT_LINES: list[str] = []


@pytest.fixture(scope="module")
def results():
    res = run_acceptance()
    REPORT_LINES[:] = [r.line() for r in res]
    return {r.key: r for r in res}


def test_battery_covers_all_criteria(results):
    assert list(results) == KEYS
    assert {k for k, r in results.items() if r.known_deviation} == KNOWN_DEVIATIONS


@pytest.mark.parametrize("key", [
    pytest.param(k, marks=pytest.mark.xfail(strict=True, reason="oracle contradicts the literal target"))
    if k in KNOWN_DEVIATIONS else k
    for k in KEYS
])
def test_criterion(results, key):
    r = results[key]
    assert r.passed, r.detail
