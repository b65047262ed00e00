"""Acceptance gate: one test per criterion, one pass/fail line each."""

import pytest

from curvdeg import selftest


def _run(name, check):
    try:
        detail = check()
    except AssertionError as exc:
        print(f"FAIL {name}: {exc}")
        raise
    print(f"PASS {name}: {detail}")


@pytest.mark.parametrize("name,check", selftest.ACCEPTANCE_CHECKS,
                         ids=[name for name, _ in selftest.ACCEPTANCE_CHECKS])
def test_acceptance(name, check):
    _run(name, check)
