"""Acceptance criteria, each run at its stated scale and time limit.

Every check prints one PASS/FAIL line; the lines are also collected and
repeated in the terminal summary so they show up without ``-s``.
"""

import pytest

from zerosum import selftest

GATING = [n for n in selftest.CHECKS if n != 12]

#: read by the terminal-summary hook in conftest.py
SUMMARY: list[str] = []


def _run(n):
    try:
        res = selftest.CHECKS[n](1.0)
    except Exception as exc:
        SUMMARY.append(f"[FAIL] {n:2d}. raised {type(exc).__name__}: {exc}")
        raise
    print(res.line())
    SUMMARY.append(res.line())
    for d in res.details:
        print("     " + d)
    return res


@pytest.mark.parametrize("n", GATING)
def test_criterion(n):
    res = _run(n)
    assert res.passed, res.details
    assert res.within_time, f"took {res.elapsed:.1f}s, limit {res.limit}s"


def test_criterion_12_long_tier():
    # not gating per the criteria, but cheap enough here to run every time
    res = _run(12)
    assert res.passed, res.details
