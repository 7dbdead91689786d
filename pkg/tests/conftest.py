import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from zerosum import GroupSpec, Sequence

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL_SPECS = ["2", "3", "4", "5", "6", "2,2", "2,4", "3,3", "2,2,2", "9", "3,9", "3,3,3"]


@st.composite
def groups(draw, specs=SMALL_SPECS):
    return GroupSpec.parse(draw(st.sampled_from(specs)))


@st.composite
def elements(draw, G):
    return tuple(draw(st.integers(0, n - 1)) for n in G.invariant_factors)


@st.composite
def sequences(draw, G=None, min_size=0, max_size=10, specs=SMALL_SPECS):
    if G is None:
        G = draw(groups(specs))
    items = draw(st.lists(elements(G), min_size=min_size, max_size=max_size))
    return Sequence(G, items)


@pytest.fixture
def rng():
    return random.Random(12345)


@pytest.fixture
def c33():
    return GroupSpec.homocyclic(3, 3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "SUMMARY", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
